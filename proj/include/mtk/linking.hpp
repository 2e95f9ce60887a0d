#ifndef MTK_LINKING_HPP
#define MTK_LINKING_HPP

#include "mtk/metric_space.hpp"

#include <utility>
#include <vector>

namespace mtk {

// Glue component spaces onto a base space: each component's link point is
// identified with its anchor in the base (and dropped from the point set),
// so paths between glued parts always run through link point and anchor.
struct LinkSpec {
    struct Component {
        FiniteMetricSpace space;
        int link_point; // index in the component (dropped from the result)
        int anchor;     // index in the base
    };
    FiniteMetricSpace base;
    std::vector<Component> components;
};

/// Point set: base plus every component minus its link point. Distances:
/// within the base or one component as before; base <-> component via the
/// anchor plus the link leg; component <-> component via both link legs and
/// the anchor-anchor distance. Errors: LabelCollision, InvalidIndex.
FiniteMetricSpace glue_spaces(const LinkSpec& spec);

/// Travel along the x-axis: d(p,q) = |y_p - y_q| when x_p = x_q,
/// else |y_p| + |x_p - x_q| + |y_q|.
FiniteMetricSpace river_metric(const std::vector<std::pair<Rat, Rat>>& points,
                               const std::vector<std::string>& labels);

enum class RadialNorm {
    euclidean, // points must have rational Euclidean norm
    taxicab,   // |x| + |y|, any rational points
};

/// Travel through the origin unless on a common ray: d(p,q) = |norm(p)-norm(q)|
/// when q is a positive multiple of p, else norm(p) + norm(q).
FiniteMetricSpace radial_metric(const std::vector<std::pair<Rat, Rat>>& points,
                                const std::vector<std::string>& labels,
                                RadialNorm norm = RadialNorm::euclidean);

} // namespace mtk

#endif
