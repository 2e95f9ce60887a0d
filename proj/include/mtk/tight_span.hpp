#ifndef MTK_TIGHT_SPAN_HPP
#define MTK_TIGHT_SPAN_HPP

#include "mtk/extremal.hpp"
#include "mtk/metric_space.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mtk {

// The hyperconvex hull h(X) of a finite space, reported as a polyhedral
// complex of minimal extremal functions: its extreme points (vertices,
// sorted lexicographically by value vector), the equality pairs active at
// each vertex, the 1-skeleton, and the top cell dimension.
struct TightSpanComplex {
    FiniteMetricSpace space;

    std::vector<ExtremalFunction> vertices;
    std::vector<std::string> vertex_labels; // point label for cones, s1, s2, ... otherwise
    std::vector<int> cone_point;            // point index of a distance cone, -1 otherwise

    // Pairs {x,y} with f(x) + f(y) = d(x,y) at each vertex; x = y records a zero of f.
    std::vector<std::vector<std::pair<int, int>>> vertex_tight_graphs;

    int dimension = 0;
    std::vector<std::pair<int, int>> edges; // vertex index pairs, i < j, sorted
};

/// Enumeration bound on the point count: MTK_MAX_POINTS when set, else 10.
int tight_span_point_bound();

/// Enumerate the vertices of h(X) exactly (an incremental double-description
/// sweep over the admissibility system f(x) + f(y) >= d(x,y), f >= 0), then
/// probe midpoints and centroids of vertex subsets of size <= 3 for the
/// 1-skeleton and the dimension. Throws TooLarge above the bound.
TightSpanComplex enumerate_tight_span(const FiniteMetricSpace& space);
TightSpanComplex enumerate_tight_span(const FiniteMetricSpace& space, int max_points);

/// f belongs to h(X) iff it is admissible and minimal.
bool membership(const FiniteMetricSpace& space, const ExtremalFunction& f);

/// The vertex set of the complex as a finite metric space under the sup
/// metric. Cone vertices keep their point labels.
FiniteMetricSpace vertex_metric_space(const TightSpanComplex& complex);

/// A point of h(X) inside every lifted ball of a pairwise-overlapping
/// family: minimize_to_extremal(extend_ball_family(...)).
ExtremalFunction ball_intersection_witness(const FiniteMetricSpace& space,
                                           const BallFamily& family);

/// The canonical image of a point inside the hull (its distance cone).
ExtremalFunction embed_point(const FiniteMetricSpace& space, int x);

// Rank of the equality graph of f (rows e_x + e_y per tight pair, e_x per
// zero). n - rank is the local cell dimension at a minimal point.
int tight_graph_rank(const FiniteMetricSpace& space, const ExtremalFunction& f);

// Structure probe over vertex subsets of size <= 3: minimum tight-graph rank
// among sampled minimal points, plus the midpoint-certified 1-skeleton.
// Serial reference and OpenMP kernel produce identical results.
struct ComplexProbe {
    int min_rank = 0;
    std::vector<std::pair<int, int>> edges;
};
ComplexProbe probe_complex_structure_serial(const FiniteMetricSpace& space,
                                            const std::vector<ExtremalFunction>& vertices);
ComplexProbe probe_complex_structure_parallel(const FiniteMetricSpace& space,
                                              const std::vector<ExtremalFunction>& vertices);

} // namespace mtk

#endif
