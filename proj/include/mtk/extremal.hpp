#ifndef MTK_EXTREMAL_HPP
#define MTK_EXTREMAL_HPP

#include "mtk/metric_space.hpp"

namespace mtk {

// A rational-valued function on the points of a space. Admissible means
// f(x) + f(y) >= d(x,y) for every pair (the x = y pair forces f >= 0);
// minimal means no pointwise-smaller admissible function exists, which is
// equivalent to the fixpoint f(x) = max_w (d(x,w) - f(w)).
struct ExtremalFunction {
    std::vector<Rat> values;

    int size() const { return static_cast<int>(values.size()); }
    bool operator==(const ExtremalFunction& other) const = default;
};

/// The distance cone h_v: z -> d(v,z). Always minimal extremal.
ExtremalFunction distance_cone(const FiniteMetricSpace& space, int v);

bool is_admissible(const FiniteMetricSpace& space, const ExtremalFunction& f);

/// Fixpoint test f(x) == max_w (d(x,w) - f(w)). Requires f admissible.
bool is_minimal(const FiniteMetricSpace& space, const ExtremalFunction& f);

/// Lift a pairwise-overlapping ball family to the admissible function
/// f(x) = min_i (d(x, c_i) + r_i); satisfies f(c_i) <= r_i at every center.
ExtremalFunction extend_ball_family(const FiniteMetricSpace& space, const BallFamily& family);

/// Shrink an admissible f to a minimal extremal function below it.
/// Deterministic: full passes in ascending point order applying
/// f(x) <- max(0, max_{y != x} (d(x,y) - f(y))) until a pass changes nothing.
ExtremalFunction minimize_to_extremal(const FiniteMetricSpace& space, ExtremalFunction f);

/// Sup metric rho(f,g) = max_x |f(x) - g(x)|.
Rat sup_distance(const ExtremalFunction& f, const ExtremalFunction& g);

} // namespace mtk

#endif
