#ifndef MTK_EXTENSION_HPP
#define MTK_EXTENSION_HPP

#include "mtk/metric_space.hpp"
#include "mtk/tree.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace mtk {

// Concave nondecreasing modulus of continuity omega(t) = min_i (a_i t + b_i)
// with a_i, b_i >= 0; concavity plus omega(0) >= 0 gives subadditivity.
// The Lipschitz case is the single piece (L, 0).
struct Modulus {
    struct Piece {
        Rat slope;
        Rat intercept;
    };
    std::vector<Piece> pieces;

    static Modulus lipschitz(Rat constant);
    Rat operator()(const Rat& t) const;
};

// Values on a subset of a domain space, mapping into either a sup-norm
// coordinate space or a weighted tree.
struct SupNormTarget {
    int dims = 0;
    std::vector<std::vector<Rat>> rows; // one row of `dims` values per subset point
};
struct TreeTarget {
    WeightedTree tree;
    std::vector<TreePoint> points; // one per subset point
};

struct PartialMap {
    std::vector<int> subset; // distinct point indices of the domain space
    std::variant<SupNormTarget, TreeTarget> target;
};

struct ModulusReport {
    bool ok = true;
    std::optional<std::pair<int, int>> worst_pair; // subset positions, absent below 2 points
    Rat excess = 0;                                // target_dist - omega(d) at the worst pair
};

/// Does target-distance(f(x), f(y)) <= omega(d(x,y)) hold on all subset pairs?
ModulusReport modulus_check(const FiniteMetricSpace& space, const PartialMap& map,
                            const Modulus& modulus);

/// Coordinatewise lower McShane envelope min_x (f_j(x) + omega(d(z,x))),
/// pinned to the input on the subset. Sup-norm targets only; the full table
/// satisfies the same modulus over every pair of the domain space.
std::vector<std::vector<Rat>> extend_with_modulus(const FiniteMetricSpace& space,
                                                  const PartialMap& map, const Modulus& modulus);

/// Nonexpansive-style extension into the tree: unmapped points are placed in
/// ascending index order at the ball-intersection witness of
/// { B(f(x), L d(z,x)) : x already mapped }. The completed map is L-Lipschitz.
std::vector<TreePoint> extend_into_tree(const FiniteMetricSpace& space, const PartialMap& map,
                                        const Rat& lipschitz_constant);

/// Smallest L with target-distance <= L * d on the subset.
Rat lipschitz_constant_of(const FiniteMetricSpace& space, const PartialMap& map);

} // namespace mtk

#endif
