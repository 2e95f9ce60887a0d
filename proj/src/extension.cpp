#include "mtk/extension.hpp"
#include "mtk/error.hpp"

#include <algorithm>
#include <set>

namespace mtk {

Modulus Modulus::lipschitz(Rat constant) {
    if (constant < 0)
        throw Error("InvalidModulus", "Lipschitz constant must be nonnegative");
    return Modulus{{{std::move(constant), Rat(0)}}};
}

Rat Modulus::operator()(const Rat& t) const {
    if (pieces.empty())
        throw Error("InvalidModulus", "modulus needs at least one piece");
    Rat best = pieces[0].slope * t + pieces[0].intercept;
    for (size_t i = 1; i < pieces.size(); ++i) {
        Rat v = pieces[i].slope * t + pieces[i].intercept;
        if (v < best)
            best = v;
    }
    return best;
}

namespace {

void check_map(const FiniteMetricSpace& space, const PartialMap& map) {
    std::set<int> seen;
    for (int x : map.subset) {
        if (x < 0 || x >= space.size())
            throw Error("InvalidIndex", "subset point out of range");
        if (!seen.insert(x).second)
            throw Error("InvalidIndex", "subset point repeated");
    }
    if (const auto* sup = std::get_if<SupNormTarget>(&map.target)) {
        if (sup->dims <= 0)
            throw Error("SizeMismatch", "sup-norm target needs at least one coordinate");
        if (sup->rows.size() != map.subset.size())
            throw Error("SizeMismatch", "value rows do not match the subset");
        for (const auto& row : sup->rows)
            if (static_cast<int>(row.size()) != sup->dims)
                throw Error("SizeMismatch", "value row has the wrong width");
    } else {
        const auto& tree = std::get<TreeTarget>(map.target);
        if (tree.points.size() != map.subset.size())
            throw Error("SizeMismatch", "tree points do not match the subset");
    }
}

void check_modulus(const Modulus& modulus) {
    if (modulus.pieces.empty())
        throw Error("InvalidModulus", "modulus needs at least one piece");
    for (const auto& piece : modulus.pieces)
        if (piece.slope < 0 || piece.intercept < 0)
            throw Error("InvalidModulus", "modulus pieces need nonnegative slope and intercept");
}

Rat sup_norm_distance(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat worst = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        Rat v = abs(a[i] - b[i]);
        if (v > worst)
            worst = v;
    }
    return worst;
}

Rat target_distance(const PartialMap& map, size_t i, size_t j) {
    if (const auto* sup = std::get_if<SupNormTarget>(&map.target))
        return sup_norm_distance(sup->rows[i], sup->rows[j]);
    const auto& tree = std::get<TreeTarget>(map.target);
    return tree_distance(tree.tree, tree.points[i], tree.points[j]);
}

} // namespace

ModulusReport modulus_check(const FiniteMetricSpace& space, const PartialMap& map,
                            const Modulus& modulus) {
    check_map(space, map);
    check_modulus(modulus);
    ModulusReport report;
    bool first = true;
    for (size_t i = 0; i < map.subset.size(); ++i)
        for (size_t j = i + 1; j < map.subset.size(); ++j) {
            Rat excess =
                target_distance(map, i, j) - modulus(space.d(map.subset[i], map.subset[j]));
            if (first || excess > report.excess) {
                report.excess = excess;
                report.worst_pair = {static_cast<int>(i), static_cast<int>(j)};
                first = false;
            }
        }
    report.ok = first || report.excess <= 0;
    return report;
}

std::vector<std::vector<Rat>> extend_with_modulus(const FiniteMetricSpace& space,
                                                  const PartialMap& map, const Modulus& modulus) {
    const auto* sup = std::get_if<SupNormTarget>(&map.target);
    if (!sup)
        throw Error("SupNormTargetRequired", "envelope extension needs a sup-norm target");
    ModulusReport report = modulus_check(space, map, modulus);
    if (!report.ok)
        throw Error("ModulusViolated", "input map exceeds the modulus on its subset");

    std::vector<int> position(space.size(), -1);
    for (size_t i = 0; i < map.subset.size(); ++i)
        position[map.subset[i]] = static_cast<int>(i);

    std::vector<std::vector<Rat>> table(space.size(), std::vector<Rat>(sup->dims));
    for (int z = 0; z < space.size(); ++z) {
        if (position[z] >= 0) {
            table[z] = sup->rows[position[z]]; // envelope with omega(0) > 0 would drift
            continue;
        }
        for (int j = 0; j < sup->dims; ++j) {
            Rat best = sup->rows[0][j] + modulus(space.d(z, map.subset[0]));
            for (size_t i = 1; i < map.subset.size(); ++i) {
                Rat v = sup->rows[i][j] + modulus(space.d(z, map.subset[i]));
                if (v < best)
                    best = v;
            }
            table[z][j] = best;
        }
    }
    return table;
}

std::vector<TreePoint> extend_into_tree(const FiniteMetricSpace& space, const PartialMap& map,
                                        const Rat& lipschitz_constant) {
    const auto* target = std::get_if<TreeTarget>(&map.target);
    if (!target)
        throw Error("TreeTargetRequired", "tree extension needs a tree target");
    if (map.subset.empty())
        throw Error("InvalidIndex", "tree extension needs at least one mapped point");
    Modulus modulus = Modulus::lipschitz(lipschitz_constant);
    ModulusReport report = modulus_check(space, map, modulus);
    if (!report.ok)
        throw Error("ModulusViolated", "input map exceeds the Lipschitz bound on its subset");

    std::vector<std::optional<TreePoint>> placed(space.size());
    for (size_t i = 0; i < map.subset.size(); ++i)
        placed[map.subset[i]] = normalize_point(target->tree, target->points[i]);

    for (int z = 0; z < space.size(); ++z) {
        if (placed[z])
            continue;
        std::vector<TreeBall> balls;
        for (int x = 0; x < space.size(); ++x)
            if (placed[x])
                balls.push_back({*placed[x], lipschitz_constant * space.d(z, x)});
        auto witness = tree_ball_intersection(target->tree, balls);
        if (!witness)
            throw Error("InternalError", "Helly step failed under a valid Lipschitz bound");
        placed[z] = *witness;
    }

    std::vector<TreePoint> out;
    out.reserve(space.size());
    for (auto& p : placed)
        out.push_back(*p);
    return out;
}

Rat lipschitz_constant_of(const FiniteMetricSpace& space, const PartialMap& map) {
    check_map(space, map);
    if (map.subset.size() < 2)
        throw Error("DegenerateSubset", "need at least two mapped points");
    Rat best = 0;
    for (size_t i = 0; i < map.subset.size(); ++i)
        for (size_t j = i + 1; j < map.subset.size(); ++j) {
            Rat ratio = target_distance(map, i, j) / space.d(map.subset[i], map.subset[j]);
            if (ratio > best)
                best = ratio;
        }
    return best;
}

} // namespace mtk
