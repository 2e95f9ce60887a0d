#include "mtk/extremal.hpp"
#include "mtk/error.hpp"

namespace mtk {

namespace {

void check_size(const FiniteMetricSpace& space, const ExtremalFunction& f) {
    if (f.size() != space.size())
        throw Error("SizeMismatch", "function has " + std::to_string(f.size()) +
                                        " values for " + std::to_string(space.size()) + " points");
}

} // namespace

ExtremalFunction distance_cone(const FiniteMetricSpace& space, int v) {
    if (v < 0 || v >= space.size())
        throw Error("InvalidIndex", "point index out of range");
    ExtremalFunction f;
    f.values.reserve(space.size());
    for (int z = 0; z < space.size(); ++z)
        f.values.push_back(space.d(v, z));
    return f;
}

bool is_admissible(const FiniteMetricSpace& space, const ExtremalFunction& f) {
    check_size(space, f);
    const int n = space.size();
    for (int x = 0; x < n; ++x)
        for (int y = x; y < n; ++y)
            if (f.values[x] + f.values[y] < space.d(x, y))
                return false;
    return true;
}

bool is_minimal(const FiniteMetricSpace& space, const ExtremalFunction& f) {
    if (!is_admissible(space, f))
        throw Error("NotAdmissible", "minimality is only defined for admissible functions");
    const int n = space.size();
    for (int x = 0; x < n; ++x) {
        Rat sup = space.d(x, 0) - f.values[0];
        for (int w = 1; w < n; ++w) {
            Rat v = space.d(x, w) - f.values[w];
            if (v > sup)
                sup = v;
        }
        if (f.values[x] != sup)
            return false;
    }
    return true;
}

ExtremalFunction extend_ball_family(const FiniteMetricSpace& space, const BallFamily& family) {
    if (family.balls.empty())
        throw Error("EmptyFamily", "cannot extend an empty ball family");
    for (const auto& ball : family.balls) {
        if (ball.center < 0 || ball.center >= space.size())
            throw Error("InvalidIndex", "ball center out of range");
        if (ball.radius < 0)
            throw Error("NegativeRadius", "ball radius must be nonnegative");
    }
    for (size_t i = 0; i < family.balls.size(); ++i)
        for (size_t j = i + 1; j < family.balls.size(); ++j) {
            const auto& a = family.balls[i];
            const auto& b = family.balls[j];
            if (space.d(a.center, b.center) > a.radius + b.radius)
                throw Error("NotPairwiseOverlapping",
                            "balls at " + space.labels[a.center] + " and " +
                                space.labels[b.center] + " do not overlap");
        }

    ExtremalFunction f;
    f.values.reserve(space.size());
    for (int x = 0; x < space.size(); ++x) {
        Rat best = space.d(x, family.balls[0].center) + family.balls[0].radius;
        for (size_t i = 1; i < family.balls.size(); ++i) {
            Rat v = space.d(x, family.balls[i].center) + family.balls[i].radius;
            if (v < best)
                best = v;
        }
        f.values.push_back(best);
    }
    return f;
}

ExtremalFunction minimize_to_extremal(const FiniteMetricSpace& space, ExtremalFunction f) {
    if (!is_admissible(space, f))
        throw Error("NotAdmissible", "can only minimize admissible functions");
    const int n = space.size();
    int changing_passes = 0;
    for (;;) {
        bool changed = false;
        for (int x = 0; x < n; ++x) {
            Rat target = 0;
            for (int y = 0; y < n; ++y) {
                if (y == x)
                    continue;
                Rat v = space.d(x, y) - f.values[y];
                if (v > target)
                    target = v;
            }
            if (f.values[x] != target) {
                f.values[x] = target;
                changed = true;
            }
        }
        if (!changed)
            break;
        if (++changing_passes > n + 1)
            throw Error("NonTermination",
                        "coordinate descent exceeded the n+1 pass bound");
    }
    return f;
}

Rat sup_distance(const ExtremalFunction& f, const ExtremalFunction& g) {
    if (f.size() != g.size())
        throw Error("SpaceMismatch", "functions live on different spaces");
    Rat sup = 0;
    for (int x = 0; x < f.size(); ++x) {
        Rat v = abs(f.values[x] - g.values[x]);
        if (v > sup)
            sup = v;
    }
    return sup;
}

} // namespace mtk
