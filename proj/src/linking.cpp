#include "mtk/linking.hpp"
#include "mtk/error.hpp"

#include <optional>
#include <set>

namespace mtk {

namespace {

// Exact rational square root of a nonnegative rational, if one exists.
std::optional<Rat> rational_sqrt(const Rat& value) {
    Int num = numerator(value);
    Int den = denominator(value);
    Int num_root = boost::multiprecision::sqrt(num);
    Int den_root = boost::multiprecision::sqrt(den);
    if (num_root * num_root != num || den_root * den_root != den)
        return std::nullopt;
    return Rat(num_root, den_root);
}

void check_distinct(const std::vector<std::pair<Rat, Rat>>& points,
                    const std::vector<std::string>& labels) {
    if (points.size() != labels.size())
        throw Error("SizeMismatch", "labels do not match the point list");
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw Error("DuplicatePoint",
                            labels[i] + " and " + labels[j] + " are the same point");
}

} // namespace

FiniteMetricSpace glue_spaces(const LinkSpec& spec) {
    // Global index layout: base points first, then each component minus its
    // link point. owner = -1 for base, component index otherwise.
    std::vector<std::string> labels;
    std::vector<int> owner, local;
    std::set<std::string> seen;

    for (int i = 0; i < spec.base.size(); ++i) {
        labels.push_back(spec.base.labels[i]);
        owner.push_back(-1);
        local.push_back(i);
        seen.insert(labels.back());
    }
    for (size_t c = 0; c < spec.components.size(); ++c) {
        const auto& comp = spec.components[c];
        if (comp.link_point < 0 || comp.link_point >= comp.space.size())
            throw Error("InvalidIndex", "link point out of range in component " +
                                            std::to_string(c + 1));
        if (comp.anchor < 0 || comp.anchor >= spec.base.size())
            throw Error("InvalidIndex", "anchor out of range in component " +
                                            std::to_string(c + 1));
        for (int i = 0; i < comp.space.size(); ++i) {
            if (i == comp.link_point)
                continue;
            if (!seen.insert(comp.space.labels[i]).second)
                throw Error("LabelCollision",
                            "label '" + comp.space.labels[i] + "' appears in two glued parts");
            labels.push_back(comp.space.labels[i]);
            owner.push_back(static_cast<int>(c));
            local.push_back(i);
        }
    }

    const int n = static_cast<int>(labels.size());
    std::vector<std::vector<Rat>> matrix(n, std::vector<Rat>(n, Rat(0)));
    auto link_leg = [&](int k) {
        const auto& comp = spec.components[owner[k]];
        return comp.space.d(comp.link_point, local[k]);
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rat d;
            if (owner[i] == owner[j]) {
                d = owner[i] == -1 ? spec.base.d(local[i], local[j])
                                   : spec.components[owner[i]].space.d(local[i], local[j]);
            } else if (owner[i] == -1 || owner[j] == -1) {
                int in_base = owner[i] == -1 ? i : j;
                int in_comp = owner[i] == -1 ? j : i;
                d = spec.base.d(local[in_base], spec.components[owner[in_comp]].anchor) +
                    link_leg(in_comp);
            } else {
                d = spec.base.d(spec.components[owner[i]].anchor,
                                spec.components[owner[j]].anchor) +
                    link_leg(i) + link_leg(j);
            }
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    return validate_metric(std::move(labels), matrix);
}

FiniteMetricSpace river_metric(const std::vector<std::pair<Rat, Rat>>& points,
                               const std::vector<std::string>& labels) {
    check_distinct(points, labels);
    const int n = static_cast<int>(points.size());
    std::vector<std::vector<Rat>> matrix(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const auto& [xi, yi] = points[i];
            const auto& [xj, yj] = points[j];
            Rat d = xi == xj ? abs(yi - yj) : abs(yi) + abs(xi - xj) + abs(yj);
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    return validate_metric(labels, matrix);
}

FiniteMetricSpace radial_metric(const std::vector<std::pair<Rat, Rat>>& points,
                                const std::vector<std::string>& labels, RadialNorm norm) {
    check_distinct(points, labels);
    const int n = static_cast<int>(points.size());

    std::vector<Rat> norms(n);
    for (int i = 0; i < n; ++i) {
        const auto& [x, y] = points[i];
        if (norm == RadialNorm::taxicab) {
            norms[i] = abs(x) + abs(y);
        } else {
            auto root = rational_sqrt(x * x + y * y);
            if (!root)
                throw Error("IrrationalNorm",
                            "point " + labels[i] +
                                " has irrational Euclidean norm (use the taxicab variant)");
            norms[i] = *root;
        }
    }

    auto same_ray = [&](int i, int j) {
        const auto& [xi, yi] = points[i];
        const auto& [xj, yj] = points[j];
        if ((xi == 0 && yi == 0) || (xj == 0 && yj == 0))
            return true; // the origin sits on every ray
        return xi * yj == xj * yi && xi * xj + yi * yj > 0;
    };

    std::vector<std::vector<Rat>> matrix(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rat d = same_ray(i, j) ? abs(norms[i] - norms[j]) : norms[i] + norms[j];
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    return validate_metric(labels, matrix);
}

} // namespace mtk
