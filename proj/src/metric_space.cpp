#include "mtk/metric_space.hpp"
#include "mtk/error.hpp"

#include <set>

namespace mtk {

namespace {

// Characters that would break the CSV / Newick / DOT emitters.
constexpr std::string_view kForbiddenLabelChars = ",;:()[]'\" \t\r\n";

void check_labels(const std::vector<std::string>& labels) {
    if (labels.empty())
        throw Error("EmptySpace", "a metric space needs at least one point");
    std::set<std::string> seen;
    for (const auto& label : labels) {
        if (label.empty())
            throw Error("InvalidLabel", "labels must be non-empty");
        if (label.find_first_of(kForbiddenLabelChars) != std::string::npos)
            throw Error("InvalidLabel", "label '" + label + "' contains a reserved character");
        if (!seen.insert(label).second)
            throw Error("DuplicateLabel", "label '" + label + "' appears twice");
    }
}

} // namespace

int FiniteMetricSpace::find(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels[i] == label)
            return i;
    return -1;
}

FiniteMetricSpace validate_metric(std::vector<std::string> labels,
                                  const std::vector<std::vector<Rat>>& matrix) {
    check_labels(labels);
    const int n = static_cast<int>(labels.size());
    if (static_cast<int>(matrix.size()) != n)
        throw Error("ParseError", "matrix has " + std::to_string(matrix.size()) +
                                      " rows for " + std::to_string(n) + " labels");
    for (const auto& row : matrix)
        if (static_cast<int>(row.size()) != n)
            throw Error("ParseError", "matrix is not square");

    for (int i = 0; i < n; ++i) {
        if (matrix[i][i] != 0)
            throw Error("NonzeroDiagonal", "d(" + labels[i] + "," + labels[i] + ") = " +
                                               format_rational(matrix[i][i]));
        for (int j = 0; j < n; ++j) {
            if (matrix[i][j] < 0)
                throw Error("NegativeDistance", "d(" + labels[i] + "," + labels[j] + ") = " +
                                                    format_rational(matrix[i][j]));
            if (matrix[i][j] != matrix[j][i])
                throw Error("AsymmetricMatrix", "d(" + labels[i] + "," + labels[j] + ") != d(" +
                                                    labels[j] + "," + labels[i] + ")");
            if (i != j && matrix[i][j] == 0)
                throw Error("ZeroDistanceBetweenDistinctLabels",
                            labels[i] + " and " + labels[j] + " are at distance 0");
        }
    }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (matrix[i][k] > matrix[i][j] + matrix[j][k])
                    throw Error("TriangleViolation",
                                "d(" + labels[i] + "," + labels[k] + ") > d(" + labels[i] + "," +
                                    labels[j] + ") + d(" + labels[j] + "," + labels[k] + ")");

    FiniteMetricSpace space;
    space.labels = std::move(labels);
    space.dist.reserve(static_cast<size_t>(n) * n);
    for (const auto& row : matrix)
        for (const auto& v : row)
            space.dist.push_back(v);
    return space;
}

std::vector<int> metric_interval(const FiniteMetricSpace& space, int x, int y) {
    std::vector<int> out;
    for (int z = 0; z < space.size(); ++z)
        if (space.d(x, z) + space.d(z, y) == space.d(x, y))
            out.push_back(z);
    return out;
}

std::vector<int> median_points(const FiniteMetricSpace& space, int x, int y, int z) {
    std::vector<int> out;
    for (int m = 0; m < space.size(); ++m) {
        bool in_all = space.d(x, m) + space.d(m, y) == space.d(x, y) &&
                      space.d(y, m) + space.d(m, z) == space.d(y, z) &&
                      space.d(z, m) + space.d(m, x) == space.d(z, x);
        if (in_all)
            out.push_back(m);
    }
    return out;
}

BallCheckResult binary_ball_intersection_check(const FiniteMetricSpace& space,
                                               const BallFamily& family) {
    for (const auto& ball : family.balls) {
        if (ball.center < 0 || ball.center >= space.size())
            throw Error("InvalidIndex", "ball center out of range");
        if (ball.radius < 0)
            throw Error("NegativeRadius", "ball radius must be nonnegative");
    }

    BallCheckResult result;
    result.pairwise_ok = true;
    for (size_t i = 0; i < family.balls.size(); ++i)
        for (size_t j = i + 1; j < family.balls.size(); ++j) {
            const auto& a = family.balls[i];
            const auto& b = family.balls[j];
            if (space.d(a.center, b.center) > a.radius + b.radius)
                result.pairwise_ok = false;
        }

    for (int p = 0; p < space.size(); ++p) {
        bool inside_all = true;
        for (const auto& ball : family.balls)
            if (space.d(p, ball.center) > ball.radius) {
                inside_all = false;
                break;
            }
        if (inside_all) {
            result.witness = p;
            break;
        }
    }
    return result;
}

} // namespace mtk
