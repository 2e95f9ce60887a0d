#ifndef MTK_METRIC_SPACE_HPP
#define MTK_METRIC_SPACE_HPP

#include "mtk/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtk {

// A finite metric space: distinct labeled points with an exact rational
// distance matrix. Construct through validate_metric so the invariants
// (symmetry, zero diagonal, positivity, triangle inequality) always hold.
struct FiniteMetricSpace {
    std::vector<std::string> labels;
    std::vector<Rat> dist; // row-major n*n

    int size() const { return static_cast<int>(labels.size()); }

    const Rat& d(int i, int j) const { return dist[static_cast<size_t>(i) * labels.size() + j]; }

    /// Index of a label, or -1 when absent.
    int find(const std::string& label) const;
};

/// Checks every metric axiom and returns the validated space.
/// Errors: DuplicateLabel, InvalidLabel, AsymmetricMatrix, NonzeroDiagonal,
/// NegativeDistance, ZeroDistanceBetweenDistinctLabels,
/// TriangleViolation (message names the witnessing triple).
FiniteMetricSpace validate_metric(std::vector<std::string> labels,
                                  const std::vector<std::vector<Rat>>& matrix);

// Closed balls B(center; radius) given by point index and rational radius.
struct BallFamily {
    struct Ball {
        int center;
        Rat radius;
    };
    std::vector<Ball> balls;
};

/// The metric interval <x,y> = { z : d(x,z) + d(z,y) = d(x,y) }.
/// Always contains x and y; indices ascending.
std::vector<int> metric_interval(const FiniteMetricSpace& space, int x, int y);

/// Intersection of the three pairwise intervals of x, y, z.
/// May be empty for non-tree metrics.
std::vector<int> median_points(const FiniteMetricSpace& space, int x, int y, int z);

struct BallCheckResult {
    bool pairwise_ok = false;
    std::optional<int> witness; // a point of the space inside every ball, when one exists
};

/// pairwise_ok is the Helly hypothesis d(c_i,c_j) <= r_i + r_j for all pairs;
/// witness is the first point (ascending index) lying in every ball. A missing
/// witness under pairwise_ok exhibits failure of the binary ball intersection
/// property on the finite point set itself.
BallCheckResult binary_ball_intersection_check(const FiniteMetricSpace& space,
                                               const BallFamily& family);

} // namespace mtk

#endif
