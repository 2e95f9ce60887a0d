#ifndef MTK_FOUR_POINT_HPP
#define MTK_FOUR_POINT_HPP

#include "mtk/metric_space.hpp"

#include <array>

namespace mtk {

// Result of the exhaustive four-point scan. For each unordered quadruple
// {x,y,u,v} (repetition allowed) the three pairing sums
//   d(x,y)+d(u,v), d(x,u)+d(y,v), d(x,v)+d(y,u)
// are formed; the quadruple's excess is (largest sum) - (second largest).
// The condition holds iff the two largest sums agree for every quadruple.
// Repetition makes the scan subsume the triangle inequality.
struct FourPointReport {
    bool holds = true;
    std::array<int, 4> worst_quadruple{0, 0, 0, 0}; // ordered (x,y,u,v), d(x,y)+d(u,v) maximal
    Rat excess = 0;
};

/// Exhaustive O(n^4) scan; reported quadruple is deterministic
/// (maximal excess, ties broken by lexicographic index order).
FourPointReport four_point_report(const FiniteMetricSpace& space);

// Serial reference and OpenMP kernel; both produce identical reports.
FourPointReport four_point_report_serial(const FiniteMetricSpace& space);
FourPointReport four_point_report_parallel(const FiniteMetricSpace& space);

} // namespace mtk

#endif
