#ifndef MTK_IO_HPP
#define MTK_IO_HPP

#include "mtk/metric_space.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mtk {

enum class MatrixFormat {
    csv,    // header "labels,a,b,..." then one labeled row per point
    phylip, // point count line, then "label d1 d2 ..." rows (full or lower-triangle)
};

/// Parse a distance matrix and validate it. Decimal text converts exactly;
/// "p/q" literals are accepted. merge_duplicates collapses zero-distance
/// point groups onto their first label before validation.
FiniteMetricSpace parse_distance_input(std::string_view text, MatrixFormat format,
                                       bool merge_duplicates = false);

struct PointSample {
    std::vector<std::string> labels;
    std::vector<std::pair<Rat, Rat>> points;
};

/// CSV rows "label,x,y" (an optional literal "label,x,y" header is skipped).
PointSample parse_points_csv(std::string_view text);

/// Inverse of the csv matrix format, byte-stable: re-parsing yields an
/// identical space.
std::string emit_matrix_csv(const FiniteMetricSpace& space);

/// Dispatch one CLI invocation (argv without the program name). Emitted
/// documents go to `out`, diagnostics to `err`. Returns the exit code:
/// 0 success, 1 domain error, 2 parse or usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mtk

#endif
