#ifndef MTK_TESTS_FIXTURES_HPP
#define MTK_TESTS_FIXTURES_HPP

// The handful of named spaces used across the suites.

#include "mtk/metric_space.hpp"

namespace mtk::fixtures {

inline FiniteMetricSpace from_rows(std::vector<std::string> labels,
                                   std::vector<std::vector<int>> rows) {
    std::vector<std::vector<Rat>> matrix;
    for (const auto& row : rows) {
        matrix.emplace_back();
        for (int v : row)
            matrix.back().emplace_back(v);
    }
    return validate_metric(std::move(labels), matrix);
}

/// Running example: d(a,b)=3, d(a,c)=5, d(b,c)=4.
inline FiniteMetricSpace space_a() {
    return from_rows({"a", "b", "c"}, {{0, 3, 5}, {3, 0, 4}, {5, 4, 0}});
}

/// Two points at distance 1.
inline FiniteMetricSpace space_two() {
    return from_rows({"a", "b"}, {{0, 1}, {1, 0}});
}

/// Path a - z - b with unit legs.
inline FiniteMetricSpace space_p3() {
    return from_rows({"a", "z", "b"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
}

/// Four-cycle: adjacent pairs at 1, opposite pairs at 2. Not a tree metric.
inline FiniteMetricSpace space_c4() {
    return from_rows({"a", "b", "c", "d"},
                     {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
}

/// Quartet tree metric: d(a,b)=2, d(c,d)=2, all cross distances 3.
inline FiniteMetricSpace space_quartet() {
    return from_rows({"a", "b", "c", "d"},
                     {{0, 2, 3, 3}, {2, 0, 3, 3}, {3, 3, 0, 2}, {3, 3, 2, 0}});
}

/// Quartet node set: leaves a,b,c,d plus internal nodes p,q, unit edges
/// a-p, b-p, c-q, d-q, p-q.
inline FiniteMetricSpace space_quartet_nodes() {
    return from_rows({"a", "b", "c", "d", "p", "q"}, {{0, 2, 3, 3, 1, 2},
                                                      {2, 0, 3, 3, 1, 2},
                                                      {3, 3, 0, 2, 2, 1},
                                                      {3, 3, 2, 0, 2, 1},
                                                      {1, 1, 2, 2, 0, 1},
                                                      {2, 2, 1, 1, 1, 0}});
}

} // namespace mtk::fixtures

#endif
