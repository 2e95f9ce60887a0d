#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

#include "mtk/error.hpp"
#include "mtk/four_point.hpp"
#include "mtk/metric_space.hpp"

#include <algorithm>
#include <functional>

using namespace mtk;

namespace {

std::string error_code(const std::function<void()>& call) {
    try {
        call();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

FiniteMetricSpace scaled(const FiniteMetricSpace& space, const Rat& factor) {
    const int n = space.size();
    std::vector<std::vector<Rat>> matrix(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            matrix[i][j] = space.d(i, j) * factor;
    return validate_metric(space.labels, matrix);
}

FiniteMetricSpace permuted(const FiniteMetricSpace& space, const std::vector<int>& perm) {
    const int n = space.size();
    std::vector<std::string> labels(n);
    std::vector<std::vector<Rat>> matrix(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        labels[i] = space.labels[perm[i]];
        for (int j = 0; j < n; ++j)
            matrix[i][j] = space.d(perm[i], perm[j]);
    }
    return validate_metric(labels, matrix);
}

} // namespace

TEST_CASE("validate_metric accepts the smallest nondegenerate space") {
    FiniteMetricSpace space = fixtures::space_two();
    CHECK(space.size() == 2);
    CHECK(space.d(0, 1) == 1);
    CHECK(space.find("b") == 1);
    CHECK(space.find("zzz") == -1);
}

TEST_CASE("validate_metric accepts the running example") {
    FiniteMetricSpace space = fixtures::space_a();
    CHECK(space.size() == 3);
    CHECK(space.d(1, 2) == 4);
}

TEST_CASE("validate_metric rejects each axiom violation with its code") {
    auto build = [](std::vector<std::vector<Rat>> m,
                    std::vector<std::string> labels = {"a", "b", "c"}) {
        return [m = std::move(m), labels = std::move(labels)]() { validate_metric(labels, m); };
    };

    CHECK(error_code(build({{Rat(0), Rat(1), Rat(10)},
                            {Rat(1), Rat(0), Rat(1)},
                            {Rat(10), Rat(1), Rat(0)}})) == "TriangleViolation");
    CHECK(error_code(build({{Rat(0), Rat(1), Rat(2)},
                            {Rat(2), Rat(0), Rat(1)},
                            {Rat(2), Rat(1), Rat(0)}})) == "AsymmetricMatrix");
    CHECK(error_code(build({{Rat(1), Rat(1), Rat(2)},
                            {Rat(1), Rat(0), Rat(1)},
                            {Rat(2), Rat(1), Rat(0)}})) == "NonzeroDiagonal");
    CHECK(error_code(build({{Rat(0), Rat(-1), Rat(2)},
                            {Rat(-1), Rat(0), Rat(1)},
                            {Rat(2), Rat(1), Rat(0)}})) == "NegativeDistance");
    CHECK(error_code(build({{Rat(0), Rat(0), Rat(2)},
                            {Rat(0), Rat(0), Rat(2)},
                            {Rat(2), Rat(2), Rat(0)}})) ==
          "ZeroDistanceBetweenDistinctLabels");
    CHECK(error_code(build({{Rat(0), Rat(1), Rat(1)},
                            {Rat(1), Rat(0), Rat(1)},
                            {Rat(1), Rat(1), Rat(0)}},
                           {"a", "a", "b"})) == "DuplicateLabel");
    CHECK(error_code(build({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}, {"a", ""})) == "InvalidLabel");
    CHECK(error_code(build({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}, {"a", "b,c"})) ==
          "InvalidLabel");
    CHECK(error_code(build({}, {})) == "EmptySpace");
}

TEST_CASE("triangle violation names the witnessing triple") {
    try {
        validate_metric({"a", "b", "c"}, {{Rat(0), Rat(1), Rat(10)},
                                          {Rat(1), Rat(0), Rat(1)},
                                          {Rat(10), Rat(1), Rat(0)}});
        FAIL("expected TriangleViolation");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("d(a,c) > d(a,b) + d(b,c)") != std::string::npos);
    }
}

TEST_CASE("four-point report on the fixtures") {
    SUBCASE("three points always hold") {
        FourPointReport report = four_point_report(fixtures::space_a());
        CHECK(report.holds);
        CHECK(report.excess == 0);
    }
    SUBCASE("C4 fails with excess 2 at (a,c,b,d)") {
        FourPointReport report = four_point_report(fixtures::space_c4());
        CHECK_FALSE(report.holds);
        CHECK(report.excess == 2);
        CHECK(report.worst_quadruple == std::array<int, 4>{0, 2, 1, 3});
    }
    SUBCASE("quartet holds; two of the three sums agree and dominate") {
        FiniteMetricSpace q = fixtures::space_quartet();
        FourPointReport report = four_point_report(q);
        CHECK(report.holds);
        CHECK(report.excess == 0);
        Rat s1 = q.d(0, 1) + q.d(2, 3);
        Rat s2 = q.d(0, 2) + q.d(1, 3);
        Rat s3 = q.d(0, 3) + q.d(1, 2);
        CHECK(s1 == 4);
        CHECK(s2 == 6);
        CHECK(s2 == s3);
    }
}

TEST_CASE("four-point scan matches the ordered-quadruple oracle on random spaces") {
    std::mt19937_64 rng(7001);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(rng() % 6);
        FiniteMetricSpace space =
            trial % 2 ? testgen::random_metric(rng, n) : testgen::random_tree_metric(rng, n);
        FourPointReport report = four_point_report_serial(space);
        CHECK(report.excess == oracle::four_point_excess(space));
        CHECK(report.holds == (report.excess == 0));
    }
}

TEST_CASE("serial and parallel four-point kernels agree exactly") {
    std::mt19937_64 rng(7002);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 3 + static_cast<int>(rng() % 15);
        FiniteMetricSpace space = testgen::random_metric(rng, n);
        FourPointReport serial = four_point_report_serial(space);
        FourPointReport parallel = four_point_report_parallel(space);
        CHECK(serial.holds == parallel.holds);
        CHECK(serial.excess == parallel.excess);
        CHECK(serial.worst_quadruple == parallel.worst_quadruple);
    }
}

TEST_CASE("four-point excess is permutation invariant and scales linearly") {
    std::mt19937_64 rng(7003);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 4 + static_cast<int>(rng() % 3);
        FiniteMetricSpace space = testgen::random_metric(rng, n);
        Rat excess = four_point_report(space).excess;

        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i)
            perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(four_point_report(permuted(space, perm)).excess == excess);

        Rat factor(3, 7);
        FiniteMetricSpace scaled_space = scaled(space, factor);
        CHECK(four_point_report(scaled_space).excess == excess * factor);

        // Interval and median sets survive scaling as well.
        CHECK(metric_interval(space, 0, 1) == metric_interval(scaled_space, 0, 1));
        CHECK(median_points(space, 0, 1, n - 1) == median_points(scaled_space, 0, 1, n - 1));
    }
}

TEST_CASE("metric intervals") {
    FiniteMetricSpace p3 = fixtures::space_p3();
    CHECK(metric_interval(p3, 0, 2) == std::vector<int>{0, 1, 2});
    CHECK(metric_interval(p3, 0, 0) == std::vector<int>{0});

    FiniteMetricSpace q = fixtures::space_quartet();
    CHECK(metric_interval(q, 0, 2) == std::vector<int>{0, 2});
}

TEST_CASE("median points") {
    FiniteMetricSpace p3 = fixtures::space_p3();
    CHECK(median_points(p3, 0, 2, 1) == std::vector<int>{1});

    FiniteMetricSpace c4 = fixtures::space_c4();
    CHECK(median_points(c4, 0, 1, 2) == std::vector<int>{1});

    // d(a,b)=2, d(c,d)=2, d(a,c)=2, d(b,d)=2, d(a,d)=3, d(b,c)=3: no median.
    FiniteMetricSpace b = fixtures::from_rows(
        {"a", "b", "c", "d"}, {{0, 2, 2, 3}, {2, 0, 3, 2}, {2, 3, 0, 2}, {3, 2, 2, 0}});
    CHECK(median_points(b, 0, 2, 3).empty());
}

TEST_CASE("medians live inside each pairwise interval") {
    std::mt19937_64 rng(7004);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + static_cast<int>(rng() % 4);
        FiniteMetricSpace space = testgen::random_metric(rng, n);
        int x = static_cast<int>(rng() % n), y = static_cast<int>(rng() % n),
            z = static_cast<int>(rng() % n);
        std::vector<int> interval = metric_interval(space, x, y);
        for (int m : median_points(space, x, y, z))
            CHECK(std::find(interval.begin(), interval.end(), m) != interval.end());
    }
}

TEST_CASE("binary ball intersection check on the quartet node set") {
    FiniteMetricSpace nodes = fixtures::space_quartet_nodes();

    SUBCASE("unit balls around a and b meet at p") {
        BallCheckResult r =
            binary_ball_intersection_check(nodes, {{{0, Rat(1)}, {1, Rat(1)}}});
        CHECK(r.pairwise_ok);
        REQUIRE(r.witness.has_value());
        CHECK(*r.witness == 4);
    }
    SUBCASE("radius 3/2 balls around a and c overlap but no node witnesses it") {
        BallCheckResult r =
            binary_ball_intersection_check(nodes, {{{0, Rat(3, 2)}, {2, Rat(3, 2)}}});
        CHECK(r.pairwise_ok);
        CHECK_FALSE(r.witness.has_value());
    }
    SUBCASE("empty family is vacuously fine") {
        BallCheckResult r = binary_ball_intersection_check(nodes, {});
        CHECK(r.pairwise_ok);
        REQUIRE(r.witness.has_value());
        CHECK(*r.witness == 0);
    }
    SUBCASE("bad balls are rejected") {
        CHECK_THROWS_AS(binary_ball_intersection_check(nodes, {{{9, Rat(1)}}}), Error);
        CHECK_THROWS_AS(binary_ball_intersection_check(nodes, {{{0, Rat(-1)}}}), Error);
    }
}
