#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "random_instances.hpp"

#include "mtk/error.hpp"
#include "mtk/extremal.hpp"

using namespace mtk;

namespace {

ExtremalFunction fn(std::vector<int> values) {
    ExtremalFunction f;
    for (int v : values)
        f.values.emplace_back(v);
    return f;
}

} // namespace

TEST_CASE("distance cones read back the matrix rows") {
    FiniteMetricSpace a = fixtures::space_a();
    CHECK(distance_cone(a, 0) == fn({0, 3, 5}));
    CHECK(distance_cone(a, 1) == fn({3, 0, 4}));

    FiniteMetricSpace single = validate_metric({"x"}, {{Rat(0)}});
    CHECK(distance_cone(single, 0) == fn({0}));
}

TEST_CASE("admissibility") {
    FiniteMetricSpace a = fixtures::space_a();
    CHECK(is_admissible(a, fn({1, 2, 6})));
    CHECK_FALSE(is_admissible(a, fn({1, 1, 6})));
    CHECK(is_admissible(a, fn({0, 3, 5})));
    CHECK_FALSE(is_admissible(a, fn({-1, 4, 6}))); // x = y pair forces f >= 0
    CHECK_THROWS_AS((void)is_admissible(a, fn({1, 2})), Error);
}

TEST_CASE("minimality is the fixpoint condition") {
    FiniteMetricSpace a = fixtures::space_a();
    CHECK(is_minimal(a, fn({2, 1, 3})));
    CHECK_FALSE(is_minimal(a, fn({1, 2, 6})));
    for (int v = 0; v < 3; ++v)
        CHECK(is_minimal(a, distance_cone(a, v)));
    CHECK_THROWS_AS((void)is_minimal(a, fn({0, 0, 0})), Error);
}

TEST_CASE("ball family extension") {
    FiniteMetricSpace a = fixtures::space_a();
    SUBCASE("worked example") {
        ExtremalFunction f = extend_ball_family(a, {{{0, Rat(1)}, {1, Rat(2)}}});
        CHECK(f == fn({1, 2, 6}));
        CHECK(is_admissible(a, f));
        CHECK(f.values[0] <= 1); // value at each center stays within its radius
        CHECK(f.values[1] <= 2);
    }
    SUBCASE("zero radius gives the distance cone") {
        CHECK(extend_ball_family(a, {{{0, Rat(0)}}}) == distance_cone(a, 0));
    }
    SUBCASE("non-overlapping families are rejected") {
        try {
            extend_ball_family(a, {{{0, Rat(1)}, {1, Rat(1)}}});
            FAIL("expected NotPairwiseOverlapping");
        } catch (const Error& e) {
            CHECK(e.code() == "NotPairwiseOverlapping");
            CHECK(std::string(e.what()).find("a") != std::string::npos);
        }
    }
    SUBCASE("empty family is rejected") {
        try {
            extend_ball_family(a, {});
            FAIL("expected EmptyFamily");
        } catch (const Error& e) {
            CHECK(e.code() == "EmptyFamily");
        }
    }
}

TEST_CASE("minimize_to_extremal follows the ascending pass rule") {
    SUBCASE("two points") {
        FiniteMetricSpace two = fixtures::space_two();
        CHECK(minimize_to_extremal(two, fn({5, 5})) == fn({0, 1}));
    }
    SUBCASE("running example") {
        FiniteMetricSpace a = fixtures::space_a();
        CHECK(minimize_to_extremal(a, fn({1, 2, 6})) == fn({1, 2, 4}));
        CHECK(is_minimal(a, fn({1, 2, 4})));
        CHECK(minimize_to_extremal(a, fn({2, 1, 3})) == fn({2, 1, 3}));
    }
    SUBCASE("rejects inadmissible input") {
        CHECK_THROWS_AS(minimize_to_extremal(fixtures::space_a(), fn({0, 0, 0})), Error);
    }
}

TEST_CASE("minimize_to_extremal is idempotent, monotone and lands on minimal points") {
    std::mt19937_64 rng(8001);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 6);
        FiniteMetricSpace space = testgen::random_metric(rng, n);

        // Random admissible start: a lifted overlapping family plus padding.
        BallFamily family =
            testgen::random_overlapping_family(rng, space, 1 + static_cast<int>(rng() % n));
        ExtremalFunction f = extend_ball_family(space, family);
        for (auto& v : f.values)
            v += Rat(static_cast<long>(rng() % 5), 2);

        ExtremalFunction g = minimize_to_extremal(space, f);
        CHECK(is_minimal(space, g));
        CHECK(minimize_to_extremal(space, g) == g);
        for (int x = 0; x < n; ++x)
            CHECK(g.values[x] <= f.values[x]);
    }
}

TEST_CASE("sup distance") {
    FiniteMetricSpace a = fixtures::space_a();
    ExtremalFunction median = fn({2, 1, 3});
    CHECK(sup_distance(distance_cone(a, 0), distance_cone(a, 1)) == a.d(0, 1));
    CHECK(sup_distance(distance_cone(a, 0), median) == median.values[0]);
    CHECK(sup_distance(median, median) == 0);
    CHECK_THROWS_AS(sup_distance(median, fn({1, 2})), Error);
}

TEST_CASE("cone laws on random spaces") {
    std::mt19937_64 rng(8002);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(rng() % 6);
        FiniteMetricSpace space = testgen::random_metric(rng, n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                CHECK(sup_distance(distance_cone(space, x), distance_cone(space, y)) ==
                      space.d(x, y));

        BallFamily family = testgen::random_overlapping_family(rng, space, 2);
        ExtremalFunction f = minimize_to_extremal(space, extend_ball_family(space, family));
        for (int v = 0; v < n; ++v)
            CHECK(sup_distance(distance_cone(space, v), f) == f.values[v]);
    }
}
