#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "levelea/problem.hpp"
#include "test_oracles.hpp"

using namespace levelea;

TEST_CASE("onemax error map") {
    CHECK(onemax_error(7, 7) == 0);
    CHECK(onemax_error(0, 7) == 7);
    CHECK(onemax_error(4, 7) == 3);
    CHECK_THROWS_AS(onemax_error(-1, 7), std::domain_error);
    CHECK_THROWS_AS(onemax_error(8, 7), std::domain_error);
}

TEST_CASE("deceptive error map") {
    CHECK(deceptive_error(9, 9) == 0);
    CHECK(deceptive_error(0, 9) == 1);
    CHECK(deceptive_error(8, 9) == 9);
    CHECK_THROWS_AS(deceptive_error(10, 9), std::domain_error);

    SUBCASE("bijection onto 0..n") {
        for (int n = 2; n <= 12; ++n) {
            std::vector<char> seen(n + 1, 0);
            for (int c = 0; c <= n; ++c) {
                const int lev = deceptive_error(c, n);
                REQUIRE(lev >= 0);
                REQUIRE(lev <= n);
                REQUIRE(!seen[lev]);
                seen[lev] = 1;
            }
        }
    }
}

TEST_CASE("built-in problems") {
    const auto one = LevelProblem::onemax(5);
    CHECK(one.L() == 5);
    CHECK(one.level_of_ones(5) == 0);
    CHECK(one.error_at(3) == 3.0);
    CHECK(one.level_map_injective());
    CHECK(one.errors_strictly_increasing());

    const auto dec = LevelProblem::deceptive(5);
    CHECK(dec.level_of_ones(5) == 0);
    CHECK(dec.level_of_ones(0) == 1);
    CHECK(dec.level_of_ones(4) == 5);
    CHECK_THROWS(LevelProblem::deceptive(1));
}

TEST_CASE("initial distribution of built-ins") {
    const auto d1 = initial_distribution(LevelProblem::onemax(2));
    REQUIRE(d1.dim() == 3);
    CHECK(d1.q[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(d1.q[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d1.q[2] == doctest::Approx(0.25).epsilon(1e-14));

    const auto d2 = initial_distribution(LevelProblem::deceptive(2));
    CHECK(d2.q[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(d2.q[1] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(d2.q[2] == doctest::Approx(0.5).epsilon(1e-14));

    SUBCASE("normalization") {
        for (int n = 2; n <= 20; ++n) {
            initial_distribution(LevelProblem::onemax(n)).validate(1e-12);
            initial_distribution(LevelProblem::deceptive(n)).validate(1e-12);
        }
    }
}

TEST_CASE("initial distribution matches the brute-force average error") {
    for (int n = 2; n <= 12; ++n) {
        for (const auto& problem :
             {LevelProblem::onemax(n), LevelProblem::deceptive(n)}) {
            const auto d = initial_distribution(problem);
            double mean = 0.0;
            for (int i = 0; i <= problem.L(); ++i) mean += problem.error_at(i) * d.q[i];
            CHECK(mean ==
                  doctest::Approx(test::brute_average_error(problem)).epsilon(1e-12));
        }
    }
}

TEST_CASE("custom problems and validation") {
    CHECK_NOTHROW(LevelProblem::custom(2, {0, 1, 5}, {2, 1, 0}));
    // error_vector[0] must be zero
    CHECK_THROWS(LevelProblem::custom(2, {1, 2, 3}, {2, 1, 0}));
    // non-decreasing errors
    CHECK_THROWS(LevelProblem::custom(2, {0, 2, 1}, {2, 1, 0}));
    // level index out of range
    CHECK_THROWS(LevelProblem::custom(2, {0, 1, 2}, {3, 1, 0}));
    // wrong level map length
    CHECK_THROWS(LevelProblem::custom(2, {0, 1, 2}, {1, 0}));

    SUBCASE("json file round trip") {
        const char* path = "custom_problem_test.json";
        {
            std::ofstream out(path);
            out << R"({"n": 3, "error_vector": [0, 1, 2, 4],)"
                << R"( "level_of_ones": [3, 2, 1, 0]})";
        }
        const auto p = LevelProblem::from_json_file(path);
        CHECK(p.kind() == ProblemKind::Custom);
        CHECK(p.n() == 3);
        CHECK(p.error_at(3) == 4.0);
        CHECK(p.level_of_ones(0) == 3);
        std::remove(path);
        CHECK_THROWS(LevelProblem::from_json_file("does_not_exist.json"));
    }
}

TEST_CASE("uniform distribution") {
    const auto u = uniform_distribution(4);
    u.validate();
    CHECK(u.q[0] == doctest::Approx(0.2));
    CHECK_THROWS(uniform_distribution(-1));
}
