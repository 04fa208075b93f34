#include "oncodp/errors.hpp"
#include "oncodp/oracle.hpp"
#include "oncodp/scenario_io.hpp"
#include "oncodp/transition.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace oncodp;
using namespace oncodp::oracle;

TEST_CASE("expectimax examples") {
    const auto tiny = testing::tiny_scenario();
    CHECK(std::abs(expectimax_value(tiny, {0, 0, 1}, 1) - 90.0) <= 1e-12);

    const auto base = io::preset("base");
    // terminal period: 1/2 * 75 + 1/2 * 75
    CHECK(expectimax_value(base, {0, 5, 5}, 4) == doctest::Approx(75.0).epsilon(1e-15));
    CHECK(expectimax_value(base, {0, 10, 10}, 1) == 0.0);
}

TEST_CASE("expectimax rejects bad periods and excessive depth") {
    auto sc = io::preset("base");
    CHECK_THROWS_AS(expectimax_value(sc, {0, 0, 0}, 0), DomainError);
    CHECK_THROWS_AS(expectimax_value(sc, {0, 0, 0}, 5), DomainError);
    sc.horizon = 7;
    CHECK_THROWS_AS(expectimax_value(sc, {0, 5, 5}, 1), DepthError);
    CHECK_NOTHROW(expectimax_value(sc, {0, 5, 5}, 3));
    CHECK_NOTHROW(expectimax_value(sc, {0, 5, 5}, 1, 7));
}

TEST_CASE("trajectory from a death state stays put") {
    const auto sc = io::preset("base");
    const auto sol = solve(sc);
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        const auto rec = simulate_trajectory(sc, sol, {0, 10, 3}, seed);
        REQUIRE(rec.states.size() == 4);
        CHECK(rec.actions.size() == 3);
        for (const auto& s : rec.states) CHECK(s == State{0, 10, 3});
        CHECK(rec.reward_total == terminal_reward({0, 10, 3}, sc.reward, 10, 10));
    }
    const auto inter = io::preset("inter-phi");
    const auto rec = simulate_trajectory(inter, solve(inter), {0, 10, 3}, 5);
    // three intermediate f(10) = 0 terms
    CHECK(rec.reward_total == terminal_reward({0, 10, 3}, inter.reward, 10, 10));
}

TEST_CASE("remission with no side effect is absorbing under the policy") {
    const auto sc = io::preset("base");
    const auto sol = solve(sc);
    const auto rec = simulate_trajectory(sc, sol, {1, 0, 0}, 3);
    CHECK(rec.reward_total == 100.0);
    for (auto a : rec.actions) CHECK(a == 2);
}

TEST_CASE("trajectories follow the kernel support and replay bit-identically") {
    const auto sc = io::preset("base");
    const auto sol = solve(sc);
    const auto a = simulate_trajectory(sc, sol, {0, 5, 5}, 42);
    const auto b = simulate_trajectory(sc, sol, {0, 5, 5}, 42);
    CHECK(a == b);
    CHECK(a.states.front() == State{0, 5, 5});
    for (std::size_t k = 0; k < a.actions.size(); ++k) {
        CHECK(a.actions[k] == sol.canonical_policy(static_cast<int>(k) + 1, a.states[k]));
        CHECK(transition_distribution(sc, a.states[k], a.actions[k]).probability(a.states[k + 1]) >
              0.0);
    }
}

TEST_CASE("Monte-Carlo estimate") {
    const auto sc = io::preset("base");
    const auto sol = solve(sc);

    SUBCASE("absorbing start has zero spread") {
        const auto est = monte_carlo_value(sc, sol, {0, 3, 10}, 500, 1);
        CHECK(est.std_error == 0.0);
        CHECK(est.mean == terminal_reward({0, 3, 10}, sc.reward, 10, 10));
    }
    SUBCASE("single sample") {
        const auto est = monte_carlo_value(sc, sol, {0, 5, 5}, 1, 9);
        CHECK(est.single_sample);
        CHECK(est.std_error == 0.0);
        CHECK(est.mean == simulate_trajectory(sc, sol, {0, 5, 5}, trajectory_seed(9, 0)).reward_total);
    }
    SUBCASE("consistent with the solved value") {
        const auto est = monte_carlo_value(sc, sol, {0, 5, 5}, 100000, 42);
        CHECK(est.n == 100000);
        CHECK(est.std_error > 0.0);
        CHECK(std::abs(est.mean - sol.value(1, {0, 5, 5})) <= 3.0 * est.std_error);
    }
    SUBCASE("deterministic in the master seed") {
        const auto x = monte_carlo_value(sc, sol, {0, 4, 6}, 2000, 5);
        const auto y = monte_carlo_value(sc, sol, {0, 4, 6}, 2000, 5);
        CHECK(x.mean == y.mean);
        CHECK(x.std_error == y.std_error);
    }
    CHECK_THROWS_AS(monte_carlo_value(sc, sol, {0, 5, 5}, 0, 1), DomainError);
}

TEST_CASE("sub-seeds are distinct") {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 1000; ++i) seeds.push_back(trajectory_seed(7, i));
    std::sort(seeds.begin(), seeds.end());
    CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
}
