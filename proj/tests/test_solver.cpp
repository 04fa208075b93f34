#include "oncodp/errors.hpp"
#include "oncodp/oracle.hpp"
#include "oncodp/scenario_io.hpp"
#include "oncodp/solver.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace oncodp;

namespace {

// Hand expectimax for one period on the m = n = 2 grid from (h=0, phi=0,
// tau=1), written directly from the increment rows: no misuse, death or
// remission rule fires from this state, only the phi = 0 clamp.
double hand_q(std::array<double, 3> phi_row, std::array<double, 3> tau_row) {
    const auto reward = [](int phi, int tau) {
        return 0.5 * 100.0 / 4.0 * (4.0 - phi * phi) + 0.5 * 100.0 / 4.0 * (4.0 - tau * tau);
    };
    double q = 0.0;
    for (int dphi = -1; dphi <= 1; ++dphi)
        for (int dtau = -1; dtau <= 1; ++dtau) {
            const int phi = std::clamp(0 + dphi, 0, 2);
            const int tau = std::clamp(1 + dtau, 0, 2);
            q += phi_row[static_cast<std::size_t>(dphi + 1)] *
                 tau_row[static_cast<std::size_t>(dtau + 1)] * reward(phi, tau);
        }
    return q;
}

// Frozen from hand_q with the reference increment rows.
constexpr double tiny_q_m1 = 88.75;
constexpr double tiny_q_m2 = 90.0;
constexpr double tiny_q_m3 = 61.25;

} // namespace

TEST_CASE("hand oracle reproduces the frozen tiny-instance action values") {
    CHECK(std::abs(hand_q({0.0, 0.4, 0.6}, {0.7, 0.3, 0.0}) - tiny_q_m1) <= 1e-12);
    CHECK(std::abs(hand_q({0.0, 0.6, 0.4}, {0.6, 0.4, 0.0}) - tiny_q_m2) <= 1e-12);
    CHECK(std::abs(hand_q({0.6, 0.4, 0.0}, {0.0, 0.3, 0.7}) - tiny_q_m3) <= 1e-12);
}

TEST_CASE("tiny instance: one period on a 3x3 grid") {
    const auto sc = testing::tiny_scenario();
    const auto sol = solve(sc);
    const State s{0, 0, 1};
    CHECK(std::abs(sol.value(1, s) - 90.0) <= 1e-12);
    CHECK(std::abs(sol.action_value(1, s, 0) - tiny_q_m1) <= 1e-12);
    CHECK(std::abs(sol.action_value(1, s, 1) - tiny_q_m2) <= 1e-12);
    CHECK(std::abs(sol.action_value(1, s, 2) - tiny_q_m3) <= 1e-12);
    CHECK(sol.canonical_policy(1, s) == 1);
    CHECK(sol.argmax_set(1, s) == action_set({1}));
}

TEST_CASE("argmax_set") {
    const std::vector<double> near{10.0, 10.0 + 1e-12, 5.0};
    CHECK(argmax_set(near, 1e-9) == action_set({0, 1}));
    const std::vector<double> strict{1.0, 2.0, 3.0};
    CHECK(argmax_set(strict, 1e-9) == action_set({2}));
    const std::vector<double> tie{7.0, 7.0, 7.0};
    CHECK(argmax_set(tie, 0.0) == action_set({0, 1, 2}));
    const std::vector<double> negative{-3.0, -2.0};
    CHECK(argmax_set(negative, 0.0) == action_set({1}));
    CHECK_THROWS_AS(argmax_set(std::vector<double>{}, 1e-9), EmptyError);
}

TEST_CASE("canonical action is the least aggressive tied action") {
    const auto base = io::preset("base");
    const auto four = io::preset("table5-four-actions");
    CHECK(canonical_action(action_set({0, 1}), base) == 1);
    CHECK(canonical_action(action_set({2}), base) == 2);
    CHECK(canonical_action(action_set({0, 1, 2, 3}), four) == 3);
    CHECK_THROWS_AS(canonical_action(ActionSet{}, base), EmptyError);
}

TEST_CASE("ActionSet basics") {
    const auto s = action_set({1, 3, 4});
    CHECK(s.size() == 3);
    CHECK(s.first() == 1);
    CHECK(s.last() == 4);
    CHECK(s.indices() == std::vector<std::size_t>{1, 3, 4});
    CHECK_FALSE(s.contains(2));
}

TEST_CASE("solution layout and boundary condition") {
    const auto sc = io::preset("base");
    const auto sol = solve(sc);
    CHECK(sol.values.size() == 4 * sc.space().size());
    CHECK(sol.policy.size() == 3 * sc.space().size());
    for (std::size_t i = 0; i < sc.space().size(); ++i) {
        const State s = sc.space().at(i);
        CHECK(sol.value(4, s) == terminal_reward(s, sc.reward, sc.m, sc.n));
    }
    CHECK_THROWS_AS(sol.value(5, {0, 0, 0}), DomainError);
    CHECK_THROWS_AS(sol.canonical_policy(4, {0, 0, 0}), DomainError);
    CHECK_THROWS_AS(sol.value(1, {0, 0, 11}), DomainError);
}

TEST_CASE("solution invariants on every preset") {
    for (const auto& name : io::preset_names()) {
        CAPTURE(name);
        const auto sc = io::preset(name);
        const auto sol = solve(sc);
        const auto space = sc.space();
        const bool has_intermediate = sc.reward.intermediate_kind != IntermediateKind::None;
        for (int t = 1; t <= sc.horizon; ++t) {
            for (std::size_t i = 0; i < space.size(); ++i) {
                const State s = space.at(i);
                const auto set = sol.argmax_set(t, s);
                REQUIRE_FALSE(set.empty());
                CHECK(set.contains(sol.canonical_policy(t, s)));
                CHECK(sol.canonical_policy(t, s) == set.last());
                const double v = sol.value(t, s);
                for (std::size_t a = 0; a < sc.action_count(); ++a) {
                    const double q = sol.action_value(t, s, a);
                    CHECK(q <= v);
                    CHECK(set.contains(a) == (q >= v * (1.0 - 1e-9) - 1e-9));
                }
                // bounds
                CHECK(v >= 0.0);
                if (has_intermediate)
                    CHECK(v <= 100.0 + (sc.horizon - t + 1) * sc.reward.c_m * 100.0 + 1e-9);
                else
                    CHECK(v <= 100.0 + 1e-9);
                // monotone in phi and tau
                if (s.phi < sc.m) CHECK(sol.value(t, {s.h, s.phi + 1, s.tau}) <= v + 1e-9);
                if (s.tau < sc.n) CHECK(sol.value(t, {s.h, s.phi, s.tau + 1}) <= v + 1e-9);
            }
        }
    }
}

TEST_CASE("solving is deterministic") {
    const auto sc = io::preset("table5-four-actions");
    const auto a = solve(sc);
    const auto b = solve(sc);
    CHECK(a == b);
}

TEST_CASE("argmax sets are invariant under positive affine reward maps") {
    for (const auto& name : {"base", "inter-phi", "inter-tau", "table5-four-actions"}) {
        CAPTURE(name);
        const auto sc = io::preset(name);
        const auto plain = make_reward_model(sc);
        RewardModel mapped;
        mapped.terminal = [&](const State& s) { return 2.5 * plain.terminal(s) + 10.0; };
        mapped.intermediate = [&](int t, const State& s, std::size_t a, const State& n) {
            return 2.5 * plain.intermediate(t, s, a, n) + 10.0;
        };
        const auto x = solve(sc);
        const auto y = solve(sc, mapped);
        CHECK(x.argmax == y.argmax);
        CHECK(x.policy == y.policy);
    }
}

TEST_CASE("solver agrees with the expectimax oracle on random scenarios") {
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 40; ++trial) {
        const auto sc = testing::random_scenario(gen);
        const auto sol = solve(sc);
        for (int t = 1; t <= sc.horizon + 1; ++t)
            for (std::size_t i = 0; i < sc.space().size(); ++i) {
                const State s = sc.space().at(i);
                CHECK(std::abs(oracle::expectimax_value(sc, s, t) - sol.value(t, s)) <= 1e-9);
            }
    }
}

TEST_CASE("general reward signature: action-dependent treatment cost") {
    const auto sc = io::preset("base");
    auto rewards = make_reward_model(sc);
    rewards.intermediate = [](int t, const State&, std::size_t a, const State&) {
        return a == 2 ? 0.0 : -1.5 * t;
    };
    const auto sol = solve(sc, rewards);
    for (std::size_t i = 0; i < sc.space().size(); i += 7) {
        const State s = sc.space().at(i);
        CHECK(std::abs(oracle::expectimax_value(sc, rewards, s, 1) - sol.value(1, s)) <= 1e-9);
    }
}

TEST_CASE("solve propagates validation errors") {
    auto sc = io::preset("base");
    sc.actions[2].tau_row = {0.0, 0.3, 0.8};
    CHECK_THROWS_AS(solve(sc), RowSumError);
}
