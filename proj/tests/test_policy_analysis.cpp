#include "oncodp/errors.hpp"
#include "oncodp/policy_analysis.hpp"
#include "oncodp/scenario_io.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <numeric>

using namespace oncodp;
using namespace oncodp::analysis;

TEST_CASE("proportions partition the grid") {
    const auto sol = solve(io::preset("base"));
    for (int t = 1; t <= 3; ++t)
        for (int h = 0; h <= 1; ++h) {
            const auto all = action_proportions(sol, t, h, false);
            CHECK(std::accumulate(all.begin(), all.end(), std::size_t{0}) == 121);
            const auto inner = action_proportions(sol, t, h, true);
            // 10 x 9 states with phi < 10 and 0 < tau < 10
            CHECK(std::accumulate(inner.begin(), inner.end(), std::size_t{0}) == 90);
        }
    CHECK_THROWS_AS(action_proportions(sol, 0, 0, true), DomainError);
    CHECK_THROWS_AS(action_proportions(sol, 1, 2, true), DomainError);
}

TEST_CASE("proportions do not depend on state enumeration order") {
    const auto sol = solve(io::preset("c67"));
    // Recount by walking the states in reverse index order.
    for (int t = 1; t <= 3; ++t) {
        std::vector<std::size_t> counts(3, 0);
        for (std::size_t i = sol.space.size(); i-- > 0;) {
            const State s = sol.space.at(i);
            if (s.h == 1 && !sol.space.is_absorbing(s)) ++counts[sol.canonical_policy(t, s)];
        }
        CHECK(counts == action_proportions(sol, t, 1, true));
    }
}

TEST_CASE("safer M2 is used more, slower tumor growth means more surveillance") {
    const auto base = solve(io::preset("base"));
    const auto safe = solve(io::preset("table3-m2-safe"));
    const auto slow = solve(io::preset("table4-m3-slow"));
    for (int t = 1; t <= 3; ++t) {
        CHECK(action_proportions(safe, t, 0, true)[1] >= action_proportions(base, t, 0, true)[1]);
        CHECK(action_proportions(slow, t, 0, true)[2] >= action_proportions(base, t, 0, true)[2]);
    }
}

TEST_CASE("policy_diff") {
    const auto base = solve(io::preset("base"));
    CHECK(policy_diff(base, base).empty());

    const auto c33 = solve(io::preset("c33"));
    const auto diff = policy_diff(base, c33);
    CHECK_FALSE(diff.empty());
    for (const auto& change : diff) CHECK(change.action_b <= change.action_a);
    for (std::size_t k = 1; k < diff.size(); ++k) {
        const auto& p = diff[k - 1];
        const auto& c = diff[k];
        CHECK((p.t < c.t || (p.t == c.t && base.space.index(p.state) < base.space.index(c.state))));
    }

    auto small = io::preset("base");
    small.m = 9;
    CHECK_THROWS_AS(policy_diff(base, solve(small)), ShapeError);
    CHECK_THROWS_AS(policy_diff(base, solve(io::preset("table5-four-actions"))), ShapeError);
}

TEST_CASE("contiguity_check") {
    const auto base_sc = io::preset("base");
    auto sol = solve(base_sc);
    CHECK(contiguity_check(sol, base_sc).empty());

    const auto four = io::preset("table5-four-actions");
    CHECK(contiguity_check(solve(four), four).empty());

    // Plant a gap {M1, M3}.
    const State s{0, 4, 4};
    sol.argmax[sol.decision_slot(2, s)] = action_set({0, 2});
    const auto v = contiguity_check(sol, base_sc);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == DecisionPoint{2, s});
}

TEST_CASE("export_policy_grid") {
    const auto sol = solve(io::preset("base"));
    const auto grid = export_policy_grid(sol, 1, 1);
    CHECK(grid.rows() == 11);
    CHECK(grid.cols() == 11);
    for (int phi = 0; phi <= 10; ++phi)
        for (int tau = 0; tau <= 10; ++tau) {
            const auto r = static_cast<std::size_t>(phi), c = static_cast<std::size_t>(tau);
            CHECK(grid.cells[r][c] == sol.canonical_policy(1, {1, phi, tau}));
            CHECK(grid.argmax[r][c] == sol.argmax_set(1, {1, phi, tau}));
            CHECK(grid.cells[r][c] != 0);
        }
    CHECK(grid.argmax[10][10].contains(0));

    const auto inter = solve(io::preset("inter-phi"));
    for (int t : {1, 2}) {
        const auto g = export_policy_grid(inter, t, 0);
        for (const auto& row : g.cells)
            for (auto a : row) CHECK(a != 0);
    }

    CHECK_THROWS_AS(export_policy_grid(sol, 4, 0), DomainError);
    CHECK_THROWS_AS(export_policy_grid(sol, 1, -1), DomainError);

    const auto j = policy_grid_to_json(grid, sol);
    CHECK(j["cells"].size() == 11);
    CHECK(j["argmax"][10][10].size() == 3);
}
