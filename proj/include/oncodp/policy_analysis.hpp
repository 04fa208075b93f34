#pragma once

#include "oncodp/scenario.hpp"
#include "oncodp/solver.hpp"
#include "oncodp/state.hpp"

#include <json.hpp>

#include <cstddef>
#include <vector>

namespace oncodp::analysis {

/// Canonical action count per action over the (phi, tau) grid at (t, h).
/// With `exclude_absorbing`, states with phi = m, tau = n or tau = 0 are
/// skipped.
std::vector<std::size_t> action_proportions(const Solution& solution, int t, int h,
                                            bool exclude_absorbing);

struct PolicyChange {
    int t = 0;
    State state;
    std::size_t action_a = 0;
    std::size_t action_b = 0;

    friend bool operator==(const PolicyChange&, const PolicyChange&) = default;
};

/// Every (t, s) where the canonical actions differ, ordered by t then state
/// index. Throws ShapeError when horizon, state space or action count differ.
std::vector<PolicyChange> policy_diff(const Solution& a, const Solution& b);

struct DecisionPoint {
    int t = 0;
    State state;

    friend bool operator==(const DecisionPoint&, const DecisionPoint&) = default;
};

/// (t, s) whose argmax set is not a contiguous run in the scenario's action
/// order.
std::vector<DecisionPoint> contiguity_check(const Solution& solution, const Scenario& scenario);

/// One (t, h) panel of the policy: rows are phi, columns tau.
struct PolicyGrid {
    int t = 0;
    int h = 0;
    int m = 0;
    int n = 0;
    std::vector<std::vector<std::size_t>> cells;   ///< canonical action
    std::vector<std::vector<ActionSet>> argmax;    ///< full tie set

    std::size_t rows() const noexcept { return cells.size(); }
    std::size_t cols() const noexcept { return cells.empty() ? 0 : cells.front().size(); }
};

/// Throws DomainError for t outside 1..T or h outside {0, 1}.
PolicyGrid export_policy_grid(const Solution& solution, int t, int h);

nlohmann::ordered_json policy_grid_to_json(const PolicyGrid& grid, const Solution& solution);

} // namespace oncodp::analysis
