#pragma once

#include "oncodp/reward.hpp"
#include "oncodp/scenario.hpp"
#include "oncodp/solver.hpp"
#include "oncodp/state.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace oncodp::oracle {

/// Memoization-free recursion depth allowed by default (periods to go).
inline constexpr int default_max_depth = 6;

/// Plain recursive expectimax of the objective from period t in state s:
/// max_a sum_s' P(s'|s,a) (r_t(s,a,s') + value(s', t+1)), terminal reward at
/// t = T+1. Independent of the table-based solver.
///
/// Throws DepthError when T + 1 - t exceeds `max_depth`, DomainError on a bad
/// state or period.
double expectimax_value(const Scenario& scenario, const State& state, int t,
                        int max_depth = default_max_depth);
double expectimax_value(const Scenario& scenario, const RewardModel& rewards, const State& state,
                        int t, int max_depth = default_max_depth);

struct TrajectoryRecord {
    std::uint64_t seed = 0;
    std::vector<State> states;        ///< T+1 entries, states[0] is the start
    std::vector<std::size_t> actions; ///< T entries
    double reward_total = 0.0;        ///< intermediate sum + terminal

    friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;
};

struct EstimateWithError {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
    /// n == 1: the standard error is undefined and reported as 0.
    bool single_sample = false;
};

/// Samples one patient course under the solution's canonical policy.
/// Deterministic in `seed`.
TrajectoryRecord simulate_trajectory(const Scenario& scenario, const Solution& policy,
                                     const State& start, std::uint64_t seed);

/// Seed of the i-th trajectory drawn from `master_seed`.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index);

/// Mean and standard error of reward_total over n trajectories seeded by
/// trajectory_seed(seed, i).
EstimateWithError monte_carlo_value(const Scenario& scenario, const Solution& policy,
                                    const State& start, std::size_t n, std::uint64_t seed);

} // namespace oncodp::oracle
