#include "oncodp/oracle.hpp"

#include "oncodp/errors.hpp"
#include "oncodp/transition.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace oncodp::oracle {

namespace {

double expectimax(const Scenario& sc, const RewardModel& rewards, const State& s, int t) {
    if (t == sc.horizon + 1) return rewards.terminal(s);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < sc.action_count(); ++a) {
        double v = 0.0;
        for (const auto& o : transition_distribution(sc, s, a))
            v += o.probability * (rewards.intermediate(t, s, a, o.state) +
                                  expectimax(sc, rewards, o.state, t + 1));
        if (v > best) best = v;
    }
    return best;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

State sample(const TransitionDistribution& dist, std::mt19937_64& gen) {
    const double u = uniform01(gen);
    double cumulative = 0.0;
    for (const auto& o : dist) {
        cumulative += o.probability;
        if (u < cumulative) return o.state;
    }
    return dist.outcomes().back().state;
}

} // namespace

double expectimax_value(const Scenario& scenario, const State& state, int t, int max_depth) {
    return expectimax_value(scenario, make_reward_model(scenario), state, t, max_depth);
}

double expectimax_value(const Scenario& scenario, const RewardModel& rewards, const State& state,
                        int t, int max_depth) {
    validate_scenario(scenario);
    scenario.space().require(state);
    if (t < 1 || t > scenario.horizon + 1)
        throw DomainError("period t=" + std::to_string(t) + " outside [1, " +
                          std::to_string(scenario.horizon + 1) + "]");
    const int depth = scenario.horizon + 1 - t;
    if (depth > max_depth)
        throw DepthError("expectimax depth " + std::to_string(depth) + " exceeds budget " +
                         std::to_string(max_depth));
    return expectimax(scenario, rewards, state, t);
}

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64(master_seed ^ splitmix64(index + 1));
}

TrajectoryRecord simulate_trajectory(const Scenario& scenario, const Solution& policy,
                                     const State& start, std::uint64_t seed) {
    scenario.space().require(start);
    if (policy.horizon != scenario.horizon || !(policy.space == scenario.space()) ||
        policy.action_count() != scenario.action_count())
        throw ShapeError("policy does not match the scenario");

    const auto rewards = make_reward_model(scenario);
    std::mt19937_64 gen(seed);

    TrajectoryRecord rec;
    rec.seed = seed;
    rec.states.reserve(static_cast<std::size_t>(scenario.horizon) + 1);
    rec.actions.reserve(static_cast<std::size_t>(scenario.horizon));
    rec.states.push_back(start);

    State s = start;
    double total = 0.0;
    for (int t = 1; t <= scenario.horizon; ++t) {
        const auto a = policy.canonical_policy(t, s);
        const State next = sample(transition_distribution(scenario, s, a), gen);
        total += rewards.intermediate(t, s, a, next);
        rec.actions.push_back(a);
        rec.states.push_back(next);
        s = next;
    }
    rec.reward_total = total + rewards.terminal(s);
    return rec;
}

EstimateWithError monte_carlo_value(const Scenario& scenario, const Solution& policy,
                                    const State& start, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw DomainError("Monte-Carlo sample count must be at least 1");

    std::vector<double> totals(n);
    for (std::size_t i = 0; i < n; ++i)
        totals[i] = simulate_trajectory(scenario, policy, start, trajectory_seed(seed, i))
                        .reward_total;

    // Shifted two-pass moments in index order: a degenerate sample gives
    // exactly zero variance and its own value as the mean.
    const double shift = totals.front();
    double sum = 0.0;
    for (double x : totals) sum += x - shift;
    const double mean_shifted = sum / static_cast<double>(n);

    EstimateWithError est;
    est.n = n;
    est.mean = shift + mean_shifted;
    if (n == 1) {
        est.single_sample = true;
        return est;
    }
    double ss = 0.0;
    for (double x : totals) {
        const double d = (x - shift) - mean_shifted;
        ss += d * d;
    }
    const double variance = ss / static_cast<double>(n - 1);
    est.std_error = std::sqrt(variance / static_cast<double>(n));
    return est;
}

} // namespace oncodp::oracle
