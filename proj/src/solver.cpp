#include "oncodp/solver.hpp"

#include "oncodp/errors.hpp"
#include "oncodp/transition.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace oncodp {

std::size_t ActionSet::size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }

std::size_t ActionSet::first() const noexcept {
    return static_cast<std::size_t>(std::countr_zero(bits_));
}

std::size_t ActionSet::last() const noexcept {
    return static_cast<std::size_t>(31 - std::countl_zero(bits_));
}

std::vector<std::size_t> ActionSet::indices() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < max_actions; ++a)
        if (contains(a)) out.push_back(a);
    return out;
}

ActionSet action_set(std::initializer_list<std::size_t> members) {
    ActionSet set;
    for (auto a : members) set.insert(a);
    return set;
}

ActionSet argmax_set(std::span<const double> action_values, double tolerance) {
    if (action_values.empty()) throw EmptyError("argmax of an empty list of action values");
    if (action_values.size() > max_actions)
        throw DomainError("at most " + std::to_string(max_actions) + " action values supported");
    const double best = *std::max_element(action_values.begin(), action_values.end());
    const double threshold = best * (1.0 - tolerance) - tolerance;
    ActionSet set;
    for (std::size_t a = 0; a < action_values.size(); ++a)
        if (action_values[a] >= threshold || action_values[a] == best) set.insert(a);
    return set;
}

std::size_t canonical_action(ActionSet argmax, const Scenario& scenario) {
    if (argmax.empty()) throw EmptyError("canonical action of an empty argmax set");
    const auto a = argmax.last();
    if (a >= scenario.action_count())
        throw DomainError("argmax set refers to action " + std::to_string(a) +
                          " outside the scenario");
    return a;
}

std::size_t Solution::value_slot(int t, const State& s) const {
    if (t < 1 || t > horizon + 1)
        throw DomainError("period t=" + std::to_string(t) + " outside [1, " +
                          std::to_string(horizon + 1) + "]");
    space.require(s);
    return static_cast<std::size_t>(t - 1) * space.size() + space.index(s);
}

std::size_t Solution::decision_slot(int t, const State& s) const {
    if (t < 1 || t > horizon)
        throw DomainError("decision period t=" + std::to_string(t) + " outside [1, " +
                          std::to_string(horizon) + "]");
    space.require(s);
    return static_cast<std::size_t>(t - 1) * space.size() + space.index(s);
}

double Solution::value(int t, const State& s) const { return values[value_slot(t, s)]; }

double Solution::action_value(int t, const State& s, std::size_t a) const {
    if (a >= action_count()) throw DomainError("action index out of range");
    return action_values[decision_slot(t, s) * action_count() + a];
}

std::span<const double> Solution::action_values_at(int t, const State& s) const {
    return std::span<const double>(action_values).subspan(decision_slot(t, s) * action_count(),
                                                          action_count());
}

ActionSet Solution::argmax_set(int t, const State& s) const { return argmax[decision_slot(t, s)]; }

std::size_t Solution::canonical_policy(int t, const State& s) const {
    return policy[decision_slot(t, s)];
}

Solution solve(const Scenario& scenario) { return solve(scenario, make_reward_model(scenario)); }

Solution solve(const Scenario& scenario, const RewardModel& rewards) {
    validate_scenario(scenario);

    const auto space = scenario.space();
    const std::size_t states = space.size();
    const std::size_t actions = scenario.action_count();
    const int T = scenario.horizon;

    Solution sol;
    sol.horizon = T;
    sol.space = space;
    sol.tie_tolerance = scenario.tie_tolerance;
    for (const auto& a : scenario.actions) sol.action_names.push_back(a.name);
    sol.values.assign(static_cast<std::size_t>(T + 1) * states, 0.0);
    sol.action_values.assign(static_cast<std::size_t>(T) * states * actions, 0.0);
    sol.argmax.assign(static_cast<std::size_t>(T) * states, ActionSet{});
    sol.policy.assign(static_cast<std::size_t>(T) * states, 0);

    // Kernels are stationary: build each (s, a) distribution once.
    std::vector<TransitionDistribution> kernel(states * actions);
    for (std::size_t i = 0; i < states; ++i)
        for (std::size_t a = 0; a < actions; ++a)
            kernel[i * actions + a] = transition_distribution(scenario, space.at(i), a);

    const std::size_t terminal_offset = static_cast<std::size_t>(T) * states;
    for (std::size_t i = 0; i < states; ++i)
        sol.values[terminal_offset + i] = rewards.terminal(space.at(i));

    for (int t = T; t >= 1; --t) {
        const auto next = std::span<const double>(sol.values).subspan(
            static_cast<std::size_t>(t) * states, states);
        const std::size_t slice = static_cast<std::size_t>(t - 1) * states;
        for (std::size_t i = 0; i < states; ++i) {
            const State s = space.at(i);
            double* q = sol.action_values.data() + (slice + i) * actions;
            for (std::size_t a = 0; a < actions; ++a) {
                double acc = 0.0;
                for (const auto& o : kernel[i * actions + a])
                    acc += o.probability *
                           (rewards.intermediate(t, s, a, o.state) + next[space.index(o.state)]);
                q[a] = acc;
            }
            const std::span<const double> qs(q, actions);
            const auto set = oncodp::argmax_set(qs, scenario.tie_tolerance);
            sol.values[slice + i] = *std::max_element(qs.begin(), qs.end());
            sol.argmax[slice + i] = set;
            sol.policy[slice + i] = static_cast<std::uint8_t>(canonical_action(set, scenario));
        }
    }
    return sol;
}

} // namespace oncodp
