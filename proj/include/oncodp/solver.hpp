#pragma once

#include "oncodp/reward.hpp"
#include "oncodp/scenario.hpp"
#include "oncodp/state.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace oncodp {

/// Ordered subset of action indices, stored as a bit mask.
class ActionSet {
public:
    constexpr ActionSet() = default;
    constexpr explicit ActionSet(std::uint32_t bits) : bits_(bits) {}

    constexpr void insert(std::size_t a) noexcept { bits_ |= (std::uint32_t{1} << a); }
    constexpr bool contains(std::size_t a) const noexcept { return (bits_ >> a) & 1u; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr std::uint32_t bits() const noexcept { return bits_; }
    std::size_t size() const noexcept;
    /// Lowest and highest member; undefined on an empty set.
    std::size_t first() const noexcept;
    std::size_t last() const noexcept;
    /// Members in ascending (scenario) order.
    std::vector<std::size_t> indices() const;

    friend constexpr bool operator==(ActionSet, ActionSet) = default;

private:
    std::uint32_t bits_ = 0;
};

ActionSet action_set(std::initializer_list<std::size_t> members);

/// Indices of every value within tolerance of the maximum:
/// v >= max * (1 - tol) - tol. Throws EmptyError on empty input.
ActionSet argmax_set(std::span<const double> action_values, double tolerance);

/// The least aggressive (last in scenario order) member of a tied set.
std::size_t canonical_action(ActionSet argmax, const Scenario& scenario);

/// Result of backward induction.
///
/// Values are stored densely for t = 1..T+1, t-major, with states in
/// StateSpace order inside each slice. Per-action values, argmax sets and
/// the canonical policy cover t = 1..T.
struct Solution {
    int horizon = 0;
    StateSpace space;
    std::vector<std::string> action_names;
    double tie_tolerance = default_tie_tolerance;

    std::vector<double> values;        ///< (T+1) x |S|
    std::vector<double> action_values; ///< T x |S| x |A|
    std::vector<ActionSet> argmax;     ///< T x |S|
    std::vector<std::uint8_t> policy;  ///< T x |S|

    std::size_t action_count() const noexcept { return action_names.size(); }

    /// V_t(s), 1 <= t <= T+1.
    double value(int t, const State& s) const;
    /// Q_t(s, a), 1 <= t <= T.
    double action_value(int t, const State& s, std::size_t a) const;
    std::span<const double> action_values_at(int t, const State& s) const;
    ActionSet argmax_set(int t, const State& s) const;
    std::size_t canonical_policy(int t, const State& s) const;

    friend bool operator==(const Solution&, const Solution&) = default;

    std::size_t value_slot(int t, const State& s) const;
    std::size_t decision_slot(int t, const State& s) const;
};

/// Solves the finite-horizon problem exactly by backward induction with the
/// scenario's own rewards. Validates the scenario first.
Solution solve(const Scenario& scenario);

/// Same, with caller-supplied rewards r_t(s, a, s') and r_{T+1}(s).
Solution solve(const Scenario& scenario, const RewardModel& rewards);

} // namespace oncodp
