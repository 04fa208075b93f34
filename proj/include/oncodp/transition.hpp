#pragma once

#include "oncodp/scenario.hpp"
#include "oncodp/state.hpp"

#include <array>
#include <cstddef>
#include <span>

namespace oncodp {

struct Outcome {
    State state;
    double probability = 0.0;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Sparse successor distribution with at most four support points, stored in
/// ascending state order with strictly positive probabilities.
class TransitionDistribution {
public:
    static constexpr std::size_t capacity = 4;

    std::span<const Outcome> outcomes() const noexcept { return {items_.data(), size_}; }
    const Outcome* begin() const noexcept { return items_.data(); }
    const Outcome* end() const noexcept { return items_.data() + size_; }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    /// Probability of `s`, 0 outside the support.
    double probability(const State& s) const noexcept;
    double total() const noexcept;

    /// Adds mass to `s`, merging with an existing support point.
    void add(const State& s, double p);

    static TransitionDistribution point_mass(const State& s);

private:
    std::array<Outcome, capacity> items_{};
    std::size_t size_ = 0;
};

/// Successor distribution of `state` under action index `action`.
///
/// Precedence of the rules:
///  1. misuse: Type 1 with h = 1 goes to (1, m, n) with certainty;
///  2. death: phi = m or tau = n freezes the whole state;
///  3. factored: h' = 1 after Type 1, otherwise unchanged; tau' = 0 in
///     remission; otherwise phi' and tau' move independently by the action's
///     increment rows, clamped to the grid.
///
/// Throws DomainError on a state outside the space or an out-of-range action.
TransitionDistribution transition_distribution(const Scenario& scenario, const State& state,
                                               std::size_t action);

} // namespace oncodp
