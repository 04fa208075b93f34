#pragma once

#include "oncodp/modality.hpp"
#include "oncodp/reward.hpp"
#include "oncodp/state.hpp"

#include <cstddef>
#include <vector>

namespace oncodp {

inline constexpr double default_tie_tolerance = 1e-9;
inline constexpr double row_sum_tolerance = 1e-12;
/// Argmax sets are stored as bit masks.
inline constexpr std::size_t max_actions = 32;

/// A complete problem instance.
///
/// `actions` is ordered from most to least aggressive: the single Type 1
/// modality first, then the Type 2 modalities, surveillance last.
struct Scenario {
    int horizon = 3;
    int m = 10;
    int n = 10;
    std::vector<ModalitySpec> actions;
    RewardParams reward;
    double tie_tolerance = default_tie_tolerance;

    /// Type 1 may be administered once; a second use is the misuse rule.
    static constexpr int max_type1_uses = 1;

    StateSpace space() const noexcept { return StateSpace{m, n}; }
    std::size_t action_count() const noexcept { return actions.size(); }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Checks every structural and probabilistic invariant of a scenario.
///
/// Throws RowSumError, SignError or StructureError with the document path of
/// the offending field. Returns the scenario unchanged on success.
const Scenario& validate_scenario(const Scenario& scenario);

} // namespace oncodp
