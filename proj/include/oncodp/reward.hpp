#pragma once

#include "oncodp/state.hpp"

#include <cstddef>
#include <functional>
#include <string_view>

namespace oncodp {

struct Scenario;

enum class IntermediateKind { None, SideEffect, Tumor };

std::string_view to_string(IntermediateKind kind);
/// Accepts "none", "side_effect", "tumor"; throws DomainError otherwise.
IntermediateKind intermediate_kind_from_string(std::string_view text);

/// Weights and exponents of the separable patient utility.
struct RewardParams {
    double c_phi = 0.5;
    double c_tau = 0.5;
    double d_phi = 2.0;
    double d_tau = 2.0;
    IntermediateKind intermediate_kind = IntermediateKind::None;
    double c_m = 0.0;

    friend bool operator==(const RewardParams&, const RewardParams&) = default;
};

/// Exponent of the per-period utility term; the intermediate rewards are
/// always quadratic regardless of d_phi / d_tau.
inline constexpr double intermediate_exponent = 2.0;

/// Side-effect utility 100 / m^d * (m^d - phi^d), in [0, 100].
double side_effect_utility(int phi, double d, int m);

/// Tumor utility 100 / n^d * (n^d - tau^d), in [0, 100].
double tumor_utility(int tau, double d, int n);

/// c_phi f(phi) + c_tau g(tau). The history flag does not enter.
double terminal_reward(const State& s, const RewardParams& params, int m, int n);

/// Per-period reward collected on arrival in `next`.
double intermediate_reward(const State& next, const RewardParams& params, int m, int n);

/// General reward hooks consumed by the solver and the oracles.
///
/// `intermediate(t, s, a, s')` is the reward r_t(s, a, s') collected in
/// period t; `terminal(s)` is r_{T+1}(s).
struct RewardModel {
    std::function<double(const State&)> terminal;
    std::function<double(int t, const State& from, std::size_t action, const State& to)> intermediate;
};

/// The reward model described by the scenario's RewardParams.
RewardModel make_reward_model(const Scenario& scenario);

} // namespace oncodp
