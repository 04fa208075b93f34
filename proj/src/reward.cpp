#include "oncodp/reward.hpp"

#include "oncodp/errors.hpp"
#include "oncodp/modality.hpp"
#include "oncodp/scenario.hpp"

#include <cmath>
#include <string>

namespace oncodp {

std::string to_string(const State& s) {
    return "(" + std::to_string(s.h) + "," + std::to_string(s.phi) + "," + std::to_string(s.tau) +
           ")";
}

void StateSpace::require(const State& s) const {
    if (s.h != 0 && s.h != 1)
        throw DomainError("history flag h=" + std::to_string(s.h) + " is not 0 or 1");
    if (s.phi < 0 || s.phi > m_)
        throw DomainError("side effect phi=" + std::to_string(s.phi) + " outside [0, " +
                          std::to_string(m_) + "]");
    if (s.tau < 0 || s.tau > n_)
        throw DomainError("tumor level tau=" + std::to_string(s.tau) + " outside [0, " +
                          std::to_string(n_) + "]");
}

std::string_view to_string(ModalityKind kind) {
    switch (kind) {
    case ModalityKind::Type1: return "type1";
    case ModalityKind::Type2: return "type2";
    case ModalityKind::Type3: return "type3";
    }
    return "type2";
}

ModalityKind modality_kind_from_string(std::string_view text) {
    if (text == "type1") return ModalityKind::Type1;
    if (text == "type2") return ModalityKind::Type2;
    if (text == "type3") return ModalityKind::Type3;
    throw DomainError("unknown modality kind '" + std::string(text) + "'");
}

std::string_view to_string(IntermediateKind kind) {
    switch (kind) {
    case IntermediateKind::None: return "none";
    case IntermediateKind::SideEffect: return "side_effect";
    case IntermediateKind::Tumor: return "tumor";
    }
    return "none";
}

IntermediateKind intermediate_kind_from_string(std::string_view text) {
    if (text == "none") return IntermediateKind::None;
    if (text == "side_effect") return IntermediateKind::SideEffect;
    if (text == "tumor") return IntermediateKind::Tumor;
    throw DomainError("unknown intermediate reward kind '" + std::string(text) + "'");
}

namespace {

double normalized_utility(int level, double d, int bound, const char* what) {
    if (bound < 1) throw DomainError(std::string(what) + " bound must be positive");
    if (level < 0 || level > bound)
        throw DomainError(std::string(what) + " level " + std::to_string(level) + " outside [0, " +
                          std::to_string(bound) + "]");
    const double top = std::pow(static_cast<double>(bound), d);
    return 100.0 / top * (top - std::pow(static_cast<double>(level), d));
}

} // namespace

double side_effect_utility(int phi, double d, int m) {
    return normalized_utility(phi, d, m, "side effect");
}

double tumor_utility(int tau, double d, int n) { return normalized_utility(tau, d, n, "tumor"); }

double terminal_reward(const State& s, const RewardParams& params, int m, int n) {
    StateSpace{m, n}.require(s);
    return params.c_phi * side_effect_utility(s.phi, params.d_phi, m) +
           params.c_tau * tumor_utility(s.tau, params.d_tau, n);
}

double intermediate_reward(const State& next, const RewardParams& params, int m, int n) {
    StateSpace{m, n}.require(next);
    switch (params.intermediate_kind) {
    case IntermediateKind::None: return 0.0;
    case IntermediateKind::SideEffect:
        return params.c_m * side_effect_utility(next.phi, intermediate_exponent, m);
    case IntermediateKind::Tumor:
        return params.c_m * tumor_utility(next.tau, intermediate_exponent, n);
    }
    return 0.0;
}

RewardModel make_reward_model(const Scenario& scenario) {
    const RewardParams params = scenario.reward;
    const int m = scenario.m;
    const int n = scenario.n;
    RewardModel model;
    model.terminal = [=](const State& s) { return terminal_reward(s, params, m, n); };
    model.intermediate = [=](int, const State&, std::size_t, const State& next) {
        return intermediate_reward(next, params, m, n);
    };
    return model;
}

} // namespace oncodp
