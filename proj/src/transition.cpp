#include "oncodp/transition.hpp"

#include "oncodp/errors.hpp"

#include <algorithm>
#include <string>

namespace oncodp {

double TransitionDistribution::probability(const State& s) const noexcept {
    for (const auto& o : *this)
        if (o.state == s) return o.probability;
    return 0.0;
}

double TransitionDistribution::total() const noexcept {
    double sum = 0.0;
    for (const auto& o : *this) sum += o.probability;
    return sum;
}

void TransitionDistribution::add(const State& s, double p) {
    if (p <= 0.0) return;
    auto* first = items_.data();
    auto* last = first + size_;
    auto* pos = std::lower_bound(first, last, s,
                                 [](const Outcome& o, const State& key) { return o.state < key; });
    if (pos != last && pos->state == s) {
        pos->probability += p;
        return;
    }
    if (size_ == capacity) throw DomainError("transition support exceeds four states");
    std::move_backward(pos, last, last + 1);
    *pos = Outcome{s, p};
    ++size_;
}

TransitionDistribution TransitionDistribution::point_mass(const State& s) {
    TransitionDistribution d;
    d.add(s, 1.0);
    return d;
}

TransitionDistribution transition_distribution(const Scenario& scenario, const State& state,
                                               std::size_t action) {
    const auto space = scenario.space();
    space.require(state);
    if (action >= scenario.actions.size())
        throw DomainError("action index " + std::to_string(action) + " outside [0, " +
                          std::to_string(scenario.actions.size()) + ")");
    const auto& spec = scenario.actions[action];

    if (state.h == 1 && spec.is_type1()) return TransitionDistribution::point_mass(space.worst());
    if (space.is_death(state)) return TransitionDistribution::point_mass(state);

    const int next_h = spec.is_type1() ? 1 : state.h;
    const auto phi_moves = spec.phi_row.as_array();
    const auto tau_moves = spec.tau_row.as_array();

    TransitionDistribution dist;
    for (int dphi = -1; dphi <= 1; ++dphi) {
        const double p_phi = phi_moves[static_cast<std::size_t>(dphi + 1)];
        if (p_phi == 0.0) continue;
        const int next_phi = std::clamp(state.phi + dphi, 0, space.m());
        if (state.tau == 0) {
            dist.add(State{next_h, next_phi, 0}, p_phi);
            continue;
        }
        for (int dtau = -1; dtau <= 1; ++dtau) {
            const double p_tau = tau_moves[static_cast<std::size_t>(dtau + 1)];
            if (p_tau == 0.0) continue;
            const int next_tau = std::clamp(state.tau + dtau, 0, space.n());
            dist.add(State{next_h, next_phi, next_tau}, p_phi * p_tau);
        }
    }
    return dist;
}

} // namespace oncodp
