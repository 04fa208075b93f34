#include "oncodp/scenario.hpp"

#include "oncodp/errors.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace oncodp {

namespace {

std::string action_path(std::size_t i) { return "/scenario/actions/" + std::to_string(i); }

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void check_row(const IncrementRow& row, const std::string& path, const std::string& label) {
    const auto entries = row.as_array();
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (!std::isfinite(entries[k]) || entries[k] < 0.0)
            throw SignError(label + " entry " + std::to_string(k) + " is " + fmt(entries[k]) +
                                "; probabilities must be nonnegative",
                            path + "/" + std::to_string(k));
    }
    const double sum = row.sum();
    if (std::abs(sum - 1.0) > row_sum_tolerance)
        throw RowSumError(label + " sums to " + fmt(sum) + ", expected 1", path);
}

void require_zero(double p, const std::string& path, const std::string& what) {
    if (p != 0.0) throw StructureError(what + " must be 0 (one-increment model), got " + fmt(p), path);
}

int kind_rank(ModalityKind k) {
    switch (k) {
    case ModalityKind::Type1: return 0;
    case ModalityKind::Type2: return 1;
    case ModalityKind::Type3: return 2;
    }
    return 1;
}

} // namespace

const Scenario& validate_scenario(const Scenario& sc) {
    if (sc.horizon < 1)
        throw StructureError("horizon must be a positive integer", "/scenario/horizon");
    if (sc.m < 1) throw StructureError("m must be a positive integer", "/scenario/m");
    if (sc.n < 1) throw StructureError("n must be a positive integer", "/scenario/n");
    if (!std::isfinite(sc.tie_tolerance) || sc.tie_tolerance < 0.0)
        throw StructureError("tie_tolerance must be finite and nonnegative",
                             "/options/tie_tolerance");

    const auto& r = sc.reward;
    if (!std::isfinite(r.c_phi) || r.c_phi < 0.0)
        throw StructureError("c_phi must be nonnegative", "/scenario/reward/c_phi");
    if (!std::isfinite(r.c_tau) || r.c_tau < 0.0)
        throw StructureError("c_tau must be nonnegative", "/scenario/reward/c_tau");
    if (!std::isfinite(r.d_phi) || r.d_phi < 1.0)
        throw StructureError("d_phi must be >= 1, got " + fmt(r.d_phi), "/scenario/reward/d_phi");
    if (!std::isfinite(r.d_tau) || r.d_tau < 1.0)
        throw StructureError("d_tau must be >= 1, got " + fmt(r.d_tau), "/scenario/reward/d_tau");
    if (!std::isfinite(r.c_m) || r.c_m < 0.0)
        throw StructureError("c_m must be nonnegative", "/scenario/reward/intermediate/c_m");

    if (sc.actions.size() > max_actions)
        throw StructureError("at most " + std::to_string(max_actions) + " actions are supported",
                             "/scenario/actions");

    int type1 = 0, type2 = 0, type3 = 0;
    for (std::size_t i = 0; i < sc.actions.size(); ++i) {
        const auto& a = sc.actions[i];
        const auto path = action_path(i);
        const auto label = "action '" + a.name + "'";
        if (a.name.empty()) throw StructureError("action name must not be empty", path + "/name");
        check_row(a.phi_row, path + "/phi_row", label + " phi_row");
        check_row(a.tau_row, path + "/tau_row", label + " tau_row");
        if (a.kind == ModalityKind::Type3) {
            ++type3;
            require_zero(a.phi_row.up, path + "/phi_row/2", label + " side-effect increase");
            require_zero(a.tau_row.down, path + "/tau_row/0", label + " tumor decrease");
        } else {
            a.kind == ModalityKind::Type1 ? ++type1 : ++type2;
            require_zero(a.phi_row.down, path + "/phi_row/0", label + " side-effect decrease");
            require_zero(a.tau_row.up, path + "/tau_row/2", label + " tumor increase");
        }
        for (std::size_t j = 0; j < i; ++j)
            if (sc.actions[j].name == a.name)
                throw StructureError("duplicate action name '" + a.name + "'", path + "/name");
        if (i > 0 && kind_rank(sc.actions[i - 1].kind) > kind_rank(a.kind))
            throw StructureError(label + " is out of order; actions run Type 1, Type 2..., Type 3",
                                 path + "/kind");
    }
    if (type1 != 1)
        throw StructureError("exactly one type1 action required, found " + std::to_string(type1),
                             "/scenario/actions");
    if (type3 != 1)
        throw StructureError("exactly one type3 action required, found " + std::to_string(type3),
                             "/scenario/actions");
    if (type2 < 1)
        throw StructureError("at least one type2 action required", "/scenario/actions");

    // With several Type 2 modalities the order must rank them by risk and
    // reward: side-effect increase and tumor decrease non-increasing.
    if (type2 > 1) {
        for (std::size_t i = 1; i < sc.actions.size(); ++i) {
            const auto& prev = sc.actions[i - 1];
            const auto& cur = sc.actions[i];
            if (cur.phi_row.up > prev.phi_row.up)
                throw StructureError("action '" + cur.name + "' has higher side-effect risk than '" +
                                         prev.name + "' which precedes it",
                                     action_path(i) + "/phi_row/2");
            if (cur.tau_row.down > prev.tau_row.down)
                throw StructureError("action '" + cur.name + "' reduces tumor more often than '" +
                                         prev.name + "' which precedes it",
                                     action_path(i) + "/tau_row/0");
        }
    }
    return sc;
}

} // namespace oncodp
