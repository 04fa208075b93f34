#include "oncodp/errors.hpp"
#include "oncodp/scenario_io.hpp"

#include <filesystem>

namespace oncodp::io {

namespace {

ModalitySpec modality(std::string name, ModalityKind kind, IncrementRow phi, IncrementRow tau) {
    return ModalitySpec{std::move(name), kind, phi, tau};
}

// Increment rows of the reference three-modality problem.
ModalitySpec type1() {
    return modality("M1", ModalityKind::Type1, {0.0, 0.4, 0.6}, {0.7, 0.3, 0.0});
}
ModalitySpec type2() {
    return modality("M2", ModalityKind::Type2, {0.0, 0.6, 0.4}, {0.6, 0.4, 0.0});
}
ModalitySpec type3() {
    return modality("M3", ModalityKind::Type3, {0.6, 0.4, 0.0}, {0.0, 0.3, 0.7});
}

Scenario base_scenario() {
    Scenario sc;
    sc.horizon = 3;
    sc.m = 10;
    sc.n = 10;
    sc.actions = {type1(), type2(), type3()};
    sc.reward = RewardParams{0.5, 0.5, 2.0, 2.0, IntermediateKind::None, 0.0};
    return sc;
}

Scenario build(std::string_view name) {
    Scenario sc = base_scenario();
    if (name == "base") return sc;
    if (name == "d15") {
        sc.reward.d_phi = sc.reward.d_tau = 1.5;
    } else if (name == "d3") {
        sc.reward.d_phi = sc.reward.d_tau = 3.0;
    } else if (name == "c33") {
        sc.reward.c_phi = 1.0 / 3.0;
        sc.reward.c_tau = 2.0 / 3.0;
    } else if (name == "c67") {
        sc.reward.c_phi = 2.0 / 3.0;
        sc.reward.c_tau = 1.0 / 3.0;
    } else if (name == "inter-phi") {
        sc.reward.intermediate_kind = IntermediateKind::SideEffect;
        sc.reward.c_m = 0.25;
    } else if (name == "inter-tau") {
        sc.reward.intermediate_kind = IntermediateKind::Tumor;
        sc.reward.c_m = 0.25;
    } else if (name == "table2-m1-strong") {
        sc.actions[0].tau_row = {0.8, 0.2, 0.0};
    } else if (name == "table3-m2-safe") {
        sc.actions[1].phi_row = {0.0, 0.7, 0.3};
    } else if (name == "table4-m3-slow") {
        sc.actions[2].tau_row = {0.0, 0.7, 0.3};
    } else if (name == "table5-four-actions") {
        sc.actions = {type1(),
                      modality("M2a", ModalityKind::Type2, {0.0, 0.5, 0.5}, {0.6, 0.4, 0.0}),
                      modality("M2b", ModalityKind::Type2, {0.0, 0.6, 0.4}, {0.5, 0.5, 0.0}),
                      type3()};
    } else {
        throw UnknownPreset(std::string(name));
    }
    return sc;
}

} // namespace

const std::vector<PresetInfo>& preset_catalog() {
    static const std::vector<PresetInfo> catalog = {
        {"base", "Reference problem: one modality of each type, quadratic terminal reward, "
                 "equal weights, no intermediate reward"},
        {"d15", "Terminal reward exponent d = 3/2 for both side effect and tumor"},
        {"d3", "Terminal reward exponent d = 3 for both side effect and tumor"},
        {"c33", "Side-effect weight c_phi = 1/3, tumor weight c_tau = 2/3"},
        {"c67", "Side-effect weight c_phi = 2/3, tumor weight c_tau = 1/3"},
        {"inter-phi", "Adds a per-period side-effect reward 1/4 f(phi; 2)"},
        {"inter-tau", "Adds a per-period tumor reward 1/4 g(tau; 2)"},
        {"table2-m1-strong", "M1 reduces tumor progression with probability 0.8"},
        {"table3-m2-safe", "M2 raises side effect with probability 0.3"},
        {"table4-m3-slow", "Surveillance raises tumor progression with probability 0.3"},
        {"table5-four-actions", "Two Type 2 modalities ordered M1, M2a, M2b, M3"},
    };
    return catalog;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& p : preset_catalog()) names.push_back(p.name);
    return names;
}

ScenarioDocument preset_document(std::string_view name) {
    for (const auto& p : preset_catalog()) {
        if (p.name != name) continue;
        ScenarioDocument doc;
        doc.metadata = Metadata{p.name, p.description};
        doc.scenario = build(name);
        return doc;
    }
    throw UnknownPreset(std::string(name));
}

Scenario preset(std::string_view name) { return preset_document(name).scenario; }

ScenarioDocument load_preset(std::string_view name, const std::optional<std::string>& dir) {
    if (!dir) return preset_document(name);
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw UnknownPreset(std::string(name));
    const auto path = std::filesystem::path(*dir) / (std::string(name) + ".json");
    if (!std::filesystem::exists(path)) throw UnknownPreset(std::string(name));
    return parse_scenario_document(read_file(path.string()));
}

} // namespace oncodp::io
