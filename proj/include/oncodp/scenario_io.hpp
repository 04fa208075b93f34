#pragma once

#include "oncodp/scenario.hpp"
#include "oncodp/solver.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oncodp::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view schema_version = "1";

struct Metadata {
    std::string name;
    std::string description;

    friend bool operator==(const Metadata&, const Metadata&) = default;
};

struct ScenarioDocument {
    std::string schema_version{io::schema_version};
    Metadata metadata;
    Scenario scenario;

    friend bool operator==(const ScenarioDocument&, const ScenarioDocument&) = default;
};

/// Compact JSON with insertion-ordered keys and shortest round-trip numbers
/// (integral doubles print without a fraction). Equal trees give equal bytes.
std::string canonical_dump(const Json& value);

/// Parses UTF-8 text, applies defaults and validates the scenario.
/// Throws ParseError (syntax or schema, with path and line) or a
/// ValidationError subclass.
ScenarioDocument parse_scenario_document(std::string_view text);
Scenario parse_scenario(std::string_view text);

/// Reads the document object layout from an already parsed tree. `root` is
/// the pointer prefix used in error paths.
ScenarioDocument scenario_document_from_json(const nlohmann::json& doc);

Json scenario_document_to_json(const ScenarioDocument& doc);
std::string serialize_scenario(const ScenarioDocument& doc);

/// Values, per-action values, argmax sets and the canonical policy keyed by
/// (t, h, phi, tau).
Json solution_to_json(const Solution& solution);
std::string serialize_solution(const Solution& solution);
Solution parse_solution(std::string_view text);

/// Reads a whole file; throws Error when unreadable.
std::string read_file(const std::string& path);

// Preset catalog.

struct PresetInfo {
    std::string name;
    std::string description;
};

/// Names in catalog order.
const std::vector<PresetInfo>& preset_catalog();
std::vector<std::string> preset_names();

/// Built-in parameterization; throws UnknownPreset.
ScenarioDocument preset_document(std::string_view name);
Scenario preset(std::string_view name);

/// Loads `<dir>/<name>.json` when a directory is given, the built-in preset
/// otherwise. Throws UnknownPreset when the name is not in the catalog or the
/// file is missing.
ScenarioDocument load_preset(std::string_view name, const std::optional<std::string>& dir);

} // namespace oncodp::io
