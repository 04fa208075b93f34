#include "oncodp/scenario_io.hpp"

#include "oncodp/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace oncodp::io {

using nlohmann::json;

namespace {

void dump_number(double x, std::string& out) {
    if (!std::isfinite(x)) {
        out += "null";
        return;
    }
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    out.append(buf.data(), end);
}

template <class J> void dump_into(const J& v, std::string& out) {
    switch (v.type()) {
    case json::value_t::object: {
        out += '{';
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ',';
            first = false;
            out += json(it.key()).dump();
            out += ':';
            dump_into(it.value(), out);
        }
        out += '}';
        break;
    }
    case json::value_t::array: {
        out += '[';
        bool first = true;
        for (const auto& e : v) {
            if (!first) out += ',';
            first = false;
            dump_into(e, out);
        }
        out += ']';
        break;
    }
    case json::value_t::number_float: dump_number(v.template get<double>(), out); break;
    default: out += v.dump(); break;
    }
}

int line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), "",
                         line_of(text, e.byte > 0 ? e.byte - 1 : 0));
    }
}

// Schema readers. Every accessor carries the JSON pointer of the value it
// reads so errors name the offending field.

const json& field(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw ParseError("expected an object at " + path, path);
    const auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError("missing required field " + path + "/" + key, path + "/" + key);
    return *it;
}

const json* optional_field(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known,
                    const std::string& path) {
    if (!obj.is_object()) throw ParseError("expected an object at " + path, path);
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw ParseError("unknown field " + path + "/" + it.key(), path + "/" + it.key());
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ParseError("expected an integer at " + path, path);
    const auto x = v.get<long long>();
    if (x < 0 || x > 1'000'000) throw ParseError("integer out of range at " + path, path);
    return static_cast<int>(x);
}

double as_double(const json& v, const std::string& path) {
    if (!v.is_number()) throw ParseError("expected a number at " + path, path);
    return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw ParseError("expected a string at " + path, path);
    return v.get<std::string>();
}

IncrementRow as_row(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3)
        throw ParseError("expected [down, stay, up] at " + path, path);
    return IncrementRow{as_double(v[0], path + "/0"), as_double(v[1], path + "/1"),
                        as_double(v[2], path + "/2")};
}

ModalitySpec read_action(const json& v, const std::string& path) {
    reject_unknown(v, {"name", "kind", "phi_row", "tau_row"}, path);
    ModalitySpec spec;
    spec.name = as_string(field(v, "name", path), path + "/name");
    const auto kind_path = path + "/kind";
    const auto kind = as_string(field(v, "kind", path), kind_path);
    try {
        spec.kind = modality_kind_from_string(kind);
    } catch (const DomainError&) {
        throw ParseError("kind must be type1, type2 or type3 at " + kind_path, kind_path);
    }
    spec.phi_row = as_row(field(v, "phi_row", path), path + "/phi_row");
    spec.tau_row = as_row(field(v, "tau_row", path), path + "/tau_row");
    return spec;
}

RewardParams read_reward(const json& v, const std::string& path) {
    reject_unknown(v, {"c_phi", "c_tau", "d_phi", "d_tau", "intermediate"}, path);
    RewardParams r;
    r.c_phi = as_double(field(v, "c_phi", path), path + "/c_phi");
    r.c_tau = as_double(field(v, "c_tau", path), path + "/c_tau");
    r.d_phi = as_double(field(v, "d_phi", path), path + "/d_phi");
    r.d_tau = as_double(field(v, "d_tau", path), path + "/d_tau");
    if (const auto* inter = optional_field(v, "intermediate")) {
        const auto ipath = path + "/intermediate";
        reject_unknown(*inter, {"kind", "c_m"}, ipath);
        if (const auto* k = optional_field(*inter, "kind")) {
            try {
                r.intermediate_kind = intermediate_kind_from_string(as_string(*k, ipath + "/kind"));
            } catch (const DomainError&) {
                throw ParseError("kind must be none, side_effect or tumor at " + ipath + "/kind",
                                 ipath + "/kind");
            }
        }
        if (const auto* cm = optional_field(*inter, "c_m")) r.c_m = as_double(*cm, ipath + "/c_m");
    }
    return r;
}

Json row_json(const IncrementRow& row) {
    return Json::array({row.down, row.stay, row.up});
}

Json set_json(ActionSet set) {
    Json arr = Json::array();
    for (auto a : set.indices()) arr.push_back(a);
    return arr;
}

} // namespace

std::string canonical_dump(const Json& value) {
    std::string out;
    dump_into(value, out);
    return out;
}

ScenarioDocument scenario_document_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("document must be a JSON object", "");
    ScenarioDocument out;
    if (const auto* v = optional_field(doc, "schema_version")) {
        out.schema_version = as_string(*v, "/schema_version");
        if (out.schema_version != io::schema_version)
            throw ParseError("unsupported schema_version '" + out.schema_version + "'",
                             "/schema_version");
    }
    if (const auto* meta = optional_field(doc, "metadata")) {
        reject_unknown(*meta, {"name", "description"}, "/metadata");
        if (const auto* v = optional_field(*meta, "name"))
            out.metadata.name = as_string(*v, "/metadata/name");
        if (const auto* v = optional_field(*meta, "description"))
            out.metadata.description = as_string(*v, "/metadata/description");
    }

    const auto& sc = field(doc, "scenario", "");
    reject_unknown(sc, {"horizon", "m", "n", "actions", "reward"}, "/scenario");
    auto& scenario = out.scenario;
    scenario.horizon = as_int(field(sc, "horizon", "/scenario"), "/scenario/horizon");
    scenario.m = as_int(field(sc, "m", "/scenario"), "/scenario/m");
    scenario.n = as_int(field(sc, "n", "/scenario"), "/scenario/n");
    const auto& actions = field(sc, "actions", "/scenario");
    if (!actions.is_array())
        throw ParseError("expected an array at /scenario/actions", "/scenario/actions");
    for (std::size_t i = 0; i < actions.size(); ++i)
        scenario.actions.push_back(read_action(actions[i], "/scenario/actions/" + std::to_string(i)));
    scenario.reward = read_reward(field(sc, "reward", "/scenario"), "/scenario/reward");

    if (const auto* opts = optional_field(doc, "options")) {
        reject_unknown(*opts, {"tie_tolerance"}, "/options");
        if (const auto* v = optional_field(*opts, "tie_tolerance"))
            scenario.tie_tolerance = as_double(*v, "/options/tie_tolerance");
    }

    validate_scenario(scenario);
    return out;
}

ScenarioDocument parse_scenario_document(std::string_view text) {
    return scenario_document_from_json(parse_json(text));
}

Scenario parse_scenario(std::string_view text) { return parse_scenario_document(text).scenario; }

Json scenario_document_to_json(const ScenarioDocument& doc) {
    const auto& sc = doc.scenario;
    Json actions = Json::array();
    for (const auto& a : sc.actions)
        actions.push_back(Json{{"name", a.name},
                               {"kind", std::string(to_string(a.kind))},
                               {"phi_row", row_json(a.phi_row)},
                               {"tau_row", row_json(a.tau_row)}});
    const auto& r = sc.reward;
    Json reward{{"c_phi", r.c_phi},
                {"c_tau", r.c_tau},
                {"d_phi", r.d_phi},
                {"d_tau", r.d_tau},
                {"intermediate",
                 Json{{"kind", std::string(to_string(r.intermediate_kind))}, {"c_m", r.c_m}}}};
    return Json{{"schema_version", doc.schema_version},
                {"metadata",
                 Json{{"name", doc.metadata.name}, {"description", doc.metadata.description}}},
                {"scenario", Json{{"horizon", sc.horizon},
                                  {"m", sc.m},
                                  {"n", sc.n},
                                  {"actions", std::move(actions)},
                                  {"reward", std::move(reward)}}},
                {"options", Json{{"tie_tolerance", sc.tie_tolerance}}}};
}

std::string serialize_scenario(const ScenarioDocument& doc) {
    return canonical_dump(scenario_document_to_json(doc));
}

Json solution_to_json(const Solution& sol) {
    const auto& space = sol.space;
    Json entries = Json::array();
    for (int t = 1; t <= sol.horizon + 1; ++t) {
        for (std::size_t i = 0; i < space.size(); ++i) {
            const State s = space.at(i);
            Json e{{"t", t}, {"h", s.h}, {"phi", s.phi}, {"tau", s.tau}, {"V", sol.value(t, s)}};
            if (t <= sol.horizon) {
                Json q = Json::array();
                for (double x : sol.action_values_at(t, s)) q.push_back(x);
                e["Q"] = std::move(q);
                e["argmax"] = set_json(sol.argmax_set(t, s));
                e["action"] = sol.canonical_policy(t, s);
            }
            entries.push_back(std::move(e));
        }
    }
    return Json{{"schema_version", std::string(io::schema_version)},
                {"horizon", sol.horizon},
                {"m", space.m()},
                {"n", space.n()},
                {"tie_tolerance", sol.tie_tolerance},
                {"actions", sol.action_names},
                {"entries", std::move(entries)}};
}

std::string serialize_solution(const Solution& solution) {
    return canonical_dump(solution_to_json(solution));
}

Solution parse_solution(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw ParseError("solution document must be a JSON object", "");
    Solution sol;
    sol.horizon = as_int(field(doc, "horizon", ""), "/horizon");
    sol.space = StateSpace{as_int(field(doc, "m", ""), "/m"), as_int(field(doc, "n", ""), "/n")};
    sol.tie_tolerance = as_double(field(doc, "tie_tolerance", ""), "/tie_tolerance");
    const auto& names = field(doc, "actions", "");
    if (!names.is_array() || names.empty() || names.size() > max_actions)
        throw ParseError("expected a nonempty array at /actions", "/actions");
    for (std::size_t i = 0; i < names.size(); ++i)
        sol.action_names.push_back(as_string(names[i], "/actions/" + std::to_string(i)));
    if (sol.horizon < 1 || sol.space.m() < 1 || sol.space.n() < 1)
        throw ParseError("horizon, m and n must be positive", "/horizon");

    const std::size_t states = sol.space.size();
    const std::size_t actions = sol.action_count();
    const auto T = static_cast<std::size_t>(sol.horizon);
    sol.values.assign((T + 1) * states, 0.0);
    sol.action_values.assign(T * states * actions, 0.0);
    sol.argmax.assign(T * states, ActionSet{});
    sol.policy.assign(T * states, 0);

    const auto& entries = field(doc, "entries", "");
    if (!entries.is_array() || entries.size() != (T + 1) * states)
        throw ParseError("expected (T+1)*|S| entries at /entries", "/entries");
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& e = entries[k];
        const auto path = "/entries/" + std::to_string(k);
        const int t = as_int(field(e, "t", path), path + "/t");
        const State s{as_int(field(e, "h", path), path + "/h"),
                      as_int(field(e, "phi", path), path + "/phi"),
                      as_int(field(e, "tau", path), path + "/tau")};
        if (t < 1 || t > sol.horizon + 1 || !sol.space.contains(s))
            throw ParseError("entry outside the state space at " + path, path);
        sol.values[sol.value_slot(t, s)] = as_double(field(e, "V", path), path + "/V");
        if (t > sol.horizon) continue;
        const auto slot = sol.decision_slot(t, s);
        const auto& q = field(e, "Q", path);
        if (!q.is_array() || q.size() != actions)
            throw ParseError("expected one Q value per action at " + path + "/Q", path + "/Q");
        for (std::size_t a = 0; a < actions; ++a)
            sol.action_values[slot * actions + a] =
                as_double(q[a], path + "/Q/" + std::to_string(a));
        const auto& am = field(e, "argmax", path);
        if (!am.is_array() || am.empty())
            throw ParseError("expected a nonempty array at " + path + "/argmax", path + "/argmax");
        ActionSet set;
        for (std::size_t j = 0; j < am.size(); ++j) {
            const auto a = static_cast<std::size_t>(
                as_int(am[j], path + "/argmax/" + std::to_string(j)));
            if (a >= actions) throw ParseError("action index out of range", path + "/argmax");
            set.insert(a);
        }
        sol.argmax[slot] = set;
        const auto a = static_cast<std::size_t>(as_int(field(e, "action", path), path + "/action"));
        if (a >= actions) throw ParseError("action index out of range", path + "/action");
        sol.policy[slot] = static_cast<std::uint8_t>(a);
    }
    return sol;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace oncodp::io
