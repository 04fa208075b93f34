#include "oncodp/service.hpp"

#include "oncodp/errors.hpp"
#include "oncodp/oracle.hpp"
#include "oncodp/scenario_io.hpp"
#include "oncodp/solver.hpp"

#include <httplib.h>

#include <algorithm>
#include <optional>

namespace oncodp::service {

using io::Json;
using nlohmann::json;

namespace {

Response ok(const Json& body) { return Response{200, io::canonical_dump(body)}; }

Response api_error(int status, std::string_view code, std::string_view detail,
                   const std::optional<std::string>& path = std::nullopt) {
    Json err{{"status", status}, {"code", code}, {"detail", detail}};
    if (path) err["path"] = *path;
    return Response{status, io::canonical_dump(Json{{"schema_version", io::schema_version},
                                                    {"error", std::move(err)}})};
}

// Maps library exceptions onto API errors; anything else is a 500.
template <class F> Response guarded(F&& f) {
    try {
        return f();
    } catch (const ParseError& e) {
        return api_error(400, "parse_error", e.what(), e.path());
    } catch (const RowSumError& e) {
        return api_error(422, "row_sum_error", e.what(), e.path());
    } catch (const SignError& e) {
        return api_error(422, "sign_error", e.what(), e.path());
    } catch (const StructureError& e) {
        return api_error(422, "structure_error", e.what(), e.path());
    } catch (const UnknownPreset& e) {
        return api_error(404, "unknown_preset", e.what());
    } catch (const std::exception& e) {
        return api_error(500, "internal_error", e.what());
    }
}

std::optional<Response> reject_oversized(std::string_view body) {
    if (body.size() > max_body_bytes)
        return api_error(400, "payload_too_large",
                         "request body exceeds " + std::to_string(max_body_bytes) + " bytes");
    return std::nullopt;
}

json parse_body(std::string_view body) {
    try {
        return json::parse(body.begin(), body.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), "");
    }
}

Json state_json(const State& s) { return Json::array({s.h, s.phi, s.tau}); }

// Start may be written [h, phi, tau] or {"h":..,"phi":..,"tau":..}.
State read_start(const json& body) {
    const auto it = body.find("start");
    if (it == body.end()) throw ParseError("missing required field /start", "/start");
    const auto coord = [](const json& v, const std::string& path) {
        if (!v.is_number_integer()) throw ParseError("expected an integer at " + path, path);
        return static_cast<int>(std::clamp<long long>(v.get<long long>(), -1, 1'000'000));
    };
    if (it->is_array() && it->size() == 3)
        return State{coord((*it)[0], "/start/0"), coord((*it)[1], "/start/1"),
                     coord((*it)[2], "/start/2")};
    if (it->is_object()) {
        for (const char* key : {"h", "phi", "tau"})
            if (!it->contains(key))
                throw ParseError(std::string("missing required field /start/") + key,
                                 std::string("/start/") + key);
        return State{coord((*it)["h"], "/start/h"), coord((*it)["phi"], "/start/phi"),
                     coord((*it)["tau"], "/start/tau")};
    }
    throw ParseError("start must be [h, phi, tau] or an object", "/start");
}

} // namespace

Response handle_solve(std::string_view body) {
    if (auto r = reject_oversized(body)) return *r;
    return guarded([&] {
        const auto doc = io::scenario_document_from_json(parse_body(body));
        return ok(io::solution_to_json(solve(doc.scenario)));
    });
}

Response handle_simulate(std::string_view body) {
    if (auto r = reject_oversized(body)) return *r;
    return guarded([&]() -> Response {
        const json req = parse_body(body);
        const auto doc = io::scenario_document_from_json(req);
        const auto& scenario = doc.scenario;

        const State start = read_start(req);
        if (!scenario.space().contains(start)) {
            try {
                scenario.space().require(start);
            } catch (const DomainError& e) {
                return api_error(422, "invalid_start", e.what(), std::string("/start"));
            }
        }

        const auto n_it = req.find("n");
        if (n_it == req.end()) throw ParseError("missing required field /n", "/n");
        if (!n_it->is_number_integer())
            return api_error(422, "invalid_n", "n must be an integer", std::string("/n"));
        const auto n = n_it->get<long long>();
        if (n < 1 || n > static_cast<long long>(max_samples))
            return api_error(422, "invalid_n",
                             "n must lie in [1, " + std::to_string(max_samples) + "]",
                             std::string("/n"));

        std::uint64_t seed = 0;
        if (const auto s_it = req.find("seed"); s_it != req.end()) {
            if (!s_it->is_number_unsigned())
                return api_error(422, "invalid_seed", "seed must be a nonnegative integer",
                                 std::string("/seed"));
            seed = s_it->get<std::uint64_t>();
        }

        const auto solution = solve(scenario);
        const auto count = static_cast<std::size_t>(n);
        const auto est = oracle::monte_carlo_value(scenario, solution, start, count, seed);

        Json samples = Json::array();
        for (std::size_t i = 0; i < std::min(count, max_echoed_trajectories); ++i) {
            const auto rec = oracle::simulate_trajectory(scenario, solution, start,
                                                         oracle::trajectory_seed(seed, i));
            Json states = Json::array();
            for (const auto& s : rec.states) states.push_back(state_json(s));
            samples.push_back(Json{{"seed", rec.seed},
                                   {"states", std::move(states)},
                                   {"actions", rec.actions},
                                   {"reward_total", rec.reward_total}});
        }
        return ok(Json{{"schema_version", io::schema_version},
                       {"start", state_json(start)},
                       {"seed", seed},
                       {"n", est.n},
                       {"mean", est.mean},
                       {"std_error", est.std_error},
                       {"single_sample", est.single_sample},
                       {"v1", solution.value(1, start)},
                       {"actions", solution.action_names},
                       {"sample_trajectories", std::move(samples)}});
    });
}

Response handle_presets() {
    Json list = Json::array();
    for (const auto& p : io::preset_catalog())
        list.push_back(Json{{"name", p.name}, {"description", p.description}});
    return ok(Json{{"schema_version", io::schema_version}, {"presets", std::move(list)}});
}

Response handle_preset(std::string_view name) {
    return guarded([&] { return ok(io::scenario_document_to_json(io::preset_document(name))); });
}

void mount(httplib::Server& server, const Options& options) {
    constexpr const char* json_type = "application/json";
    const auto reply = [json_type](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body, json_type);
    };

    server.Post("/api/v1/solve", [reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, handle_solve(req.body));
    });
    server.Post("/api/v1/simulate", [reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, handle_simulate(req.body));
    });
    server.Get("/api/v1/presets", [reply](const httplib::Request&, httplib::Response& res) {
        reply(res, handle_presets());
    });
    server.Get(R"(/api/v1/presets/([A-Za-z0-9_.\-]+))",
               [reply](const httplib::Request& req, httplib::Response& res) {
                   reply(res, handle_preset(req.matches[1].str()));
               });

    if (!options.cors_origin.empty()) {
        const std::string origin = options.cors_origin;
        server.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Vary", "Origin");
        });
        server.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
            res.status = 204;
            res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
        });
    }

    server.set_error_handler([json_type](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) return;
        const int status = res.status == 404 ? 404 : (res.status >= 500 ? 500 : 400);
        const auto r = api_error(status, status == 404 ? "not_found" : "bad_request",
                                 "no handler for " + req.method + " " + req.path);
        res.status = r.status;
        res.set_content(r.body, json_type);
    });
    server.set_exception_handler(
        [json_type](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
            const auto r = api_error(500, "internal_error", "unhandled exception");
            res.status = r.status;
            res.set_content(r.body, json_type);
        });
}

bool serve(const Options& options) {
    httplib::Server server;
    mount(server, options);
    return server.listen(options.bind, options.port);
}

} // namespace oncodp::service
