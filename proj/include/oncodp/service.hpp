#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace oncodp::service {

inline constexpr std::size_t max_body_bytes = 1 << 20;
inline constexpr std::size_t max_samples = 1'000'000;
inline constexpr std::size_t max_echoed_trajectories = 10;

struct Response {
    int status = 200;
    std::string body;
};

/// Request handlers as pure functions of the request body; every body is a
/// canonical JSON document carrying schema_version.
Response handle_solve(std::string_view body);
Response handle_simulate(std::string_view body);
Response handle_presets();
Response handle_preset(std::string_view name);

struct Options {
    std::string bind = "127.0.0.1";
    int port = 8080;
    std::string cors_origin; ///< empty: no CORS headers
};

/// Registers the /api/v1 routes on `server`.
void mount(httplib::Server& server, const Options& options);

/// Binds and serves until the server is stopped. Returns false when the
/// address cannot be bound.
bool serve(const Options& options);

} // namespace oncodp::service
