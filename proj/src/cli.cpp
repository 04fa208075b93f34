#include "oncodp/cli.hpp"

#include "oncodp/errors.hpp"
#include "oncodp/oracle.hpp"
#include "oncodp/policy_analysis.hpp"
#include "oncodp/scenario_io.hpp"
#include "oncodp/service.hpp"
#include "oncodp/solver.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace oncodp::cli {

namespace {

/// Bad flags or an unknown preset name.
struct UsageError : Error {
    using Error::Error;
};

struct Input {
    std::string label;
    io::ScenarioDocument doc;
};

std::optional<std::string> preset_dir() {
    if (const char* dir = std::getenv("ONCODP_PRESET_DIR"); dir && *dir) return std::string(dir);
    return std::nullopt;
}

Input load_preset_input(const std::string& name) {
    try {
        return Input{name, io::load_preset(name, preset_dir())};
    } catch (const UnknownPreset& e) {
        throw UsageError(e.what());
    }
}

Input load_file_input(const std::string& path) {
    return Input{path, io::parse_scenario_document(io::read_file(path))};
}

Input load_single(const std::string& path, const std::string& preset) {
    if (path.empty() == preset.empty())
        throw UsageError("give exactly one of a scenario path or --preset");
    return preset.empty() ? load_file_input(path) : load_preset_input(preset);
}

State parse_start(const std::string& text) {
    State s;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> s.h >> c1 >> s.phi >> c2 >> s.tau) || c1 != ',' || c2 != ',' || !in.eof())
        throw UsageError("--start expects h,phi,tau, got '" + text + "'");
    return s;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
    if (!out) throw Error("failed writing '" + path + "'");
}

std::string fixed(double x, int digits = 6) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << x;
    return os.str();
}

void print_proportions(std::ostream& out, const Solution& sol) {
    out << "canonical action counts (non-absorbing states | all states)\n";
    out << "  t  h";
    for (const auto& name : sol.action_names) out << std::setw(6) << name;
    out << "  |";
    for (const auto& name : sol.action_names) out << std::setw(6) << name;
    out << '\n';
    for (int t = 1; t <= sol.horizon; ++t) {
        for (int h = 0; h <= 1; ++h) {
            out << std::setw(3) << t << std::setw(3) << h;
            for (auto c : analysis::action_proportions(sol, t, h, true)) out << std::setw(6) << c;
            out << "  |";
            for (auto c : analysis::action_proportions(sol, t, h, false)) out << std::setw(6) << c;
            out << '\n';
        }
    }
}

void print_header(std::ostream& out, const Input& in) {
    const auto& sc = in.doc.scenario;
    out << "scenario: " << in.label << " (T=" << sc.horizon << ", m=" << sc.m << ", n=" << sc.n
        << ", " << sc.action_count() << " actions)\n";
}

// Largest |expectimax - V| over every (t, s).
double verify_against_oracle(const Scenario& sc, const Solution& sol) {
    const auto rewards = make_reward_model(sc);
    double worst = 0.0;
    for (int t = 1; t <= sc.horizon + 1; ++t)
        for (std::size_t i = 0; i < sol.space.size(); ++i) {
            const State s = sol.space.at(i);
            worst = std::max(worst, std::abs(oracle::expectimax_value(sc, rewards, s, t) -
                                             sol.value(t, s)));
        }
    return worst;
}

int cmd_solve(const std::string& path, const std::string& preset, const std::string& out_path,
              bool verify, std::ostream& out, std::ostream& err) {
    const auto in = load_single(path, preset);
    const auto& sc = in.doc.scenario;
    const auto sol = solve(sc);
    print_header(out, in);
    print_proportions(out, sol);
    if (verify) {
        const double gap = verify_against_oracle(sc, sol);
        out << "oracle check: max |expectimax - V| = " << std::scientific << std::setprecision(3)
            << gap << std::defaultfloat << '\n';
        if (!(gap <= 1e-9)) {
            err << "error: solver disagrees with the expectimax oracle by " << gap << '\n';
            return exit_invalid_input;
        }
    }
    if (!out_path.empty()) {
        write_file(out_path, io::serialize_solution(sol));
        out << "solution written to " << out_path << '\n';
    }
    return exit_ok;
}

int cmd_simulate(const std::string& path, const std::string& preset, const std::string& start_text,
                 std::size_t n, std::uint64_t seed, const std::string& dump, std::ostream& out,
                 std::ostream& err) {
    const auto in = load_single(path, preset);
    const auto& sc = in.doc.scenario;
    const State start = parse_start(start_text);
    sc.space().require(start);
    if (n < 1) throw UsageError("--n must be at least 1");

    const auto sol = solve(sc);
    const auto est = oracle::monte_carlo_value(sc, sol, start, n, seed);
    const double v1 = sol.value(1, start);

    print_header(out, in);
    out << "start " << to_string(start) << "  n=" << est.n << "  seed=" << seed << '\n';
    out << "mean       " << fixed(est.mean) << '\n';
    out << "std_error  " << fixed(est.std_error) << (est.single_sample ? "  (single sample)" : "")
        << '\n';
    out << "V_1        " << fixed(v1) << '\n';
    const double gap = std::abs(est.mean - v1);
    out << "|mean - V_1| = " << fixed(gap) << "  within 3 SE: "
        << (gap <= 3.0 * est.std_error ? "yes" : "no") << '\n';

    if (!dump.empty()) {
        io::Json trajectories = io::Json::array();
        for (std::size_t i = 0; i < n; ++i) {
            const auto rec =
                oracle::simulate_trajectory(sc, sol, start, oracle::trajectory_seed(seed, i));
            io::Json states = io::Json::array();
            for (const auto& s : rec.states) states.push_back(io::Json::array({s.h, s.phi, s.tau}));
            trajectories.push_back(io::Json{{"seed", rec.seed},
                                            {"states", std::move(states)},
                                            {"actions", rec.actions},
                                            {"reward_total", rec.reward_total}});
        }
        write_file(dump, io::canonical_dump(io::Json{{"schema_version", io::schema_version},
                                                     {"actions", sol.action_names},
                                                     {"trajectories", std::move(trajectories)}}));
        out << "trajectories written to " << dump << '\n';
    }
    (void)err;
    return exit_ok;
}

int cmd_compare(const std::vector<std::string>& presets, const std::vector<std::string>& paths,
                bool list, std::ostream& out, std::ostream& err) {
    std::vector<Input> inputs;
    for (const auto& p : presets) inputs.push_back(load_preset_input(p));
    for (const auto& p : paths) inputs.push_back(load_file_input(p));
    if (inputs.size() != 2) throw UsageError("compare needs exactly two scenarios");

    const auto a = solve(inputs[0].doc.scenario);
    const auto b = solve(inputs[1].doc.scenario);
    std::vector<analysis::PolicyChange> diff;
    try {
        diff = analysis::policy_diff(a, b);
    } catch (const ShapeError& e) {
        err << "error: cannot compare " << inputs[0].label << " and " << inputs[1].label << ": "
            << e.what() << '\n';
        return exit_invalid_input;
    }

    out << "compare: " << inputs[0].label << " -> " << inputs[1].label << '\n';
    out << diff.size() << " differences\n";
    out << "canonical count deltas, non-absorbing states (b - a)\n";
    out << "  t  h";
    for (const auto& name : a.action_names) out << std::setw(6) << name;
    out << '\n';
    for (int t = 1; t <= a.horizon; ++t) {
        for (int h = 0; h <= 1; ++h) {
            const auto ca = analysis::action_proportions(a, t, h, true);
            const auto cb = analysis::action_proportions(b, t, h, true);
            out << std::setw(3) << t << std::setw(3) << h;
            for (std::size_t k = 0; k < ca.size(); ++k) {
                const auto delta = static_cast<long>(cb[k]) - static_cast<long>(ca[k]);
                out << std::setw(6) << (delta > 0 ? "+" : "") + std::to_string(delta);
            }
            out << '\n';
        }
    }
    if (list)
        for (const auto& c : diff)
            out << "t=" << c.t << " " << to_string(c.state) << ": " << a.action_names[c.action_a]
                << " -> " << b.action_names[c.action_b] << '\n';
    return exit_ok;
}

int cmd_grid(const std::string& path, const std::string& preset, int t, int h,
             const std::string& out_path, std::ostream& out) {
    const auto in = load_single(path, preset);
    const auto sol = solve(in.doc.scenario);
    const auto grid = analysis::export_policy_grid(sol, t, h);
    print_header(out, in);
    out << "policy at t=" << t << ", h=" << h
        << " (rows phi from m down to 0, columns tau 0..n; * marks ties)\n";
    for (int phi = grid.m; phi >= 0; --phi) {
        const auto r = static_cast<std::size_t>(phi);
        out << std::setw(3) << phi << " ";
        for (std::size_t c = 0; c < grid.cols(); ++c) {
            out << std::setw(4) << sol.action_names[grid.cells[r][c]]
                << (grid.argmax[r][c].size() > 1 ? '*' : ' ');
        }
        out << '\n';
    }
    if (!out_path.empty()) {
        write_file(out_path, io::canonical_dump(analysis::policy_grid_to_json(grid, sol)));
        out << "grid written to " << out_path << '\n';
    }
    return exit_ok;
}

int cmd_presets(const std::string& show, const std::string& export_dir, std::ostream& out) {
    if (!show.empty()) {
        try {
            out << io::serialize_scenario(io::preset_document(show)) << '\n';
        } catch (const UnknownPreset& e) {
            throw UsageError(e.what());
        }
        return exit_ok;
    }
    if (!export_dir.empty()) {
        std::filesystem::create_directories(export_dir);
        for (const auto& p : io::preset_catalog()) {
            const auto file = (std::filesystem::path(export_dir) / (p.name + ".json")).string();
            write_file(file, io::serialize_scenario(io::preset_document(p.name)) + "\n");
            out << file << '\n';
        }
        return exit_ok;
    }
    for (const auto& p : io::preset_catalog())
        out << std::left << std::setw(22) << p.name << std::right << p.description << '\n';
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-horizon MDP workbench for multi-modality treatment planning", "oncodp"};
    app.require_subcommand(1);

    std::string path, preset, out_path, start = "0,0,0", dump, show, export_dir;
    std::vector<std::string> presets, paths;
    bool verify = false, list = false;
    std::size_t n = 1000;
    std::uint64_t seed = 0;
    int t = 1, h = 0;
    service::Options serve_options;

    auto* solve_cmd = app.add_subcommand("solve", "Solve a scenario by backward induction");
    solve_cmd->add_option("scenario", path, "Scenario JSON file");
    solve_cmd->add_option("--preset", preset, "Built-in preset name");
    solve_cmd->add_option("--out", out_path, "Write the solution document here");
    solve_cmd->add_flag("--verify", verify, "Check every value against the expectimax oracle");

    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo estimate under the optimal policy");
    sim_cmd->add_option("scenario", path, "Scenario JSON file");
    sim_cmd->add_option("--preset", preset, "Built-in preset name");
    sim_cmd->add_option("--start", start, "Start state h,phi,tau");
    sim_cmd->add_option("--n", n, "Number of trajectories");
    sim_cmd->add_option("--seed", seed, "Master seed");
    sim_cmd->add_option("--dump", dump, "Write every sampled trajectory here");

    auto* cmp_cmd = app.add_subcommand("compare", "Diff the optimal policies of two scenarios");
    cmp_cmd->add_option("scenarios", paths, "Scenario JSON files");
    cmp_cmd->add_option("--preset", presets, "Built-in preset name (repeatable)")
        ->allow_extra_args(false);
    cmp_cmd->add_flag("--list", list, "List every differing (t, state)");

    auto* grid_cmd = app.add_subcommand("grid", "Print one (t, h) panel of the optimal policy");
    grid_cmd->set_help_flag("--help", "Print this help message and exit");
    grid_cmd->add_option("scenario", path, "Scenario JSON file");
    grid_cmd->add_option("--preset", preset, "Built-in preset name");
    grid_cmd->add_option("--t", t, "Decision period");
    grid_cmd->add_option("--h", h, "Type 1 history flag");
    grid_cmd->add_option("--out", out_path, "Write the grid document here");

    auto* presets_cmd = app.add_subcommand("presets", "List, show or export the preset catalog");
    presets_cmd->add_option("--show", show, "Print one preset document");
    presets_cmd->add_option("--export", export_dir, "Write every preset document into a directory");

    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    serve_cmd->add_option("--bind", serve_options.bind, "Bind address");
    serve_cmd->add_option("--port", serve_options.port, "Port");
    serve_cmd->add_option("--cors-origin", serve_options.cors_origin, "Allowed CORS origin");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return exit_usage;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(path, preset, out_path, verify, out, err);
        if (sim_cmd->parsed()) return cmd_simulate(path, preset, start, n, seed, dump, out, err);
        if (cmp_cmd->parsed()) return cmd_compare(presets, paths, list, out, err);
        if (grid_cmd->parsed()) return cmd_grid(path, preset, t, h, out_path, out);
        if (presets_cmd->parsed()) return cmd_presets(show, export_dir, out);
        if (serve_cmd->parsed()) {
            out << "serving on http://" << serve_options.bind << ":" << serve_options.port << '\n'
                << std::flush;
            if (!service::serve(serve_options)) {
                err << "error: cannot bind " << serve_options.bind << ":" << serve_options.port
                    << '\n';
                return exit_invalid_input;
            }
            return exit_ok;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << " (at " << e.path() << ")\n";
        return exit_invalid_input;
    } catch (const ParseError& e) {
        err << "error: " << e.what();
        if (!e.path().empty()) err << " (at " << e.path() << ")";
        if (e.line() > 0) err << " (line " << e.line() << ")";
        err << '\n';
        return exit_invalid_input;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid_input;
    }
    return exit_usage;
}

} // namespace oncodp::cli
