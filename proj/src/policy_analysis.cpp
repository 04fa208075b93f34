#include "oncodp/policy_analysis.hpp"

#include "oncodp/errors.hpp"

#include <string>

namespace oncodp::analysis {

namespace {

void require_decision(const Solution& sol, int t, int h) {
    if (t < 1 || t > sol.horizon)
        throw DomainError("period t=" + std::to_string(t) + " outside [1, " +
                          std::to_string(sol.horizon) + "]");
    if (h != 0 && h != 1) throw DomainError("history flag h=" + std::to_string(h) + " is not 0 or 1");
}

} // namespace

std::vector<std::size_t> action_proportions(const Solution& solution, int t, int h,
                                            bool exclude_absorbing) {
    require_decision(solution, t, h);
    const auto& space = solution.space;
    std::vector<std::size_t> counts(solution.action_count(), 0);
    for (int phi = 0; phi <= space.m(); ++phi) {
        for (int tau = 0; tau <= space.n(); ++tau) {
            const State s{h, phi, tau};
            if (exclude_absorbing && space.is_absorbing(s)) continue;
            ++counts[solution.canonical_policy(t, s)];
        }
    }
    return counts;
}

std::vector<PolicyChange> policy_diff(const Solution& a, const Solution& b) {
    if (a.horizon != b.horizon)
        throw ShapeError("horizons differ: " + std::to_string(a.horizon) + " vs " +
                         std::to_string(b.horizon));
    if (!(a.space == b.space))
        throw ShapeError("state spaces differ: m=" + std::to_string(a.space.m()) +
                         ", n=" + std::to_string(a.space.n()) + " vs m=" +
                         std::to_string(b.space.m()) + ", n=" + std::to_string(b.space.n()));
    if (a.action_count() != b.action_count())
        throw ShapeError("action counts differ: " + std::to_string(a.action_count()) + " vs " +
                         std::to_string(b.action_count()));

    std::vector<PolicyChange> changes;
    for (int t = 1; t <= a.horizon; ++t) {
        for (std::size_t i = 0; i < a.space.size(); ++i) {
            const State s = a.space.at(i);
            const auto x = a.canonical_policy(t, s);
            const auto y = b.canonical_policy(t, s);
            if (x != y) changes.push_back(PolicyChange{t, s, x, y});
        }
    }
    return changes;
}

std::vector<DecisionPoint> contiguity_check(const Solution& solution, const Scenario& scenario) {
    if (solution.action_count() != scenario.action_count())
        throw ShapeError("solution and scenario have different action counts");
    std::vector<DecisionPoint> violations;
    for (int t = 1; t <= solution.horizon; ++t) {
        for (std::size_t i = 0; i < solution.space.size(); ++i) {
            const State s = solution.space.at(i);
            const auto set = solution.argmax_set(t, s);
            if (set.empty()) {
                violations.push_back(DecisionPoint{t, s});
                continue;
            }
            if (set.last() - set.first() + 1 != set.size())
                violations.push_back(DecisionPoint{t, s});
        }
    }
    return violations;
}

PolicyGrid export_policy_grid(const Solution& solution, int t, int h) {
    require_decision(solution, t, h);
    const auto& space = solution.space;
    PolicyGrid grid;
    grid.t = t;
    grid.h = h;
    grid.m = space.m();
    grid.n = space.n();
    grid.cells.assign(static_cast<std::size_t>(space.m() + 1),
                      std::vector<std::size_t>(static_cast<std::size_t>(space.n() + 1), 0));
    grid.argmax.assign(static_cast<std::size_t>(space.m() + 1),
                       std::vector<ActionSet>(static_cast<std::size_t>(space.n() + 1)));
    for (int phi = 0; phi <= space.m(); ++phi) {
        for (int tau = 0; tau <= space.n(); ++tau) {
            const State s{h, phi, tau};
            const auto r = static_cast<std::size_t>(phi);
            const auto c = static_cast<std::size_t>(tau);
            grid.cells[r][c] = solution.canonical_policy(t, s);
            grid.argmax[r][c] = solution.argmax_set(t, s);
        }
    }
    return grid;
}

nlohmann::ordered_json policy_grid_to_json(const PolicyGrid& grid, const Solution& solution) {
    using Json = nlohmann::ordered_json;
    Json cells = Json::array();
    Json ties = Json::array();
    for (std::size_t r = 0; r < grid.rows(); ++r) {
        Json row = Json::array();
        Json tie_row = Json::array();
        for (std::size_t c = 0; c < grid.cols(); ++c) {
            row.push_back(grid.cells[r][c]);
            Json set = Json::array();
            for (auto a : grid.argmax[r][c].indices()) set.push_back(a);
            tie_row.push_back(std::move(set));
        }
        cells.push_back(std::move(row));
        ties.push_back(std::move(tie_row));
    }
    return Json{{"schema_version", "1"},
                {"t", grid.t},
                {"h", grid.h},
                {"m", grid.m},
                {"n", grid.n},
                {"actions", solution.action_names},
                {"cells", std::move(cells)},
                {"argmax", std::move(ties)}};
}

} // namespace oncodp::analysis
