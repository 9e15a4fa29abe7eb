#include "holosched/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "holosched/error.hpp"

namespace holosched::oracle {

namespace {

std::vector<int> sorted_server_ids(const model::Scenario& scenario) {
    std::vector<int> ids;
    ids.reserve(scenario.servers.size());
    for (const auto& s : scenario.servers) ids.push_back(s.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

} // namespace

double grid_best_latency(const model::Scenario& scenario, int user_id, int steps) {
    if (steps < 1) fail(errc::validation, "grid steps must be >= 1");
    const std::vector<int> ids = sorted_server_ids(scenario);
    const std::size_t m = ids.size();

    double best = std::numeric_limits<double>::infinity();
    std::vector<int> counts(m, 0);

    std::function<void(std::size_t, int)> walk = [&](std::size_t i, int remaining) {
        if (i + 1 == m) {
            counts[i] = remaining;
            model::Allocation alloc;
            alloc.user = user_id;
            for (std::size_t j = 0; j < m; ++j)
                if (counts[j] > 0)
                    alloc.fractions[ids[j]] = static_cast<double>(counts[j]) / steps;
            for (const auto& [g, _] : alloc.fractions) {
                alloc.integrator = g;
                best = std::min(best, model::user_latency(scenario, alloc).total_s);
            }
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            counts[i] = k;
            walk(i + 1, remaining - k);
        }
    };
    walk(0, steps);
    return best;
}

std::optional<double> vertex_optimum(const lp::LinearProgram& program) {
    const std::size_t n = program.num_vars();
    if (n == 0) return std::nullopt;

    std::vector<lp::Bounds> bounds = program.bounds;
    if (bounds.empty()) bounds.assign(n, lp::Bounds{});

    struct Plane {
        std::vector<double> a;
        double b;
    };
    std::vector<Plane> planes;
    for (const auto& c : program.constraints) planes.push_back({c.coeffs, c.rhs});
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> a(n, 0.0);
        a[j] = 1.0;
        planes.push_back({a, bounds[j].lo});
        if (std::isfinite(bounds[j].hi)) planes.push_back({a, bounds[j].hi});
    }
    if (planes.size() < n) return std::nullopt;

    auto feasible = [&](const std::vector<double>& x) {
        double x_norm = 0.0;
        for (double v : x) x_norm = std::max(x_norm, std::abs(v));
        for (std::size_t j = 0; j < n; ++j) {
            const double tol = lp::kFeasTol * (1.0 + x_norm);
            if (x[j] < bounds[j].lo - tol || x[j] > bounds[j].hi + tol) return false;
        }
        for (const auto& c : program.constraints) {
            double lhs = 0.0;
            double a_norm = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                lhs += c.coeffs[j] * x[j];
                a_norm = std::max(a_norm, std::abs(c.coeffs[j]));
            }
            const double tol = lp::kFeasTol * (1.0 + std::abs(c.rhs) + a_norm * x_norm);
            const double viol = lhs - c.rhs;
            if (c.rel == lp::Relation::LessEq && viol > tol) return false;
            if (c.rel == lp::Relation::GreaterEq && viol < -tol) return false;
            if (c.rel == lp::Relation::Equal && std::abs(viol) > tol) return false;
        }
        return true;
    };

    // Gaussian elimination with partial pivoting on the n chosen planes.
    auto intersect = [&](const std::vector<std::size_t>& pick,
                         std::vector<double>& x) -> bool {
        std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            std::copy(planes[pick[i]].a.begin(), planes[pick[i]].a.end(), a[i].begin());
            a[i][n] = planes[pick[i]].b;
        }
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < n; ++r)
                if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
            if (std::abs(a[piv][col]) < 1e-10) return false;
            std::swap(a[col], a[piv]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col) continue;
                const double f = a[r][col] / a[col][col];
                if (f == 0.0) continue;
                for (std::size_t k = col; k <= n; ++k) a[r][k] -= f * a[col][k];
            }
        }
        x.resize(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
        return true;
    };

    std::optional<double> best;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    std::vector<double> x;
    while (true) {
        if (intersect(pick, x) && feasible(x)) {
            double obj = 0.0;
            for (std::size_t j = 0; j < n; ++j) obj += program.objective[j] * x[j];
            if (!best || obj < *best) best = obj;
        }
        // next n-combination of plane indices
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (pick[i] + (n - i) < planes.size()) {
                ++pick[i];
                for (std::size_t j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
                break;
            }
            if (i == 0) return best;
        }
    }
}

lp::LinearProgram random_box_lp(Rng& rng, int n_vars, int n_rows) {
    lp::LinearProgram program;
    program.bounds.resize(n_vars);
    for (auto& b : program.bounds) b = {0.0, rng.uniform(0.5, 2.0)};

    std::vector<double> anchor(n_vars);
    for (int j = 0; j < n_vars; ++j) anchor[j] = rng.uniform(0.0, program.bounds[j].hi);

    program.objective.resize(n_vars);
    for (auto& c : program.objective) c = rng.uniform(-1.0, 1.0);

    for (int i = 0; i < n_rows; ++i) {
        lp::Constraint row;
        row.coeffs.resize(n_vars);
        for (auto& a : row.coeffs) a = rng.uniform(-1.0, 1.0);
        double at_anchor = 0.0;
        for (int j = 0; j < n_vars; ++j) at_anchor += row.coeffs[j] * anchor[j];
        row.rel = lp::Relation::LessEq;
        row.rhs = at_anchor + rng.uniform(0.0, 0.5);
        program.constraints.push_back(std::move(row));
    }
    return program;
}

model::Scenario random_scenario(Rng& rng, int n_servers, int n_users) {
    model::Scenario sc;
    sc.ops = {{0, "preprocess"}, {1, "render"}};
    sc.split_overhead = 0.2;
    sc.local_capacity = 1e9;

    // Work scales with frame size (ops per bit), so compute and transfer
    // times stay commensurate across draws.
    model::DataClass cls;
    cls.id = 0;
    cls.size_bits = rng.uniform(8e7, 1.6e8);
    const double w0 = cls.size_bits * rng.uniform(0.5, 1.5);
    const double w1 = cls.size_bits * rng.uniform(6.0, 10.0);
    cls.base_workload = {{0, w0}, {1, w1}};
    sc.classes.push_back(std::move(cls));

    for (int i = 0; i < n_servers; ++i) {
        model::MecServer s;
        s.id = i;
        s.capacity[{0, 0}] = rng.uniform(4e9, 1e10);
        s.capacity[{0, 1}] = rng.uniform(4e9, 1e10);
        sc.servers.push_back(std::move(s));
    }
    for (int i = 0; i < n_users; ++i) {
        model::TeleportedUser u;
        u.id = i;
        u.task = {0, {0, 1}};
        for (int j = 0; j < n_servers; ++j) u.uplink_bw[j] = rng.uniform(1.2e9, 2e9);
        sc.users.push_back(std::move(u));
    }
    for (int a = 0; a < n_servers; ++a)
        for (int b = a + 1; b < n_servers; ++b) sc.links.set(a, b, rng.uniform(2.5e9, 5e9));
    return sc;
}

std::vector<GridGap> compare_stage1_to_grid(const model::Scenario& scenario, int steps) {
    std::vector<GridGap> out;
    for (const auto& user : scenario.users) {
        GridGap g;
        g.user_id = user.id;
        g.lp_value = scheduler::stage1_user_bound(scenario, user.id);
        g.grid_value = grid_best_latency(scenario, user.id, steps);
        g.gap = (g.grid_value - g.lp_value) / g.grid_value;
        out.push_back(g);
    }
    return out;
}

std::vector<std::string> check_split_minimality(const model::Scenario& scenario,
                                                const scheduler::ProposedResult& result) {
    const double cap = result.stage1_l_max * (1.0 + scheduler::kStage2Slack);
    const std::vector<int> ids = sorted_server_ids(scenario);
    std::vector<std::string> issues;

    for (const auto& alloc : result.schedule.allocations) {
        int used = 0;
        for (const auto& [_, x] : alloc.fractions)
            if (x > model::kSplitEps) ++used;

        const auto& user = scenario.user(alloc.user);
        const unsigned full = (1u << ids.size()) - 1u;
        for (unsigned mask = 1; mask <= full; ++mask) {
            if (std::popcount(mask) >= used) continue;
            std::vector<int> support;
            for (std::size_t i = 0; i < ids.size(); ++i)
                if (mask & (1u << i)) support.push_back(ids[i]);
            for (int g : support) {
                auto opt = vertex_optimum(
                    scheduler::restricted_program(scenario, user, support, g));
                if (opt && *opt < cap * (1.0 - 1e-7)) {
                    std::ostringstream msg;
                    msg << "user " << alloc.user << ": uses " << used << " splits but "
                        << support.size() << "-server pattern (mask " << mask
                        << ", integrator " << g << ") reaches " << *opt << " under cap "
                        << cap;
                    issues.push_back(msg.str());
                }
            }
        }
    }
    return issues;
}

} // namespace holosched::oracle
