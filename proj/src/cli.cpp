#include "holosched/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "holosched/config.hpp"
#include "holosched/error.hpp"
#include "holosched/oracle.hpp"
#include "holosched/rng.hpp"

namespace holosched::cli {

namespace {

int code_for(const error& e) {
    return e.code() == errc::parse || e.code() == errc::io ? 2 : 1;
}

} // namespace

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        sim::ScenarioTemplate tmpl = config::load_template(config.template_path);
        if (config.seed) tmpl.rng_seed = *config.seed;
        if (config.policies.empty()) {
            err << "error: no policies requested\n";
            return 2;
        }
        if (config.formats.empty()) {
            err << "error: no output formats requested\n";
            return 2;
        }
        for (const auto& f : config.formats) {
            if (f != "csv" && f != "md" && f != "json") {
                err << "error: unknown format '" << f << "' (expected csv, md, json)\n";
                return 2;
            }
        }

        const sim::BatchResult batch = sim::run_batch(tmpl, config.policies);

        std::error_code ec;
        std::filesystem::create_directories(config.out_dir, ec);
        if (ec) fail(errc::io, "cannot create '" + config.out_dir + "': " + ec.message());
        const auto emit = [&](const std::string& name, const std::string& content) {
            const std::string path =
                (std::filesystem::path(config.out_dir) / name).string();
            write_file_atomic(path, content);
            out << "wrote " << path << "\n";
        };
        const auto wants = [&](const char* f) {
            return std::find(config.formats.begin(), config.formats.end(), f) !=
                   config.formats.end();
        };
        if (wants("csv")) emit("latency.csv", latency_csv(batch));
        if (wants("md")) emit("summary.md", summary_md(tmpl, config.template_path, batch));
        if (wants("json"))
            emit("series.json", series_json(tmpl, config.template_path, batch));

        for (const auto& pr : batch.per_policy) {
            out << pr.summary.policy << ": mean " << pr.summary.mean_latency_ms << " ms, std "
                << pr.summary.std_latency_ms << " ms, likability "
                << pr.summary.mean_likability << "\n";
        }
        return 0;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return code_for(e);
    }
}

int cmd_validate(const std::string& template_path, std::ostream& out, std::ostream& err) {
    sim::ScenarioTemplate tmpl;
    try {
        tmpl = config::load_template(template_path);
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    std::vector<std::string> issues = sim::validate(tmpl);
    if (issues.empty()) {
        try {
            const model::Scenario sc = sim::sample(tmpl, 0);
            for (auto& msg : model::validate(sc)) issues.push_back(msg);
        } catch (const error& e) {
            issues.push_back(e.message());
        }
    }

    for (const auto& msg : issues) out << msg << "\n";
    if (issues.empty()) {
        out << template_path << ": ok\n";
        return 0;
    }
    err << template_path << ": " << issues.size() << " problem(s)\n";
    return 1;
}

int cmd_oracle(int seeds, int grid_steps, std::ostream& out, std::ostream& err) {
    try {
        if (seeds < 1 || grid_steps < 1) {
            err << "error: seeds and grid must be >= 1\n";
            return 2;
        }
        bool ok = true;

        // Simplex vs vertex enumeration on random bounded programs.
        constexpr int kLpInstances = 50;
        constexpr double kLpTol = 1e-6;
        double lp_worst = 0.0;
        for (int s = 0; s < kLpInstances; ++s) {
            Rng rng(static_cast<std::uint64_t>(s), 1);
            const int n_vars = static_cast<int>(rng.uniform_int(2, 6));
            const int n_rows = static_cast<int>(rng.uniform_int(1, 8));
            const lp::LinearProgram program = oracle::random_box_lp(rng, n_vars, n_rows);

            const lp::LpSolution sol = lp::solve(program);
            const auto vertex = oracle::vertex_optimum(program);
            if (sol.status != lp::SolveStatus::Optimal || !vertex) {
                err << "lp seed " << s << ": simplex " << lp::to_string(sol.status)
                    << ", vertex oracle " << (vertex ? "found" : "empty") << "\n";
                ok = false;
                continue;
            }
            const double dev =
                std::abs(sol.objective_value - *vertex) / std::max(1.0, std::abs(*vertex));
            lp_worst = std::max(lp_worst, dev);
            if (dev > kLpTol) {
                err << "lp seed " << s << ": simplex " << sol.objective_value << " vs vertex "
                    << *vertex << " (deviation " << dev << ")\n";
                ok = false;
            }
        }
        out << "lp solver vs vertex enumeration: " << kLpInstances
            << " instances, max deviation " << lp_worst << " (tolerance " << kLpTol << ")\n";

        // Stage-1 values vs exhaustive grid search, and split minimality.
        constexpr double kGridTol = 0.02;
        double grid_worst = 0.0;
        int split_violations = 0;
        for (int s = 0; s < seeds; ++s) {
            Rng rng(static_cast<std::uint64_t>(s), 2);
            const model::Scenario sc = oracle::random_scenario(rng, 3, 1 + s % 2);

            for (const auto& gap : oracle::compare_stage1_to_grid(sc, grid_steps)) {
                if (gap.lp_value > gap.grid_value * (1.0 + 1e-9)) {
                    err << "scheduler seed " << s << ", user " << gap.user_id
                        << ": stage-1 " << gap.lp_value << " above grid " << gap.grid_value
                        << "\n";
                    ok = false;
                }
                grid_worst = std::max(grid_worst, gap.gap);
                if (gap.gap > kGridTol) {
                    err << "scheduler seed " << s << ", user " << gap.user_id << ": grid "
                        << gap.grid_value << " vs stage-1 " << gap.lp_value << " (gap "
                        << gap.gap << ")\n";
                    ok = false;
                }
            }

            const scheduler::ProposedResult result = scheduler::schedule_proposed(sc);
            for (const auto& msg : oracle::check_split_minimality(sc, result)) {
                err << "scheduler seed " << s << ": " << msg << "\n";
                ++split_violations;
                ok = false;
            }
        }
        out << "stage-1 vs grid search (1/" << grid_steps << " resolution): " << seeds
            << " instances, max gap " << grid_worst << " (tolerance " << kGridTol << ")\n";
        out << "split minimality: " << seeds << " instances, " << split_violations
            << " violation(s)\n";

        out << (ok ? "PASS" : "FAIL") << "\n";
        return ok ? 0 : 1;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return code_for(e);
    }
}

} // namespace holosched::cli
