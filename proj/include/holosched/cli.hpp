#ifndef HOLOSCHED_CLI_HPP
#define HOLOSCHED_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "holosched/scheduler.hpp"
#include "holosched/sim.hpp"

namespace holosched::cli {

struct RunConfig {
    std::string template_path;
    std::vector<scheduler::Policy> policies;
    std::string out_dir;
    std::vector<std::string> formats;        // subset of csv, md, json
    std::optional<std::uint64_t> seed;       // overrides the template seed
};

/// Exit codes shared by all commands: 0 success, 1 domain or tolerance
/// failure, 2 usage, parse, or I/O failure.
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(const std::string& template_path, std::ostream& out, std::ostream& err);
int cmd_oracle(int seeds, int grid_steps, std::ostream& out, std::ostream& err);

/// latency.csv: run,policy,user,comm_ms,comp_ms,integ_ms,total_ms,splits,
/// ordered by run, then requested policy order, then user id.
std::string latency_csv(const sim::BatchResult& batch);

/// summary.md: one row per policy sorted by ascending mean latency, with the
/// proposed row carrying its reduction against the best baseline.
std::string summary_md(const sim::ScenarioTemplate& tmpl, const std::string& template_path,
                       const sim::BatchResult& batch);

/// series.json: per-run mean/max latency and mean likability per policy,
/// plus scenario hashes for pairing checks.
std::string series_json(const sim::ScenarioTemplate& tmpl, const std::string& template_path,
                        const sim::BatchResult& batch);

/// Writes via a temp file in the same directory, then renames into place.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace holosched::cli

#endif
