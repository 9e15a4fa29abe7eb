#ifndef HOLOSCHED_SIM_HPP
#define HOLOSCHED_SIM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "holosched/metrics.hpp"
#include "holosched/model.hpp"
#include "holosched/scheduler.hpp"

namespace holosched::sim {

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

/// Everything an experiment randomizes or fixes. One template plus a run
/// index pins down a scenario exactly.
struct ScenarioTemplate {
    int n_servers = 3;
    int n_users = 2;
    int n_runs = 100;
    std::uint64_t rng_seed = 0;

    Range uplink_bw{1e9, 4e9};  // user -> server, bits/s
    Range inter_bw{5e9, 10e9};  // server <-> server, bits/s
    Range capacity{1e9, 8e9};   // ops/s, applies to every (class, op)
    std::map<int, Range> capacity_by_op; // per-op override of `capacity`

    std::vector<model::DataClass> classes; // users cycle through these by id order
    std::vector<model::ComputeOp> ops;

    double split_overhead = 0.05;
    double local_capacity = 1e9;

    double l_ref_s = metrics::kDefaultLRefS;
    std::vector<metrics::Knot> knots; // empty -> default likability curve
};

/// One message per violated template invariant (bad ranges, empty catalog,
/// dangling op references, malformed knots).
std::vector<std::string> validate(const ScenarioTemplate& tmpl);

/// Draws scenario number `run_index` from the template. Sampling order is
/// fixed (server capacities, then user uplinks, then links), so the result
/// depends only on (rng_seed, run_index).
model::Scenario sample(const ScenarioTemplate& tmpl, int run_index);

struct PolicyRuns {
    scheduler::Policy policy = scheduler::Policy::Proposed;
    std::vector<model::LatencyReport> reports; // indexed by run
    metrics::PolicyResult summary;
};

struct BatchResult {
    std::vector<PolicyRuns> per_policy;            // in requested order
    std::vector<std::uint64_t> scenario_hashes;    // per run, shared by all policies
};

/// Evaluates every policy on the same n_runs scenario draws and aggregates.
BatchResult run_batch(const ScenarioTemplate& tmpl,
                      const std::vector<scheduler::Policy>& policies);

} // namespace holosched::sim

#endif
