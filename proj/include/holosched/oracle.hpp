#ifndef HOLOSCHED_ORACLE_HPP
#define HOLOSCHED_ORACLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "holosched/lp.hpp"
#include "holosched/model.hpp"
#include "holosched/rng.hpp"
#include "holosched/scheduler.hpp"

namespace holosched::oracle {

/// Brute-force check of one user's best latency: walks every fraction vector
/// on the lattice with `steps` divisions per unit, trying each shard-holding
/// server as integrator, and evaluates the exact latency model at each point.
double grid_best_latency(const model::Scenario& scenario, int user_id, int steps);

/// Brute-force linear-program optimum: intersects every n-subset of
/// constraint and bound planes, keeps feasible vertices, and returns the best
/// objective. Exact for bounded programs; nullopt when no vertex is feasible.
std::optional<double> vertex_optimum(const lp::LinearProgram& program);

/// Random program that is feasible and bounded by construction: box bounds,
/// and every row is satisfied with slack at a random interior point.
lp::LinearProgram random_box_lp(Rng& rng, int n_vars, int n_rows);

/// Small random scenario for cross-checking the scheduler against brute
/// force. All draws come from fixed ranges in a fixed order, so a given Rng
/// state always yields the same scenario.
model::Scenario random_scenario(Rng& rng, int n_servers, int n_users);

struct GridGap {
    int user_id = 0;
    double lp_value = 0.0;   // stage-1 optimum for the user
    double grid_value = 0.0; // lattice optimum, never below lp_value
    double gap = 0.0;        // (grid - lp) / grid
};

/// Compares each user's stage-1 value against the lattice optimum.
std::vector<GridGap> compare_stage1_to_grid(const model::Scenario& scenario, int steps);

/// Verifies by exhaustive pattern enumeration (vertex-solved, independent of
/// the simplex path) that no user could meet the stage-2 latency cap with
/// fewer splits than its schedule uses. Returns one message per violation.
std::vector<std::string> check_split_minimality(const model::Scenario& scenario,
                                                const scheduler::ProposedResult& result);

} // namespace holosched::oracle

#endif
