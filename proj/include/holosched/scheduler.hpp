#ifndef HOLOSCHED_SCHEDULER_HPP
#define HOLOSCHED_SCHEDULER_HPP

#include <map>
#include <string>
#include <vector>

#include "holosched/lp.hpp"
#include "holosched/model.hpp"

namespace holosched::scheduler {

/// Relative slack on the stage-1 bound when stage 2 hunts for the
/// fewest-splits allocation that still meets it.
inline constexpr double kStage2Slack = 1e-6;

/// The proposed scheduler enumerates server subsets per user; cap the
/// enumeration so it stays tractable.
inline constexpr int kMaxEnumServers = 16;

enum class Policy { Proposed, Jsq, SplitEvenly, Local };

Policy policy_from_string(const std::string& name); // proposed|jsq|split|local
const char* to_string(Policy policy) noexcept;

/// One candidate placement for a user: a support set of servers (bitmask over
/// servers in ascending-id order), an integrator from that set, the optimum of
/// the restricted min-latency program, and the fractions attaining it.
struct Candidate {
    unsigned mask = 0;
    int integrator = 0;
    double value = 0.0;
    std::map<int, double> fractions;
    int splits() const;
};

/// Minimum-latency program for one user restricted to `support` (ascending
/// server ids) with integrator `integrator` from that set. Variables are the
/// support fractions followed by the compute-time bound; the optimum equals
/// the lowest latency reachable on exactly that support.
lp::LinearProgram restricted_program(const model::Scenario& scenario,
                                     const model::TeleportedUser& user,
                                     const std::vector<int>& support, int integrator);

/// Solves the restricted linear program for every (support, integrator) pair
/// of one user, in (mask, integrator id) order.
std::vector<Candidate> enumerate_candidates(const model::Scenario& scenario,
                                            const model::TeleportedUser& user);

/// Best achievable latency for one user over all candidate placements; this
/// is the user's stage-1 value.
double stage1_user_bound(const model::Scenario& scenario, int user_id);

struct ProposedResult {
    model::Schedule schedule;
    double stage1_l_max = 0.0;   // minimized maximum latency from stage 1
    double achieved_l_max = 0.0; // model re-evaluation of the final schedule
};

/// Two-stage scheduler. Stage 1 finds the smallest maximum latency any
/// schedule can reach. Stage 2 gives each user the fewest-splits placement
/// whose latency stays within kStage2Slack of that bound, breaking ties by
/// lower latency, then lower support mask, then lower integrator id.
ProposedResult schedule_proposed(const model::Scenario& scenario);

/// Every user splits evenly across all servers; the integrator is the server
/// whose integration time is smallest (lowest id on ties).
model::Schedule schedule_split_evenly(const model::Scenario& scenario);

struct JsqResult {
    model::Schedule schedule;
    std::map<int, double> wait_s; // user id -> queueing delay ahead of it
};

/// Users in id order each join the server with the shortest queue (lowest id
/// on ties). The wait equals jobs-ahead times this user's own service time.
JsqResult schedule_jsq(const model::Scenario& scenario);

struct LocalResult {
    model::Scenario augmented; // scenario plus one device-server per user
    model::Schedule schedule;
};

/// Every user computes on its own device: a synthetic server with the
/// scenario's local_capacity, reached at infinite bandwidth.
LocalResult schedule_local(const model::Scenario& scenario);

struct PolicyOutcome {
    model::Schedule schedule;
    model::LatencyReport report;
};

/// Runs one policy end to end and evaluates the resulting latencies,
/// including any policy-specific terms (JSQ queueing, local device compute).
PolicyOutcome apply(Policy policy, const model::Scenario& scenario);

} // namespace holosched::scheduler

#endif
