#ifndef HOLOSCHED_MODEL_HPP
#define HOLOSCHED_MODEL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace holosched::model {

/// Fractions at or below this threshold do not count as a split; they are
/// zeroed and the remaining mass renormalized before evaluation.
inline constexpr double kSplitEps = 1e-6;

/// Allowed deviation of an allocation's fraction sum from 1.
inline constexpr double kFractionSumTol = 1e-9;

/// A holographic payload class: frame size plus the per-operation work it
/// takes to process one unsplit frame.
struct DataClass {
    int id = 0;
    double size_bits = 0.0;
    std::map<int, double> base_workload; // op id -> operation-units, unsplit
};

struct ComputeOp {
    int id = 0;
    std::string name;
};

struct MecServer {
    int id = 0;
    // (class id, op id) -> operation-units per second
    std::map<std::pair<int, int>, double> capacity;
    int queue_len = 0; // pending jobs; consulted only by the JSQ baseline
};

/// What a teleported user needs processed each frame.
struct UserTask {
    int class_id = 0;
    std::vector<int> op_ids;
};

struct TeleportedUser {
    int id = 0;
    UserTask task;
    std::map<int, double> uplink_bw; // server id -> bits/s
};

/// Symmetric server-to-server bandwidths, keyed by the (lower, upper) id pair.
struct InterServerLinks {
    std::map<std::pair<int, int>, double> bw;

    void set(int a, int b, double bits_per_s);
    double at(int a, int b) const; // throws dangling_reference if absent
    bool contains(int a, int b) const;
};

struct Scenario {
    std::vector<MecServer> servers;
    std::vector<TeleportedUser> users;
    InterServerLinks links;
    std::vector<DataClass> classes;
    std::vector<ComputeOp> ops;
    double split_overhead = 0.05;  // delta: per-extra-split workload inflation
    double local_capacity = 1e9;   // ops/s a user's own device can sustain
    std::uint64_t rng_seed = 0;

    const MecServer& server(int id) const;
    const TeleportedUser& user(int id) const;
    const DataClass& data_class(int id) const;
};

/// One user's placement: task fraction per server plus the server that merges
/// the processed shards. The integrator must appear in `fractions`, possibly
/// with weight zero.
struct Allocation {
    int user = 0;
    std::map<int, double> fractions; // server id -> x in [0, 1]
    int integrator = 0;
};

struct Schedule {
    std::vector<Allocation> allocations; // exactly one per user
};

struct UserLatency {
    double comm_s = 0.0;
    double comp_s = 0.0;
    double integ_s = 0.0;
    double total_s = 0.0;
    int splits = 0;
};

struct LatencyReport {
    std::map<int, UserLatency> per_user;
    double max_latency_s = 0.0;
    std::map<int, int> split_counts;
};

/// Work required per operation when the task is divided into `splits` shards:
/// base * (1 + overhead * (splits - 1)).
double split_workload(double base, double overhead, int splits);

/// Evaluates the total-latency breakdown of one allocation: uplink transfer of
/// each shard, parallel processing across the servers holding shards, and
/// shard transfer into the integration server.
UserLatency user_latency(const Scenario& scenario, const Allocation& alloc);

/// Aggregates user_latency over a full schedule.
LatencyReport report(const Scenario& scenario, const Schedule& schedule);

/// Checks every structural invariant; returns one message per violation,
/// each naming the offending field.
std::vector<std::string> validate(const Scenario& scenario);

/// Order-insensitive content hash; used to confirm that paired policy runs
/// saw identical scenario draws.
std::uint64_t hash(const Scenario& scenario);

} // namespace holosched::model

#endif
