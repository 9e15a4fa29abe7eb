#include "holosched/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "holosched/error.hpp"

namespace holosched::model {

namespace {

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

std::string kc(int class_id, int op_id) {
    return "(" + std::to_string(class_id) + "," + std::to_string(op_id) + ")";
}

} // namespace

void InterServerLinks::set(int a, int b, double bits_per_s) {
    if (a == b) fail(errc::invariant_violation, "links: self link (" + std::to_string(a) + ")");
    bw[ordered(a, b)] = bits_per_s;
}

double InterServerLinks::at(int a, int b) const {
    auto it = bw.find(ordered(a, b));
    if (it == bw.end())
        fail(errc::dangling_reference,
             "links: no bandwidth for (" + std::to_string(a) + "," + std::to_string(b) + ")");
    return it->second;
}

bool InterServerLinks::contains(int a, int b) const { return bw.count(ordered(a, b)) > 0; }

const MecServer& Scenario::server(int id) const {
    for (const auto& s : servers)
        if (s.id == id) return s;
    fail(errc::dangling_reference, "scenario: no server with id " + std::to_string(id));
}

const TeleportedUser& Scenario::user(int id) const {
    for (const auto& u : users)
        if (u.id == id) return u;
    fail(errc::dangling_reference, "scenario: no user with id " + std::to_string(id));
}

const DataClass& Scenario::data_class(int id) const {
    for (const auto& c : classes)
        if (c.id == id) return c;
    fail(errc::dangling_reference, "scenario: no data class with id " + std::to_string(id));
}

double split_workload(double base, double overhead, int splits) {
    return base * (1.0 + overhead * (splits - 1));
}

UserLatency user_latency(const Scenario& scenario, const Allocation& alloc) {
    const TeleportedUser& user = scenario.user(alloc.user);
    const DataClass& cls = scenario.data_class(user.task.class_id);

    double sum = 0.0;
    for (const auto& [server_id, x] : alloc.fractions) {
        scenario.server(server_id); // existence check
        if (x < -kFractionSumTol || x > 1.0 + kFractionSumTol)
            fail(errc::invariant_violation, "allocation: fraction " + std::to_string(x) +
                                                " for server " + std::to_string(server_id) +
                                                " outside [0,1]");
        sum += x;
    }
    if (std::abs(sum - 1.0) > kFractionSumTol)
        fail(errc::invariant_violation,
             "allocation: fractions sum to " + std::to_string(sum) + ", expected 1");
    if (alloc.fractions.find(alloc.integrator) == alloc.fractions.end())
        fail(errc::invariant_violation, "allocation: integrator " +
                                            std::to_string(alloc.integrator) +
                                            " has no recorded fraction");
    scenario.server(alloc.integrator);

    // Drop sub-threshold shards and renormalize the rest.
    std::map<int, double> active;
    double active_sum = 0.0;
    for (const auto& [server_id, x] : alloc.fractions) {
        if (x > kSplitEps) {
            active[server_id] = x;
            active_sum += x;
        }
    }
    if (active.empty())
        fail(errc::invariant_violation, "allocation: no fraction above split threshold");
    for (auto& [server_id, x] : active) x /= active_sum;

    const int splits = static_cast<int>(active.size());

    UserLatency out;
    out.splits = splits;

    for (const auto& [server_id, x] : active) {
        const MecServer& server = scenario.server(server_id);

        auto bw_it = user.uplink_bw.find(server_id);
        if (bw_it == user.uplink_bw.end())
            fail(errc::dangling_reference, "user " + std::to_string(user.id) +
                                               ": no uplink bandwidth for server " +
                                               std::to_string(server_id));
        out.comm_s += x * cls.size_bits / bw_it->second;

        double proc = 0.0;
        for (int op_id : user.task.op_ids) {
            auto wl_it = cls.base_workload.find(op_id);
            if (wl_it == cls.base_workload.end())
                fail(errc::dangling_reference, "class " + std::to_string(cls.id) +
                                                   ": no workload for op " + std::to_string(op_id));
            auto cap_it = server.capacity.find({cls.id, op_id});
            if (cap_it == server.capacity.end())
                fail(errc::dangling_reference,
                     "server " + std::to_string(server_id) + ": no capacity for " +
                         kc(cls.id, op_id));
            proc += x * split_workload(wl_it->second, scenario.split_overhead, splits) /
                    cap_it->second;
        }
        out.comp_s = std::max(out.comp_s, proc);

        if (server_id != alloc.integrator)
            out.integ_s += x * cls.size_bits / scenario.links.at(server_id, alloc.integrator);
    }

    out.total_s = out.comm_s + out.comp_s + out.integ_s;
    return out;
}

LatencyReport report(const Scenario& scenario, const Schedule& schedule) {
    if (schedule.allocations.size() != scenario.users.size())
        fail(errc::invariant_violation,
             "schedule: " + std::to_string(schedule.allocations.size()) + " allocations for " +
                 std::to_string(scenario.users.size()) + " users");

    LatencyReport rep;
    for (const auto& alloc : schedule.allocations) {
        if (rep.per_user.count(alloc.user))
            fail(errc::invariant_violation,
                 "schedule: duplicate allocation for user " + std::to_string(alloc.user));
        UserLatency lat = user_latency(scenario, alloc);
        rep.split_counts[alloc.user] = lat.splits;
        rep.max_latency_s = std::max(rep.max_latency_s, lat.total_s);
        rep.per_user[alloc.user] = lat;
    }
    return rep;
}

namespace {

struct Validator {
    std::vector<std::string> issues;

    void check(bool ok, const std::string& message) {
        if (!ok) issues.push_back(message);
    }
};

} // namespace

std::vector<std::string> validate(const Scenario& scenario) {
    Validator v;

    v.check(!scenario.servers.empty(), "scenario.servers: at least one server required");
    v.check(!scenario.users.empty(), "scenario.users: at least one user required");
    v.check(scenario.split_overhead >= 0.0, "scenario.split_overhead: must be >= 0");
    v.check(scenario.local_capacity > 0.0, "scenario.local_capacity: must be > 0");

    std::set<int> server_ids;
    for (const auto& s : scenario.servers) {
        v.check(server_ids.insert(s.id).second,
                "server " + std::to_string(s.id) + ": duplicate id");
        v.check(s.queue_len >= 0, "server " + std::to_string(s.id) + ".queue_len: must be >= 0");
        for (const auto& [key, p] : s.capacity)
            v.check(p > 0.0, "server " + std::to_string(s.id) + ".capacity" +
                                 kc(key.first, key.second) + ": must be > 0");
    }

    std::set<int> op_ids;
    for (const auto& op : scenario.ops)
        v.check(op_ids.insert(op.id).second, "op " + std::to_string(op.id) + ": duplicate id");

    std::set<int> class_ids;
    for (const auto& c : scenario.classes) {
        v.check(class_ids.insert(c.id).second, "class " + std::to_string(c.id) + ": duplicate id");
        v.check(c.size_bits > 0.0, "class " + std::to_string(c.id) + ".size_bits: must be > 0");
        for (const auto& [op_id, work] : c.base_workload) {
            v.check(op_ids.count(op_id) > 0, "class " + std::to_string(c.id) + ".workload: op " +
                                                 std::to_string(op_id) + " not declared");
            v.check(work > 0.0, "class " + std::to_string(c.id) + ".workload[" +
                                    std::to_string(op_id) + "]: must be > 0");
        }
        // Every server must be able to run every declared (class, op) pair.
        for (const auto& [op_id, work] : c.base_workload) {
            (void)work;
            for (const auto& s : scenario.servers) {
                v.check(s.capacity.count({c.id, op_id}) > 0,
                        "server " + std::to_string(s.id) + ": missing capacity for (" +
                            std::to_string(c.id) + "," + std::to_string(op_id) + "," +
                            std::to_string(s.id) + ")");
            }
        }
    }

    std::set<int> user_ids;
    for (const auto& u : scenario.users) {
        const std::string tag = "user " + std::to_string(u.id);
        v.check(user_ids.insert(u.id).second, tag + ": duplicate id");
        v.check(class_ids.count(u.task.class_id) > 0,
                tag + ".task.class_id: no class " + std::to_string(u.task.class_id));
        for (int op_id : u.task.op_ids)
            v.check(op_ids.count(op_id) > 0, tag + ".task.op_ids: no op " + std::to_string(op_id));
        for (const auto& s : scenario.servers) {
            auto it = u.uplink_bw.find(s.id);
            if (it == u.uplink_bw.end()) {
                v.issues.push_back(tag + ".uplink_bw: missing entry for server " +
                                   std::to_string(s.id));
            } else {
                v.check(it->second > 0.0, tag + ".uplink_bw[" + std::to_string(s.id) +
                                              "]: must be > 0, got " + std::to_string(it->second));
            }
        }
    }

    for (std::size_t i = 0; i < scenario.servers.size(); ++i) {
        for (std::size_t j = i + 1; j < scenario.servers.size(); ++j) {
            int a = scenario.servers[i].id;
            int b = scenario.servers[j].id;
            if (!scenario.links.contains(a, b)) {
                v.issues.push_back("links: missing bandwidth for (" + std::to_string(a) + "," +
                                   std::to_string(b) + ")");
            } else {
                v.check(scenario.links.at(a, b) > 0.0,
                        "links[" + std::to_string(a) + "," + std::to_string(b) +
                            "]: must be > 0");
            }
        }
    }

    return v.issues;
}

namespace {

struct Fnv1a {
    std::uint64_t state = 0xcbf29ce484222325ULL;

    void mix(std::uint64_t value) {
        for (int i = 0; i < 8; ++i) {
            state ^= (value >> (8 * i)) & 0xffULL;
            state *= 0x100000001b3ULL;
        }
    }

    void mix(double value) { mix(std::bit_cast<std::uint64_t>(value)); }
    void mix(int value) { mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(value))); }
};

} // namespace

std::uint64_t hash(const Scenario& scenario) {
    Fnv1a h;
    h.mix(static_cast<int>(scenario.servers.size()));
    h.mix(static_cast<int>(scenario.users.size()));
    h.mix(scenario.split_overhead);
    h.mix(scenario.local_capacity);
    h.mix(scenario.rng_seed);
    for (const auto& s : scenario.servers) {
        h.mix(s.id);
        h.mix(s.queue_len);
        for (const auto& [key, p] : s.capacity) {
            h.mix(key.first);
            h.mix(key.second);
            h.mix(p);
        }
    }
    for (const auto& u : scenario.users) {
        h.mix(u.id);
        h.mix(u.task.class_id);
        for (int op_id : u.task.op_ids) h.mix(op_id);
        for (const auto& [server_id, bw] : u.uplink_bw) {
            h.mix(server_id);
            h.mix(bw);
        }
    }
    for (const auto& [key, bw] : scenario.links.bw) {
        h.mix(key.first);
        h.mix(key.second);
        h.mix(bw);
    }
    for (const auto& c : scenario.classes) {
        h.mix(c.id);
        h.mix(c.size_bits);
        for (const auto& [op_id, work] : c.base_workload) {
            h.mix(op_id);
            h.mix(work);
        }
    }
    for (const auto& op : scenario.ops) h.mix(op.id);
    return h.state;
}

} // namespace holosched::model
