#include "holosched/sim.hpp"

#include <set>
#include <sstream>

#include "holosched/error.hpp"
#include "holosched/rng.hpp"

namespace holosched::sim {

namespace {

void check_range(std::vector<std::string>& out, const char* name, const Range& r,
                 bool positive) {
    if (r.lo > r.hi)
        out.push_back(std::string(name) + ": lo " + std::to_string(r.lo) + " exceeds hi " +
                      std::to_string(r.hi));
    if (positive && r.lo <= 0.0)
        out.push_back(std::string(name) + ": values must stay positive, lo is " +
                      std::to_string(r.lo));
}

} // namespace

std::vector<std::string> validate(const ScenarioTemplate& tmpl) {
    std::vector<std::string> out;
    if (tmpl.n_servers < 1) out.push_back("n_servers: must be >= 1");
    if (tmpl.n_users < 1) out.push_back("n_users: must be >= 1");
    if (tmpl.n_runs < 1) out.push_back("n_runs: must be >= 1");
    check_range(out, "uplink_bw", tmpl.uplink_bw, true);
    check_range(out, "inter_bw", tmpl.inter_bw, true);
    check_range(out, "capacity", tmpl.capacity, true);
    if (tmpl.split_overhead < 0.0) out.push_back("split_overhead: must be >= 0");
    if (tmpl.local_capacity <= 0.0) out.push_back("local_capacity: must be > 0");
    if (tmpl.l_ref_s <= 0.0) out.push_back("l_ref: must be > 0");

    std::set<int> op_ids;
    for (const auto& op : tmpl.ops)
        if (!op_ids.insert(op.id).second)
            out.push_back("ops: duplicate id " + std::to_string(op.id));
    for (const auto& [op_id, range] : tmpl.capacity_by_op) {
        if (!op_ids.count(op_id))
            out.push_back("capacity override: unknown op " + std::to_string(op_id));
        check_range(out, "capacity override", range, true);
    }

    if (tmpl.classes.empty()) out.push_back("classes: at least one class required");
    std::set<int> class_ids;
    for (const auto& cls : tmpl.classes) {
        const std::string where = "class " + std::to_string(cls.id);
        if (!class_ids.insert(cls.id).second) out.push_back(where + ": duplicate id");
        if (cls.size_bits <= 0.0) out.push_back(where + ".size_bits: must be > 0");
        if (cls.base_workload.empty()) out.push_back(where + ".workload: must not be empty");
        for (const auto& [op_id, units] : cls.base_workload) {
            if (!op_ids.count(op_id))
                out.push_back(where + ".workload: unknown op " + std::to_string(op_id));
            if (units <= 0.0)
                out.push_back(where + ".workload: op " + std::to_string(op_id) +
                              " units must be > 0");
        }
    }

    if (!tmpl.knots.empty()) {
        try {
            metrics::LikabilityCurve curve(tmpl.knots);
        } catch (const error& e) {
            out.push_back("knots: " + e.message());
        }
    }
    return out;
}

model::Scenario sample(const ScenarioTemplate& tmpl, int run_index) {
    const auto issues = validate(tmpl);
    if (!issues.empty()) fail(errc::validation, "template: " + issues.front());
    if (run_index < 0) fail(errc::validation, "run_index must be >= 0");

    Rng rng(tmpl.rng_seed, static_cast<std::uint64_t>(run_index));

    model::Scenario sc;
    sc.classes = tmpl.classes;
    sc.ops = tmpl.ops;
    sc.split_overhead = tmpl.split_overhead;
    sc.local_capacity = tmpl.local_capacity;
    sc.rng_seed = tmpl.rng_seed;

    for (int i = 0; i < tmpl.n_servers; ++i) {
        model::MecServer server;
        server.id = i;
        for (const auto& cls : tmpl.classes) {
            for (const auto& [op_id, _] : cls.base_workload) {
                auto ov = tmpl.capacity_by_op.find(op_id);
                const Range& r = ov == tmpl.capacity_by_op.end() ? tmpl.capacity : ov->second;
                server.capacity[{cls.id, op_id}] = rng.uniform(r.lo, r.hi);
            }
        }
        sc.servers.push_back(std::move(server));
    }

    for (int i = 0; i < tmpl.n_users; ++i) {
        model::TeleportedUser user;
        user.id = i;
        const auto& cls = tmpl.classes[static_cast<std::size_t>(i) % tmpl.classes.size()];
        user.task.class_id = cls.id;
        for (const auto& [op_id, _] : cls.base_workload) user.task.op_ids.push_back(op_id);
        for (int m = 0; m < tmpl.n_servers; ++m)
            user.uplink_bw[m] = rng.uniform(tmpl.uplink_bw.lo, tmpl.uplink_bw.hi);
        sc.users.push_back(std::move(user));
    }

    for (int a = 0; a < tmpl.n_servers; ++a)
        for (int b = a + 1; b < tmpl.n_servers; ++b)
            sc.links.set(a, b, rng.uniform(tmpl.inter_bw.lo, tmpl.inter_bw.hi));

    return sc;
}

BatchResult run_batch(const ScenarioTemplate& tmpl,
                      const std::vector<scheduler::Policy>& policies) {
    if (policies.empty()) fail(errc::validation, "run_batch needs at least one policy");
    const auto issues = validate(tmpl);
    if (!issues.empty()) fail(errc::validation, "template: " + issues.front());

    const metrics::LikabilityCurve curve =
        tmpl.knots.empty() ? metrics::LikabilityCurve() : metrics::LikabilityCurve(tmpl.knots);

    BatchResult batch;
    batch.per_policy.resize(policies.size());
    for (std::size_t p = 0; p < policies.size(); ++p)
        batch.per_policy[p].policy = policies[p];

    for (int run = 0; run < tmpl.n_runs; ++run) {
        const model::Scenario sc = sample(tmpl, run);
        const std::uint64_t h = model::hash(sc);
        batch.scenario_hashes.push_back(h);

        for (std::size_t p = 0; p < policies.size(); ++p) {
            try {
                batch.per_policy[p].reports.push_back(
                    scheduler::apply(policies[p], sc).report);
            } catch (const error& e) {
                fail(e.code(), "run " + std::to_string(run) + ", policy " +
                                   scheduler::to_string(policies[p]) + ": " + e.message());
            }
            if (model::hash(sc) != h)
                fail(errc::invariant_violation,
                     "run " + std::to_string(run) + ": scenario changed under policy " +
                         std::string(scheduler::to_string(policies[p])));
        }
    }

    for (auto& pr : batch.per_policy) {
        pr.summary = metrics::aggregate(pr.reports, curve, tmpl.l_ref_s);
        pr.summary.policy = scheduler::to_string(pr.policy);
    }
    return batch;
}

} // namespace holosched::sim
