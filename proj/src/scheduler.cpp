#include "holosched/scheduler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "holosched/error.hpp"
#include "holosched/lp.hpp"

namespace holosched::scheduler {

namespace {

std::vector<int> sorted_server_ids(const model::Scenario& scenario) {
    std::vector<int> ids;
    ids.reserve(scenario.servers.size());
    for (const auto& s : scenario.servers) ids.push_back(s.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

double capacity_at(const model::Scenario& scenario, int server_id, int class_id, int op_id) {
    const auto& server = scenario.server(server_id);
    auto it = server.capacity.find({class_id, op_id});
    if (it == server.capacity.end())
        fail(errc::dangling_reference, "server " + std::to_string(server_id) +
                                           ": no capacity for (" + std::to_string(class_id) +
                                           ", " + std::to_string(op_id) + ")");
    return it->second;
}

double uplink_at(const model::TeleportedUser& user, int server_id) {
    auto it = user.uplink_bw.find(server_id);
    if (it == user.uplink_bw.end())
        fail(errc::dangling_reference, "user " + std::to_string(user.id) +
                                           ": no uplink bandwidth to server " +
                                           std::to_string(server_id));
    return it->second;
}

// Seconds per unit fraction the server spends on this user's shard when the
// task is split `splits` ways.
double unit_compute_s(const model::Scenario& scenario, const model::TeleportedUser& user,
                      int server_id, int splits) {
    const auto& cls = scenario.data_class(user.task.class_id);
    double total = 0.0;
    for (int op_id : user.task.op_ids) {
        auto wl = cls.base_workload.find(op_id);
        if (wl == cls.base_workload.end())
            fail(errc::dangling_reference, "class " + std::to_string(cls.id) +
                                               ": no workload for op " + std::to_string(op_id));
        total += model::split_workload(wl->second, scenario.split_overhead, splits) /
                 capacity_at(scenario, server_id, cls.id, op_id);
    }
    return total;
}

Candidate solve_restricted(const model::Scenario& scenario, const model::TeleportedUser& user,
                           const std::vector<int>& support, unsigned mask, int integrator) {
    const std::size_t t = support.size();
    lp::LpSolution sol = lp::solve(restricted_program(scenario, user, support, integrator));
    if (sol.status != lp::SolveStatus::Optimal)
        fail(errc::invariant_violation,
             std::string("restricted placement program came back ") + lp::to_string(sol.status));

    Candidate cand;
    cand.mask = mask;
    cand.integrator = integrator;
    cand.value = sol.objective_value;
    double sum = 0.0;
    for (std::size_t i = 0; i < t; ++i) sum += sol.x[i];
    for (std::size_t i = 0; i < t; ++i) cand.fractions[support[i]] = sol.x[i] / sum;
    return cand;
}

} // namespace

int Candidate::splits() const { return std::popcount(mask); }

// min  sum_i c_i x_i + z
// s.t. sum_i x_i = 1,  w_i x_i <= z,  x >= 0, z >= 0
// where c_i carries upload plus shard-transfer time and w_i the per-fraction
// compute time on support server i.
lp::LinearProgram restricted_program(const model::Scenario& scenario,
                                     const model::TeleportedUser& user,
                                     const std::vector<int>& support, int integrator) {
    const auto& cls = scenario.data_class(user.task.class_id);
    const std::size_t t = support.size();

    lp::LinearProgram program;
    program.objective.assign(t + 1, 0.0);
    program.objective[t] = 1.0;
    for (std::size_t i = 0; i < t; ++i) {
        double c = cls.size_bits / uplink_at(user, support[i]);
        if (support[i] != integrator)
            c += cls.size_bits / scenario.links.at(support[i], integrator);
        program.objective[i] = c;
    }

    lp::Constraint mass;
    mass.coeffs.assign(t + 1, 0.0);
    std::fill(mass.coeffs.begin(), mass.coeffs.begin() + static_cast<std::ptrdiff_t>(t), 1.0);
    mass.rel = lp::Relation::Equal;
    mass.rhs = 1.0;
    program.constraints.push_back(std::move(mass));

    for (std::size_t i = 0; i < t; ++i) {
        lp::Constraint cap;
        cap.coeffs.assign(t + 1, 0.0);
        cap.coeffs[i] = unit_compute_s(scenario, user, support[i], static_cast<int>(t));
        cap.coeffs[t] = -1.0;
        cap.rel = lp::Relation::LessEq;
        cap.rhs = 0.0;
        program.constraints.push_back(std::move(cap));
    }
    return program;
}

std::vector<Candidate> enumerate_candidates(const model::Scenario& scenario,
                                            const model::TeleportedUser& user) {
    const std::vector<int> ids = sorted_server_ids(scenario);
    if (ids.size() > static_cast<std::size_t>(kMaxEnumServers))
        fail(errc::validation, "placement enumeration supports at most " +
                                   std::to_string(kMaxEnumServers) + " servers, got " +
                                   std::to_string(ids.size()));

    std::vector<Candidate> out;
    const unsigned full = (1u << ids.size()) - 1u;
    for (unsigned mask = 1; mask <= full; ++mask) {
        std::vector<int> support;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (mask & (1u << i)) support.push_back(ids[i]);
        for (int g : support) out.push_back(solve_restricted(scenario, user, support, mask, g));
    }
    return out;
}

double stage1_user_bound(const model::Scenario& scenario, int user_id) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cand : enumerate_candidates(scenario, scenario.user(user_id)))
        best = std::min(best, cand.value);
    return best;
}

ProposedResult schedule_proposed(const model::Scenario& scenario) {
    std::vector<std::vector<Candidate>> per_user;
    per_user.reserve(scenario.users.size());

    double stage1 = 0.0;
    for (const auto& user : scenario.users) {
        per_user.push_back(enumerate_candidates(scenario, user));
        double best = std::numeric_limits<double>::infinity();
        for (const auto& cand : per_user.back()) best = std::min(best, cand.value);
        stage1 = std::max(stage1, best);
    }

    const double cap = stage1 * (1.0 + kStage2Slack);
    ProposedResult result;
    result.stage1_l_max = stage1;

    for (std::size_t u = 0; u < scenario.users.size(); ++u) {
        const Candidate* best = nullptr;
        for (const auto& cand : per_user[u]) {
            if (cand.value > cap) continue;
            // Candidates arrive in (mask, integrator) order, so a strict
            // comparison on (splits, value) keeps the lowest mask and
            // integrator among ties.
            if (best == nullptr || cand.splits() < best->splits() ||
                (cand.splits() == best->splits() && cand.value < best->value))
                best = &cand;
        }
        if (best == nullptr)
            fail(errc::invariant_violation,
                 "no placement for user " + std::to_string(scenario.users[u].id) +
                     " meets the stage-1 bound");
        result.schedule.allocations.push_back(
            {scenario.users[u].id, best->fractions, best->integrator});
    }

    result.achieved_l_max = model::report(scenario, result.schedule).max_latency_s;
    return result;
}

model::Schedule schedule_split_evenly(const model::Scenario& scenario) {
    const std::vector<int> ids = sorted_server_ids(scenario);
    const double share = 1.0 / static_cast<double>(ids.size());
    const auto integ_for = [&](const model::DataClass& cls, int g) {
        double total = 0.0;
        for (int m : ids)
            if (m != g) total += share * cls.size_bits / scenario.links.at(m, g);
        return total;
    };

    model::Schedule schedule;
    for (const auto& user : scenario.users) {
        model::Allocation alloc;
        alloc.user = user.id;
        for (int id : ids) alloc.fractions[id] = share;

        const auto& cls = scenario.data_class(user.task.class_id);
        int best = ids.front();
        double best_integ = integ_for(cls, best);
        for (int id : ids) {
            const double v = integ_for(cls, id);
            if (v < best_integ) {
                best = id;
                best_integ = v;
            }
        }
        alloc.integrator = best;
        schedule.allocations.push_back(std::move(alloc));
    }
    return schedule;
}

JsqResult schedule_jsq(const model::Scenario& scenario) {
    const std::vector<int> ids = sorted_server_ids(scenario);
    std::map<int, int> queue;
    for (int id : ids) queue[id] = scenario.server(id).queue_len;

    std::vector<const model::TeleportedUser*> users;
    for (const auto& user : scenario.users) users.push_back(&user);
    std::sort(users.begin(), users.end(),
              [](const auto* a, const auto* b) { return a->id < b->id; });

    JsqResult result;
    for (const auto* user : users) {
        int target = ids.front();
        for (int id : ids)
            if (queue[id] < queue[target]) target = id;
        result.wait_s[user->id] = queue[target] * unit_compute_s(scenario, *user, target, 1);
        queue[target] += 1;
        result.schedule.allocations.push_back({user->id, {{target, 1.0}}, target});
    }
    return result;
}

LocalResult schedule_local(const model::Scenario& scenario) {
    LocalResult result;
    result.augmented = scenario;

    const std::vector<int> ids = sorted_server_ids(scenario);
    int next_id = 0;
    for (const auto& s : scenario.servers) next_id = std::max(next_id, s.id + 1);

    for (std::size_t u = 0; u < scenario.users.size(); ++u) {
        const auto& user = scenario.users[u];
        const int vid = next_id + static_cast<int>(u);

        model::MecServer device;
        device.id = vid;
        for (const auto& cls : scenario.classes)
            for (const auto& [op_id, _] : cls.base_workload)
                device.capacity[{cls.id, op_id}] = scenario.local_capacity;
        result.augmented.servers.push_back(std::move(device));
        result.augmented.users[u].uplink_bw[vid] = std::numeric_limits<double>::infinity();

        // The rendered frame still travels once to the user's best-bandwidth
        // server for synchronization, so that server integrates a zero-weight
        // shard at the device's uplink rate.
        int sync = ids.front();
        for (int id : ids)
            if (uplink_at(user, id) > uplink_at(user, sync)) sync = id;
        result.augmented.links.set(vid, sync, uplink_at(user, sync));

        result.schedule.allocations.push_back(
            {user.id, {{vid, 1.0}, {sync, 0.0}}, sync});
    }
    return result;
}

PolicyOutcome apply(Policy policy, const model::Scenario& scenario) {
    switch (policy) {
        case Policy::Proposed: {
            ProposedResult r = schedule_proposed(scenario);
            return {r.schedule, model::report(scenario, r.schedule)};
        }
        case Policy::SplitEvenly: {
            model::Schedule s = schedule_split_evenly(scenario);
            model::LatencyReport report = model::report(scenario, s);
            return {std::move(s), std::move(report)};
        }
        case Policy::Jsq: {
            JsqResult r = schedule_jsq(scenario);
            model::LatencyReport report = model::report(scenario, r.schedule);
            for (auto& [user_id, lat] : report.per_user) {
                const double wait = r.wait_s.at(user_id);
                lat.comp_s += wait;
                lat.total_s += wait;
            }
            report.max_latency_s = 0.0;
            for (const auto& [_, lat] : report.per_user)
                report.max_latency_s = std::max(report.max_latency_s, lat.total_s);
            return {std::move(r.schedule), std::move(report)};
        }
        case Policy::Local: {
            LocalResult r = schedule_local(scenario);
            return {r.schedule, model::report(r.augmented, r.schedule)};
        }
    }
    fail(errc::validation, "unknown policy");
}

Policy policy_from_string(const std::string& name) {
    if (name == "proposed") return Policy::Proposed;
    if (name == "jsq") return Policy::Jsq;
    if (name == "split") return Policy::SplitEvenly;
    if (name == "local") return Policy::Local;
    fail(errc::validation,
         "unknown policy '" + name + "' (expected proposed, jsq, split, or local)");
}

const char* to_string(Policy policy) noexcept {
    switch (policy) {
        case Policy::Proposed: return "proposed";
        case Policy::Jsq: return "jsq";
        case Policy::SplitEvenly: return "split";
        case Policy::Local: return "local";
    }
    return "unknown";
}

} // namespace holosched::scheduler
