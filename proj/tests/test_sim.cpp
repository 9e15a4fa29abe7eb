#include "doctest.h"

#include <string>
#include <vector>

#include "holosched/config.hpp"
#include "holosched/error.hpp"
#include "holosched/model.hpp"
#include "holosched/sim.hpp"

using namespace holosched;

namespace {

sim::ScenarioTemplate small_template() {
    sim::ScenarioTemplate tmpl;
    tmpl.n_servers = 3;
    tmpl.n_users = 2;
    tmpl.n_runs = 4;
    tmpl.rng_seed = 42;
    tmpl.ops = {{0, "render"}};
    tmpl.classes = {{0, 8e7, {{0, 1.5e9}}}};
    return tmpl;
}

sim::ScenarioTemplate pinned_template() {
    auto tmpl = small_template();
    tmpl.uplink_bw = {2e9, 2e9};
    tmpl.inter_bw = {8e9, 8e9};
    tmpl.capacity = {5e9, 5e9};
    return tmpl;
}

bool mentions(const std::vector<std::string>& issues, const std::string& needle) {
    for (const auto& s : issues)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

} // namespace

TEST_CASE("sampling is a pure function of seed and run index") {
    const auto tmpl = small_template();
    CHECK(model::hash(sim::sample(tmpl, 0)) == model::hash(sim::sample(tmpl, 0)));
    CHECK(model::hash(sim::sample(tmpl, 0)) != model::hash(sim::sample(tmpl, 1)));

    auto reseeded = tmpl;
    reseeded.rng_seed = 43;
    CHECK(model::hash(sim::sample(tmpl, 0)) != model::hash(sim::sample(reseeded, 0)));
}

TEST_CASE("sampled scenarios are structurally valid") {
    auto tmpl = small_template();
    tmpl.classes.push_back({1, 4e7, {{0, 9e8}}});
    tmpl.n_users = 3;
    const auto sc = sim::sample(tmpl, 2);
    CHECK(model::validate(sc).empty());
    REQUIRE(sc.users.size() == 3);
    // Users cycle through the class catalog.
    CHECK(sc.users[0].task.class_id == 0);
    CHECK(sc.users[1].task.class_id == 1);
    CHECK(sc.users[2].task.class_id == 0);
    CHECK(sc.rng_seed == tmpl.rng_seed);
}

TEST_CASE("zero-width ranges pin every draw") {
    auto tmpl = pinned_template();
    tmpl.capacity_by_op[0] = {4e9, 4e9};
    const auto sc = sim::sample(tmpl, 7);
    for (const auto& server : sc.servers)
        CHECK(server.capacity.at({0, 0}) == 4e9);
    for (const auto& user : sc.users)
        for (const auto& [_, bw] : user.uplink_bw) CHECK(bw == 2e9);
    for (const auto& [_, bw] : sc.links.bw) CHECK(bw == 8e9);
}

TEST_CASE("template validation names offenders") {
    auto tmpl = small_template();
    tmpl.uplink_bw = {4e9, 1e9};
    tmpl.capacity = {-1.0, 2e9};
    tmpl.capacity_by_op[9] = {1e9, 2e9};
    tmpl.classes.push_back({0, -1.0, {}});
    tmpl.knots = {{0.0, 0.0}, {0.5, 1.0}};
    const auto issues = sim::validate(tmpl);
    CHECK(mentions(issues, "uplink_bw: lo"));
    CHECK(mentions(issues, "capacity: values must stay positive"));
    CHECK(mentions(issues, "capacity override: unknown op 9"));
    CHECK(mentions(issues, "class 0: duplicate id"));
    CHECK(mentions(issues, "class 0.size_bits"));
    CHECK(mentions(issues, "class 0.workload: must not be empty"));
    CHECK(mentions(issues, "knots:"));

    CHECK(sim::validate(small_template()).empty());
    CHECK_THROWS_AS(sim::sample(tmpl, 0), error);
}

TEST_CASE("run_batch pairs every policy on the same draws") {
    const auto tmpl = pinned_template();
    const auto batch = sim::run_batch(
        tmpl, {scheduler::Policy::Proposed, scheduler::Policy::Local});
    REQUIRE(batch.per_policy.size() == 2);
    REQUIRE(batch.scenario_hashes.size() == 4);
    for (const auto& pr : batch.per_policy) {
        CHECK(pr.reports.size() == 4);
        CHECK(pr.summary.n_runs == 4);
    }
    CHECK(batch.per_policy[0].summary.policy == "proposed");
    CHECK(batch.per_policy[1].summary.policy == "local");

    // The summary must equal a fresh aggregation of the stored reports.
    const metrics::LikabilityCurve curve;
    const auto redo = metrics::aggregate(batch.per_policy[0].reports, curve, tmpl.l_ref_s);
    CHECK(batch.per_policy[0].summary.mean_latency_ms ==
          doctest::Approx(redo.mean_latency_ms).epsilon(1e-12));
    CHECK(batch.per_policy[0].summary.mean_likability ==
          doctest::Approx(redo.mean_likability).epsilon(1e-12));

    // All draws identical here, so latency is constant across runs.
    CHECK(batch.per_policy[0].summary.std_latency_ms == doctest::Approx(0.0));
    CHECK_THROWS_AS(sim::run_batch(tmpl, {}), error);
}

TEST_CASE("run_batch wraps policy failures with run context") {
    auto tmpl = pinned_template();
    tmpl.n_servers = 17; // beyond the proposed scheduler's enumeration cap
    tmpl.n_runs = 1;
    CHECK_THROWS_WITH_AS(sim::run_batch(tmpl, {scheduler::Policy::Proposed}),
                         doctest::Contains("run 0, policy proposed"), error);
}

static const char* kIniText = R"(# experiment sheet
[experiment]
n_runs = 12
seed = 7

[topology]
n_servers = 4
n_users = 3
uplink_bw = 1e9 3e9
inter_bw = 6e9 9e9   ; inline comment

[compute]
capacity = 2e9 7e9
capacity.render = 3e9 6e9
local_capacity = 1.5e9
split_overhead = 0.1

[class pointcloud]
size_bits = 9.667e7
workload = preprocess:2.5e8 render:1.8e9

[class mesh]
size_bits = 5e7
workload = render:9e8

[likability]
l_ref = 0.2
knots = 0:0 0.5:0.6 0.75:-0.2 1:1
)";

TEST_CASE("sectioned text parses into a full template") {
    const auto tmpl = config::parse_text(kIniText, "sheet");
    CHECK(tmpl.n_runs == 12);
    CHECK(tmpl.rng_seed == 7);
    CHECK(tmpl.n_servers == 4);
    CHECK(tmpl.n_users == 3);
    CHECK(tmpl.uplink_bw.lo == 1e9);
    CHECK(tmpl.inter_bw.hi == 9e9);
    CHECK(tmpl.local_capacity == 1.5e9);
    CHECK(tmpl.split_overhead == 0.1);
    CHECK(tmpl.l_ref_s == 0.2);

    // Ops take ids in order of first appearance.
    REQUIRE(tmpl.ops.size() == 2);
    CHECK(tmpl.ops[0].name == "preprocess");
    CHECK(tmpl.ops[1].name == "render");

    REQUIRE(tmpl.classes.size() == 2);
    CHECK(tmpl.classes[0].size_bits == 9.667e7);
    CHECK(tmpl.classes[0].base_workload.at(1) == 1.8e9);
    CHECK(tmpl.classes[1].base_workload.at(1) == 9e8);

    // The render override resolved against the interned op id.
    REQUIRE(tmpl.capacity_by_op.size() == 1);
    CHECK(tmpl.capacity_by_op.at(1).lo == 3e9);

    REQUIRE(tmpl.knots.size() == 4);
    CHECK(tmpl.knots[2].r == 0.75);
    CHECK(tmpl.knots[2].score == -0.2);

    CHECK(sim::validate(tmpl).empty());
}

TEST_CASE("parse errors carry file and line") {
    CHECK_THROWS_WITH_AS(config::parse_text("[experiment]\nn_runs = ten\n", "t.ini"),
                         doctest::Contains("t.ini:2: expected an integer"), error);
    CHECK_THROWS_WITH_AS(config::parse_text("[mystery]\n", "t.ini"),
                         doctest::Contains("t.ini:1: unknown section"), error);
    CHECK_THROWS_WITH_AS(config::parse_text("[topology]\nbogus = 1\n", "t.ini"),
                         doctest::Contains("t.ini:2: unknown key 'bogus'"), error);
    CHECK_THROWS_WITH_AS(config::parse_text("stray = 1\n", "t.ini"),
                         doctest::Contains("outside any section"), error);
    CHECK_THROWS_WITH_AS(config::parse_text("[topology]\nuplink_bw = 5\n", "t.ini"),
                         doctest::Contains("expected a range"), error);
    CHECK_THROWS_WITH_AS(
        config::parse_text("[compute]\ncapacity.warp = 1e9 2e9\n", "t.ini"),
        doctest::Contains("capacity override for unknown op 'warp'"), error);
}

TEST_CASE("json form matches the sectioned form") {
    static const char* kJsonText = R"({
      "experiment": {"n_runs": 12, "seed": 7},
      "topology": {"n_servers": 4, "n_users": 3,
                   "uplink_bw": [1e9, 3e9], "inter_bw": [6e9, 9e9]},
      "compute": {"capacity": [2e9, 7e9],
                  "capacity_overrides": {"render": [3e9, 6e9]},
                  "local_capacity": 1.5e9, "split_overhead": 0.1},
      "classes": [
        {"size_bits": 9.667e7, "workload": {"preprocess": 2.5e8, "render": 1.8e9}},
        {"size_bits": 5e7, "workload": {"render": 9e8}}
      ],
      "likability": {"l_ref": 0.2,
                     "knots": [[0, 0], [0.5, 0.6], [0.75, -0.2], [1, 1]]}
    })";
    const auto a = config::parse_text(kIniText, "sheet");
    const auto b = config::parse_json_text(kJsonText, "sheet.json");
    CHECK(b.capacity_by_op.at(1).hi == 6e9);
    for (int run : {0, 1, 2})
        CHECK(model::hash(sim::sample(a, run)) == model::hash(sim::sample(b, run)));

    CHECK_THROWS_AS(config::parse_json_text("{broken", "x.json"), error);
    CHECK_THROWS_AS(config::parse_json_text(R"({"classes":[{"workload":{}}]})", "x.json"),
                    error);
}

TEST_CASE("missing template files raise io errors") {
    try {
        config::load_template("/nonexistent/path.scenario");
        FAIL("expected an exception");
    } catch (const error& e) {
        CHECK(e.code() == errc::io);
    }
}
