#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "holosched/config.hpp"
#include "holosched/error.hpp"
#include "holosched/metrics.hpp"
#include "holosched/model.hpp"
#include "holosched/scheduler.hpp"
#include "holosched/sim.hpp"

namespace py = pybind11;
using namespace holosched;

PYBIND11_MODULE(_holosched, m) {
    m.doc() = "Task-splitting scheduler and latency simulator for MEC-assisted "
              "holographic streaming";

    py::register_exception<error>(m, "HoloschedError");

    py::class_<model::UserLatency>(m, "UserLatency")
        .def_readonly("comm_s", &model::UserLatency::comm_s)
        .def_readonly("comp_s", &model::UserLatency::comp_s)
        .def_readonly("integ_s", &model::UserLatency::integ_s)
        .def_readonly("total_s", &model::UserLatency::total_s)
        .def_readonly("splits", &model::UserLatency::splits);

    py::class_<model::LatencyReport>(m, "LatencyReport")
        .def_readonly("per_user", &model::LatencyReport::per_user)
        .def_readonly("max_latency_s", &model::LatencyReport::max_latency_s)
        .def_readonly("split_counts", &model::LatencyReport::split_counts);

    py::class_<model::Allocation>(m, "Allocation")
        .def_readonly("user", &model::Allocation::user)
        .def_readonly("fractions", &model::Allocation::fractions)
        .def_readonly("integrator", &model::Allocation::integrator);

    py::class_<model::Schedule>(m, "Schedule")
        .def_readonly("allocations", &model::Schedule::allocations);

    py::class_<model::Scenario>(m, "Scenario")
        .def_property_readonly("n_servers",
                               [](const model::Scenario& s) { return s.servers.size(); })
        .def_property_readonly("n_users",
                               [](const model::Scenario& s) { return s.users.size(); })
        .def_readonly("split_overhead", &model::Scenario::split_overhead)
        .def_readonly("local_capacity", &model::Scenario::local_capacity);

    m.def("validate_scenario", &model::validate, py::arg("scenario"),
          "List every violated scenario invariant");
    m.def("scenario_hash", &model::hash, py::arg("scenario"));

    py::class_<sim::Range>(m, "Range")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readwrite("lo", &sim::Range::lo)
        .def_readwrite("hi", &sim::Range::hi);

    py::class_<sim::ScenarioTemplate>(m, "ScenarioTemplate")
        .def(py::init<>())
        .def_readwrite("n_servers", &sim::ScenarioTemplate::n_servers)
        .def_readwrite("n_users", &sim::ScenarioTemplate::n_users)
        .def_readwrite("n_runs", &sim::ScenarioTemplate::n_runs)
        .def_readwrite("seed", &sim::ScenarioTemplate::rng_seed)
        .def_readwrite("uplink_bw", &sim::ScenarioTemplate::uplink_bw)
        .def_readwrite("inter_bw", &sim::ScenarioTemplate::inter_bw)
        .def_readwrite("capacity", &sim::ScenarioTemplate::capacity)
        .def_readwrite("split_overhead", &sim::ScenarioTemplate::split_overhead)
        .def_readwrite("local_capacity", &sim::ScenarioTemplate::local_capacity)
        .def_readwrite("l_ref_s", &sim::ScenarioTemplate::l_ref_s);

    py::class_<metrics::PolicyResult>(m, "PolicyResult")
        .def_readonly("policy", &metrics::PolicyResult::policy)
        .def_readonly("mean_latency_ms", &metrics::PolicyResult::mean_latency_ms)
        .def_readonly("std_latency_ms", &metrics::PolicyResult::std_latency_ms)
        .def_readonly("mean_likability", &metrics::PolicyResult::mean_likability)
        .def_readonly("std_likability", &metrics::PolicyResult::std_likability)
        .def_readonly("n_runs", &metrics::PolicyResult::n_runs);

    py::class_<scheduler::ProposedResult>(m, "ProposedResult")
        .def_readonly("schedule", &scheduler::ProposedResult::schedule)
        .def_readonly("stage1_l_max", &scheduler::ProposedResult::stage1_l_max)
        .def_readonly("achieved_l_max", &scheduler::ProposedResult::achieved_l_max);

    py::class_<scheduler::PolicyOutcome>(m, "PolicyOutcome")
        .def_readonly("schedule", &scheduler::PolicyOutcome::schedule)
        .def_readonly("report", &scheduler::PolicyOutcome::report);

    m.def("load_template", &config::load_template, py::arg("path"),
          "Read a scenario template (.json or key/value format)");
    m.def("validate_template", &sim::validate, py::arg("template"));
    m.def("sample", &sim::sample, py::arg("template"), py::arg("run_index"),
          "Draw one scenario from the template");
    m.def("schedule_proposed", &scheduler::schedule_proposed, py::arg("scenario"));
    m.def(
        "apply",
        [](const std::string& policy, const model::Scenario& sc) {
            return scheduler::apply(scheduler::policy_from_string(policy), sc);
        },
        py::arg("policy"), py::arg("scenario"),
        "Run one policy (proposed, jsq, split, local) and report latencies");
    m.def(
        "run_batch",
        [](const sim::ScenarioTemplate& tmpl, const std::vector<std::string>& names) {
            std::vector<scheduler::Policy> policies;
            for (const auto& n : names)
                policies.push_back(scheduler::policy_from_string(n));
            std::vector<metrics::PolicyResult> out;
            for (const auto& pr : sim::run_batch(tmpl, policies).per_policy)
                out.push_back(pr.summary);
            return out;
        },
        py::arg("template"), py::arg("policies"),
        "Evaluate policies on paired scenario draws; returns one summary per policy");
    m.def("resemblance", &metrics::resemblance, py::arg("latency_s"),
          py::arg("l_ref_s") = metrics::kDefaultLRefS);
    m.def(
        "likability",
        [](double latency_s, double l_ref_s) {
            static const metrics::LikabilityCurve curve;
            return metrics::likability(latency_s, curve, l_ref_s);
        },
        py::arg("latency_s"), py::arg("l_ref_s") = metrics::kDefaultLRefS,
        "Latency mapped through resemblance onto the default likability curve");
}
