#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "holosched/cli.hpp"
#include "holosched/error.hpp"
#include "holosched/metrics.hpp"

namespace holosched::cli {

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string hex64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

std::string latency_csv(const sim::BatchResult& batch) {
    std::ostringstream out;
    out << "run,policy,user,comm_ms,comp_ms,integ_ms,total_ms,splits\n";
    const std::size_t n_runs = batch.scenario_hashes.size();
    for (std::size_t run = 0; run < n_runs; ++run) {
        for (const auto& pr : batch.per_policy) {
            const auto& report = pr.reports.at(run);
            for (const auto& [user_id, lat] : report.per_user) {
                out << run << ',' << scheduler::to_string(pr.policy) << ',' << user_id << ','
                    << fixed(lat.comm_s * 1e3, 6) << ',' << fixed(lat.comp_s * 1e3, 6) << ','
                    << fixed(lat.integ_s * 1e3, 6) << ',' << fixed(lat.total_s * 1e3, 6)
                    << ',' << lat.splits << '\n';
            }
        }
    }
    return out.str();
}

std::string summary_md(const sim::ScenarioTemplate& tmpl, const std::string& template_path,
                       const sim::BatchResult& batch) {
    std::vector<const sim::PolicyRuns*> rows;
    for (const auto& pr : batch.per_policy) rows.push_back(&pr);
    std::sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) {
        if (a->summary.mean_latency_ms != b->summary.mean_latency_ms)
            return a->summary.mean_latency_ms < b->summary.mean_latency_ms;
        return a->summary.policy < b->summary.policy;
    });

    double best_baseline = std::numeric_limits<double>::infinity();
    bool has_proposed = false;
    for (const auto* pr : rows) {
        if (pr->policy == scheduler::Policy::Proposed)
            has_proposed = true;
        else
            best_baseline = std::min(best_baseline, pr->summary.mean_latency_ms);
    }

    std::ostringstream out;
    out << "# Latency and likability summary\n\n";
    out << "Template: " << template_path << " (seed " << tmpl.rng_seed << ", " << tmpl.n_runs
        << " runs, " << tmpl.n_users << " users, " << tmpl.n_servers << " servers)\n\n";
    out << "| policy | mean latency (ms) | std (ms) | mean likability | reduction vs best "
           "baseline |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto* pr : rows) {
        const auto& s = pr->summary;
        out << "| " << s.policy << " | " << fixed(s.mean_latency_ms, 1) << " | "
            << fixed(s.std_latency_ms, 1) << " | " << fixed(s.mean_likability, 3) << " | ";
        if (pr->policy == scheduler::Policy::Proposed && has_proposed &&
            std::isfinite(best_baseline) && best_baseline > 0.0) {
            out << fixed(100.0 * (1.0 - s.mean_latency_ms / best_baseline), 1) << "% |\n";
        } else {
            out << "- |\n";
        }
    }
    return out.str();
}

std::string series_json(const sim::ScenarioTemplate& tmpl, const std::string& template_path,
                        const sim::BatchResult& batch) {
    const metrics::LikabilityCurve curve =
        tmpl.knots.empty() ? metrics::LikabilityCurve() : metrics::LikabilityCurve(tmpl.knots);

    nlohmann::json doc;
    doc["template"] = template_path;
    doc["seed"] = tmpl.rng_seed;
    doc["n_runs"] = tmpl.n_runs;
    doc["l_ref_s"] = tmpl.l_ref_s;
    doc["scenario_hashes"] = nlohmann::json::array();
    for (auto h : batch.scenario_hashes) doc["scenario_hashes"].push_back(hex64(h));

    doc["policies"] = nlohmann::json::array();
    for (const auto& pr : batch.per_policy) {
        nlohmann::json jp;
        jp["policy"] = scheduler::to_string(pr.policy);
        auto& mean_ms = jp["mean_latency_ms"] = nlohmann::json::array();
        auto& max_ms = jp["max_latency_ms"] = nlohmann::json::array();
        auto& score = jp["mean_likability"] = nlohmann::json::array();
        for (const auto& report : pr.reports) {
            double sum = 0.0, like = 0.0;
            for (const auto& [_, lat] : report.per_user) {
                sum += lat.total_s;
                like += metrics::likability(lat.total_s, curve, tmpl.l_ref_s);
            }
            const double n = static_cast<double>(report.per_user.size());
            mean_ms.push_back(sum / n * 1e3);
            max_ms.push_back(report.max_latency_s * 1e3);
            score.push_back(like / n);
        }
        jp["summary"] = {{"mean_latency_ms", pr.summary.mean_latency_ms},
                         {"std_latency_ms", pr.summary.std_latency_ms},
                         {"mean_likability", pr.summary.mean_likability},
                         {"std_likability", pr.summary.std_likability},
                         {"n_runs", pr.summary.n_runs}};
        doc["policies"].push_back(std::move(jp));
    }
    return doc.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(errc::io, "cannot open '" + tmp + "' for writing");
        out << content;
        out.flush();
        if (!out) fail(errc::io, "failed writing '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) fail(errc::io, "cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

} // namespace holosched::cli
