#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "holosched/cli.hpp"
#include "holosched/error.hpp"

using namespace holosched;
namespace fs = std::filesystem;

namespace {

const char* kMiniTemplate = R"([experiment]
n_runs = 3
seed = 5

[topology]
n_servers = 3
n_users = 2
uplink_bw = 1e9 4e9
inter_bw = 5e9 10e9

[compute]
capacity = 1.2e9 8e9
local_capacity = 1e9
split_overhead = 0.7

[class pointcloud]
size_bits = 9.667e7
workload = render:1.8e9
)";

fs::path fresh_dir(const std::string& leaf) {
    const fs::path dir = fs::temp_directory_path() / ("holosched_" + leaf);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

fs::path write_template(const fs::path& dir, const std::string& text) {
    const fs::path path = dir / "mini.scenario";
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

cli::RunConfig mini_config(const fs::path& tmpl, const fs::path& out_dir) {
    cli::RunConfig cfg;
    cfg.template_path = tmpl.string();
    cfg.policies = {scheduler::Policy::Proposed, scheduler::Policy::Jsq};
    cfg.out_dir = out_dir.string();
    cfg.formats = {"csv", "md", "json"};
    return cfg;
}

} // namespace

TEST_CASE("run writes every requested artifact") {
    const auto dir = fresh_dir("run");
    const auto tmpl = write_template(dir, kMiniTemplate);
    std::ostringstream out, err;

    const int rc = cli::cmd_run(mini_config(tmpl, dir / "out"), out, err);
    REQUIRE(rc == 0);
    CHECK(err.str().empty());

    const auto csv = read_file(dir / "out" / "latency.csv");
    const auto rows = lines_of(csv);
    REQUIRE(rows.size() == 1 + 3 * 2 * 2); // header + runs x policies x users
    CHECK(rows[0] == "run,policy,user,comm_ms,comp_ms,integ_ms,total_ms,splits");
    CHECK(rows[1].rfind("0,proposed,0,", 0) == 0);
    CHECK(rows[2].rfind("0,proposed,1,", 0) == 0);
    CHECK(rows[3].rfind("0,jsq,0,", 0) == 0);
    CHECK(rows.back().rfind("2,jsq,1,", 0) == 0);

    const auto md = read_file(dir / "out" / "summary.md");
    CHECK(md.find("| policy | mean latency (ms) |") != std::string::npos);
    CHECK(md.find("| proposed |") != std::string::npos);
    CHECK(md.find("% |") != std::string::npos); // proposed carries a reduction
    CHECK(md.find("mini.scenario") != std::string::npos);

    const auto doc = nlohmann::json::parse(read_file(dir / "out" / "series.json"));
    CHECK(doc["n_runs"] == 3);
    CHECK(doc["seed"] == 5);
    REQUIRE(doc["scenario_hashes"].size() == 3);
    for (const auto& h : doc["scenario_hashes"])
        CHECK(h.get<std::string>().size() == 16);
    REQUIRE(doc["policies"].size() == 2);
    CHECK(doc["policies"][0]["policy"] == "proposed");
    CHECK(doc["policies"][0]["mean_latency_ms"].size() == 3);
    CHECK(doc["policies"][0]["summary"]["n_runs"] == 3);

    // No leftover temp files from the atomic writes.
    for (const auto& entry : fs::directory_iterator(dir / "out"))
        CHECK(entry.path().extension() != ".tmp");
}

TEST_CASE("identical invocations produce identical bytes") {
    const auto dir = fresh_dir("repeat");
    const auto tmpl = write_template(dir, kMiniTemplate);
    std::ostringstream out, err;

    auto cfg_a = mini_config(tmpl, dir / "a");
    auto cfg_b = mini_config(tmpl, dir / "b");
    REQUIRE(cli::cmd_run(cfg_a, out, err) == 0);
    REQUIRE(cli::cmd_run(cfg_b, out, err) == 0);
    CHECK(read_file(dir / "a" / "latency.csv") == read_file(dir / "b" / "latency.csv"));
    CHECK(read_file(dir / "a" / "series.json") == read_file(dir / "b" / "series.json"));
    CHECK(read_file(dir / "a" / "summary.md") == read_file(dir / "b" / "summary.md"));

    // A different seed must change the draws.
    auto cfg_c = mini_config(tmpl, dir / "c");
    cfg_c.seed = 9;
    REQUIRE(cli::cmd_run(cfg_c, out, err) == 0);
    CHECK(read_file(dir / "a" / "latency.csv") != read_file(dir / "c" / "latency.csv"));
}

TEST_CASE("format subsetting limits the artifacts") {
    const auto dir = fresh_dir("formats");
    const auto tmpl = write_template(dir, kMiniTemplate);
    std::ostringstream out, err;

    auto cfg = mini_config(tmpl, dir / "out");
    cfg.formats = {"csv"};
    REQUIRE(cli::cmd_run(cfg, out, err) == 0);
    CHECK(fs::exists(dir / "out" / "latency.csv"));
    CHECK(!fs::exists(dir / "out" / "summary.md"));
    CHECK(!fs::exists(dir / "out" / "series.json"));
}

TEST_CASE("run rejects bad usage with exit 2") {
    const auto dir = fresh_dir("usage");
    const auto tmpl = write_template(dir, kMiniTemplate);
    std::ostringstream out, err;

    auto bad_format = mini_config(tmpl, dir / "out");
    bad_format.formats = {"xml"};
    CHECK(cli::cmd_run(bad_format, out, err) == 2);

    auto no_policy = mini_config(tmpl, dir / "out");
    no_policy.policies.clear();
    CHECK(cli::cmd_run(no_policy, out, err) == 2);

    auto missing = mini_config(dir / "absent.scenario", dir / "out");
    CHECK(cli::cmd_run(missing, out, err) == 2);

    auto malformed = mini_config(write_template(dir, "[experiment]\nn_runs = ten\n"),
                                 dir / "out");
    CHECK(cli::cmd_run(malformed, out, err) == 2);
}

TEST_CASE("validate reports problems and exit codes") {
    const auto dir = fresh_dir("validate");
    std::ostringstream out, err;

    const auto good = write_template(dir, kMiniTemplate);
    CHECK(cli::cmd_validate(good.string(), out, err) == 0);
    CHECK(out.str().find(": ok") != std::string::npos);

    const fs::path bad = dir / "bad.scenario";
    std::ofstream(bad) << "[compute]\ncapacity = -1 2e9\n"
                          "[class c]\nsize_bits = 1e7\nworkload = render:1e9\n";
    std::ostringstream out2, err2;
    CHECK(cli::cmd_validate(bad.string(), out2, err2) == 1);
    CHECK(out2.str().find("capacity: values must stay positive") != std::string::npos);

    std::ostringstream out3, err3;
    CHECK(cli::cmd_validate((dir / "absent.scenario").string(), out3, err3) == 2);
}

TEST_CASE("oracle self-check passes on a small budget") {
    std::ostringstream out, err;
    const int rc = cli::cmd_oracle(3, 50, out, err);
    CHECK(err.str().empty());
    CHECK(rc == 0);
    CHECK(out.str().find("PASS") != std::string::npos);
    CHECK(out.str().find("lp solver vs vertex enumeration") != std::string::npos);
    CHECK(out.str().find("split minimality") != std::string::npos);

    std::ostringstream out2, err2;
    CHECK(cli::cmd_oracle(0, 50, out2, err2) == 2);
}

TEST_CASE("atomic writes replace files whole") {
    const auto dir = fresh_dir("atomic");
    const auto path = dir / "data.txt";
    cli::write_file_atomic(path.string(), "first\n");
    CHECK(read_file(path) == "first\n");
    cli::write_file_atomic(path.string(), "second\n");
    CHECK(read_file(path) == "second\n");
    CHECK(!fs::exists(dir / "data.txt.tmp"));

    CHECK_THROWS_AS(cli::write_file_atomic((dir / "no" / "dir.txt").string(), "x"), error);
}
