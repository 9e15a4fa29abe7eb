#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "holosched/cli.hpp"
#include "holosched/error.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"holosched: task-splitting scheduler and latency simulator for "
                 "MEC-assisted holographic streaming"};
    app.require_subcommand(1);

    std::string template_path;
    std::string policies_arg = "proposed,jsq,split,local";
    std::string out_dir;
    std::string formats_arg = "csv,md,json";
    std::uint64_t seed = 0;

    auto* run = app.add_subcommand("run", "sample scenarios, schedule, and write results");
    run->add_option("--template", template_path, "scenario template file")->required();
    run->add_option("--policies", policies_arg, "comma list: proposed,jsq,split,local");
    run->add_option("--out", out_dir, "output directory")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override the template seed");
    run->add_option("--formats", formats_arg, "comma list: csv,md,json");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "check a template and its first draw");
    validate->add_option("template", validate_path, "scenario template file")->required();

    int oracle_seeds = 20;
    int oracle_grid = 50;
    auto* oracle = app.add_subcommand("oracle", "cross-check solver and scheduler against "
                                                "brute force");
    oracle->add_option("--seeds", oracle_seeds, "number of seeded instances");
    oracle->add_option("--grid", oracle_grid, "grid divisions per unit fraction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            holosched::cli::RunConfig config;
            config.template_path = template_path;
            config.out_dir = out_dir;
            config.formats = split_csv(formats_arg);
            for (const auto& name : split_csv(policies_arg)) {
                try {
                    config.policies.push_back(holosched::scheduler::policy_from_string(name));
                } catch (const holosched::error& e) {
                    std::cerr << "error: " << e.message() << "\n";
                    return 2;
                }
            }

            if (seed_opt->count() > 0) {
                config.seed = seed;
            } else if (const char* env = std::getenv("HOLOSCHED_SEED")) {
                try {
                    config.seed = std::stoull(env);
                } catch (const std::exception&) {
                    std::cerr << "error: HOLOSCHED_SEED is not an integer: '" << env << "'\n";
                    return 2;
                }
            }
            return holosched::cli::cmd_run(config, std::cout, std::cerr);
        }
        if (validate->parsed())
            return holosched::cli::cmd_validate(validate_path, std::cout, std::cerr);
        if (oracle->parsed())
            return holosched::cli::cmd_oracle(oracle_seeds, oracle_grid, std::cout, std::cerr);
    } catch (const holosched::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == holosched::errc::parse || e.code() == holosched::errc::io ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
