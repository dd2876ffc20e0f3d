#include <CLI11.hpp>

#include <iostream>

#include "colsafe/app/commands.hpp"

int main(int argc, char** argv) {
    using namespace colsafe::app;

    CLI::App app{"Safe policy-parameter optimization with Nadaraya-Watson confidence bounds"};
    app.require_subcommand(1);

    std::string config;
    CliOverrides overrides;
    std::uint64_t seed = 0;
    std::string out;
    colsafe::Index repeats = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "experiment config (YAML)")->required();
        sub->add_option("--seed", seed, "override run.seed");
        sub->add_option("--out", out, "override run.output");
        sub->add_option("--repeats", repeats, "override run.repeats");
    };
    auto* run = app.add_subcommand("run", "run one method and write trace.csv, summary.json, safe_set_final.csv");
    auto* compare = app.add_subcommand("compare", "run every method in `compare` and write timing.csv");
    auto* verify = app.add_subcommand("verify-bounds", "Monte-Carlo check of the concentration bounds");
    for (auto* sub : {run, compare, verify}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    auto* active = app.get_subcommands().front();
    if (active->count("--seed")) overrides.seed = seed;
    if (active->count("--out")) overrides.out = out;
    if (active->count("--repeats")) overrides.repeats = repeats;

    if (active == run) return cmd_run(config, overrides);
    if (active == compare) return cmd_compare(config, overrides);
    return cmd_verify_bounds(config, overrides);
}
