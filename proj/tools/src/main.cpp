#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"workwell - deterministic workplace productivity simulator"};
    app.require_subcommand(1);

    std::string scenario_path, artifacts_dir, out_dir;
    std::uint64_t seed = 0;
    bool quiet = false;

    auto* run = app.add_subcommand("run", "run a scenario and write the artifact directory");
    run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_dir, "output artifact directory (must not exist)")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override the scenario seed");
    run->add_flag("--quiet", quiet, "suppress the summary lines");

    auto* validate = app.add_subcommand("validate", "check a scenario file and list violations");
    validate->add_option("--scenario", scenario_path, "scenario JSON file")->required();

    auto* report = app.add_subcommand("report", "rebuild report.json from an artifact directory");
    report->add_option("--artifacts", artifacts_dir, "artifact directory from a run")->required();
    report->add_option("--out", out_dir, "output directory")->required();
    report->add_flag("--quiet", quiet);

    auto* plot = app.add_subcommand("plot", "render SVG charts from an artifact directory");
    plot->add_option("--artifacts", artifacts_dir, "artifact directory from a run")->required();
    plot->add_option("--out", out_dir, "output directory")->required();
    plot->add_flag("--quiet", quiet);

    CLI11_PARSE(app, argc, argv);

    using namespace workwell::cli;
    if (run->parsed()) {
        std::optional<std::uint64_t> seed_override;
        if (seed_opt->count() > 0) seed_override = seed;
        return cmd_run(scenario_path, out_dir, seed_override, quiet);
    }
    if (validate->parsed()) return cmd_validate(scenario_path);
    if (report->parsed()) return cmd_report(artifacts_dir, out_dir, quiet);
    if (plot->parsed()) return cmd_plot(artifacts_dir, out_dir, quiet);
    return kExitInternalError;
}
