#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "workwell/artifacts.hpp"
#include "workwell/domain.hpp"
#include "workwell/scenario.hpp"
#include "workwell/simengine.hpp"
#include "svgplot.hpp"

namespace workwell::cli {

namespace fs = std::filesystem;

namespace {

int map_exception(const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (dynamic_cast<const ParseError*>(&e)) return kExitParseError;
    if (dynamic_cast<const IoError*>(&e)) return kExitIoError;
    if (dynamic_cast<const ConfigError*>(&e)) return kExitConfigInvalid;
    return kExitInternalError;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

// Rebuilds the report from stored artifacts. The calibration step and the
// report builder are deterministic, so this reproduces the embedded
// report.json byte for byte.
MetricsReport rebuild_report(const RunArtifacts& artifacts) {
    CalibrationInfo calibration =
        calibrate_distraction_penalty(artifacts.config, artifacts.cohort);
    return build_report(artifacts.config, artifacts.cohort, artifacts.log, calibration);
}

} // namespace

int cmd_validate(const std::string& scenario_path) {
    try {
        ScenarioConfig config = load_scenario(scenario_path);
        auto violations = validate_scenario(config);
        if (violations.empty()) {
            std::cout << "ok: " << scenario_path << "\n";
            return kExitOk;
        }
        std::cerr << "invalid scenario (" << violations.size() << " violation"
                  << (violations.size() == 1 ? "" : "s") << "):\n";
        for (const auto& v : violations) std::cerr << "  - " << v << "\n";
        return kExitConfigInvalid;
    } catch (const std::exception& e) {
        return map_exception(e);
    }
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override, bool quiet) {
    try {
        ScenarioConfig config = load_scenario(scenario_path);
        if (seed_override) config.seed = *seed_override;
        auto violations = validate_scenario(config);
        if (!violations.empty()) {
            std::cerr << "invalid scenario (" << violations.size() << " violation"
                      << (violations.size() == 1 ? "" : "s") << "):\n";
            for (const auto& v : violations) std::cerr << "  - " << v << "\n";
            return kExitConfigInvalid;
        }
        RunArtifacts artifacts = run_scenario(config);
        write_artifacts(artifacts, out_dir);
        if (!quiet) {
            for (const auto& arm : artifacts.report.arms) {
                std::cout << "arm " << arm.name
                          << ": mean final productivity " << fmt_double(arm.mean_final_productivity)
                          << " (" << arm.interventions_delivered << " interventions)\n";
            }
            std::cout << "artifacts written to " << out_dir << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return map_exception(e);
    }
}

int cmd_report(const std::string& artifacts_dir, const std::string& out_dir, bool quiet) {
    try {
        RunArtifacts artifacts = load_artifacts(artifacts_dir);
        MetricsReport report = rebuild_report(artifacts);
        fs::create_directories(out_dir);
        write_text(fs::path(out_dir) / artifact_files::kReport, report_to_json_text(report));
        write_text(fs::path(out_dir) / artifact_files::kGroups,
                   report_groups_csv(report, report.arms));
        if (!quiet) {
            std::cout << "report written to " << out_dir << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return map_exception(e);
    }
}

int cmd_plot(const std::string& artifacts_dir, const std::string& out_dir, bool quiet) {
    try {
        RunArtifacts artifacts = load_artifacts(artifacts_dir);
        MetricsReport report = rebuild_report(artifacts);
        fs::create_directories(out_dir);
        write_text(fs::path(out_dir) / "qvalues.svg",
                   render_qvalues_svg(artifacts.qtables.front(), artifacts.config.arms.front().name));
        write_text(fs::path(out_dir) / "groups.svg", render_groups_svg(report));
        write_text(fs::path(out_dir) / "interventions.svg",
                   render_interventions_svg(artifacts.log, artifacts.config.arms,
                                            artifacts.config.ticks));
        if (!quiet) {
            std::cout << "plots written to " << out_dir << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return map_exception(e);
    }
}

} // namespace workwell::cli
