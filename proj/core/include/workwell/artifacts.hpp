#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "workwell/simengine.hpp"

namespace workwell {

// Fixed artifact file names within a run directory.
namespace artifact_files {
inline constexpr const char* kConfig = "config.json";
inline constexpr const char* kCohort = "cohort.csv";
inline constexpr const char* kLog = "log.csv";
inline constexpr const char* kInterventions = "interventions.csv";
inline constexpr const char* kReport = "report.json";
inline constexpr const char* kGroups = "groups.csv";
// Per-arm Q-table files: qtable_<sanitized arm name>.csv
std::string qtable_file(const std::string& arm_name);
} // namespace artifact_files

std::string log_to_csv(const std::vector<LogRow>& log, const std::vector<ArmConfig>& arms,
                       const std::vector<EmployeeProfile>& cohort);
std::vector<LogRow> log_from_csv(const std::string& csv, const std::vector<ArmConfig>& arms,
                                 const std::vector<EmployeeProfile>& cohort);

// Intervention log (rows where content was actually delivered):
// arm,tick,employee_id,content_id,intensity,health_effectiveness.
std::string interventions_to_csv(const std::vector<LogRow>& log,
                                 const std::vector<ArmConfig>& arms,
                                 const std::vector<EmployeeProfile>& cohort);

// Writes the artifact directory atomically: everything lands in a sibling
// temp directory which is then renamed onto out_dir. out_dir must not already
// exist. Throws IoError on filesystem failures.
void write_artifacts(const RunArtifacts& artifacts, const std::filesystem::path& out_dir);

// Loads config.json, cohort.csv, log.csv and the per-arm Q-tables back from a
// run directory (report.json is not required; reports can be rebuilt).
// Throws IoError when files are missing, ParseError on malformed content.
RunArtifacts load_artifacts(const std::filesystem::path& dir);

} // namespace workwell
