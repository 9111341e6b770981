#include "workwell/artifacts.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "workwell/synthgen.hpp"

namespace workwell {

namespace fs = std::filesystem;

namespace artifact_files {

std::string qtable_file(const std::string& arm_name) {
    std::string sanitized;
    for (char c : arm_name) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '_' || c == '-';
        sanitized += ok ? c : '_';
    }
    return "qtable_" + sanitized + ".csv";
}

} // namespace artifact_files

namespace {

constexpr const char* kLogHeader =
    "arm,tick,employee_id,physiological,environmental,cognitive_load,emotional_state,"
    "distraction,engagement,action,task_value,health_effectiveness,content_id,intensity,"
    "intervention_delta,distraction_penalty,productivity";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_double(const std::string& cell, const char* file, std::size_t lineno) {
    try {
        std::size_t pos = 0;
        double v = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string(file) + " line " + std::to_string(lineno) +
                         ": bad numeric cell '" + cell + "'");
    }
}

std::int64_t parse_int(const std::string& cell, const char* file, std::size_t lineno) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string(file) + " line " + std::to_string(lineno) +
                         ": bad integer cell '" + cell + "'");
    }
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read artifact file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

std::string log_to_csv(const std::vector<LogRow>& log, const std::vector<ArmConfig>& arms,
                       const std::vector<EmployeeProfile>& cohort) {
    std::string out = kLogHeader;
    out += '\n';
    for (const auto& r : log) {
        out += arms[static_cast<std::size_t>(r.arm)].name;
        out += ',';
        out += std::to_string(r.tick);
        out += ',';
        out += cohort[static_cast<std::size_t>(r.employee)].id;
        out += ',';
        out += fmt_double(r.physiological);
        out += ',';
        out += fmt_double(r.environmental);
        out += ',';
        out += fmt_double(r.cognitive_load);
        out += ',';
        out += fmt_double(r.emotional_state);
        out += ',';
        out += fmt_double(r.distraction);
        out += ',';
        out += fmt_double(r.engagement);
        out += ',';
        out += std::to_string(r.action);
        out += ',';
        out += fmt_double(r.task_value);
        out += ',';
        out += fmt_double(r.health_effectiveness);
        out += ',';
        out += to_string(r.content_id);
        out += ',';
        out += fmt_double(r.intensity);
        out += ',';
        out += fmt_double(r.intervention_delta);
        out += ',';
        out += fmt_double(r.distraction_penalty);
        out += ',';
        out += fmt_double(r.productivity);
        out += '\n';
    }
    return out;
}

std::vector<LogRow> log_from_csv(const std::string& csv, const std::vector<ArmConfig>& arms,
                                 const std::vector<EmployeeProfile>& cohort) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != kLogHeader) {
        throw ParseError("log.csv: missing or unexpected header");
    }
    std::vector<LogRow> log;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 17) {
            throw ParseError("log.csv line " + std::to_string(lineno) + ": expected 17 columns, got " +
                             std::to_string(cells.size()));
        }
        LogRow r;
        r.arm = -1;
        for (std::size_t a = 0; a < arms.size(); ++a) {
            if (arms[a].name == cells[0]) {
                r.arm = static_cast<std::int32_t>(a);
                break;
            }
        }
        if (r.arm < 0) {
            throw ParseError("log.csv line " + std::to_string(lineno) + ": unknown arm '" + cells[0] +
                             "'");
        }
        r.tick = parse_int(cells[1], "log.csv", lineno);
        r.employee = -1;
        for (std::size_t e = 0; e < cohort.size(); ++e) {
            if (cohort[e].id == cells[2]) {
                r.employee = static_cast<std::int32_t>(e);
                break;
            }
        }
        if (r.employee < 0) {
            throw ParseError("log.csv line " + std::to_string(lineno) + ": unknown employee '" +
                             cells[2] + "'");
        }
        r.physiological = parse_double(cells[3], "log.csv", lineno);
        r.environmental = parse_double(cells[4], "log.csv", lineno);
        r.cognitive_load = parse_double(cells[5], "log.csv", lineno);
        r.emotional_state = parse_double(cells[6], "log.csv", lineno);
        r.distraction = parse_double(cells[7], "log.csv", lineno);
        r.engagement = parse_double(cells[8], "log.csv", lineno);
        r.action = static_cast<std::int32_t>(parse_int(cells[9], "log.csv", lineno));
        r.task_value = parse_double(cells[10], "log.csv", lineno);
        r.health_effectiveness = parse_double(cells[11], "log.csv", lineno);
        r.content_id = content_id_from_string(cells[12]);
        r.intensity = parse_double(cells[13], "log.csv", lineno);
        r.intervention_delta = parse_double(cells[14], "log.csv", lineno);
        r.distraction_penalty = parse_double(cells[15], "log.csv", lineno);
        r.productivity = parse_double(cells[16], "log.csv", lineno);
        log.push_back(std::move(r));
    }
    return log;
}

std::string interventions_to_csv(const std::vector<LogRow>& log,
                                 const std::vector<ArmConfig>& arms,
                                 const std::vector<EmployeeProfile>& cohort) {
    std::string out = "arm,tick,employee_id,content_id,intensity,health_effectiveness\n";
    for (const auto& r : log) {
        if (r.content_id == ContentId::None) continue;
        out += arms[static_cast<std::size_t>(r.arm)].name;
        out += ',';
        out += std::to_string(r.tick);
        out += ',';
        out += cohort[static_cast<std::size_t>(r.employee)].id;
        out += ',';
        out += to_string(r.content_id);
        out += ',';
        out += fmt_double(r.intensity);
        out += ',';
        out += fmt_double(r.health_effectiveness);
        out += '\n';
    }
    return out;
}

void write_artifacts(const RunArtifacts& artifacts, const fs::path& out_dir) {
    std::error_code ec;
    if (fs::exists(out_dir, ec)) {
        throw IoError("output directory already exists: " + out_dir.string());
    }
    fs::path parent = out_dir.parent_path();
    if (!parent.empty()) {
        fs::create_directories(parent, ec);
        if (ec) throw IoError("cannot create parent directory: " + parent.string());
    }

    // Stage everything in a sibling temp directory, then rename. A failure
    // anywhere before the rename leaves no partial files at out_dir.
    fs::path tmp = out_dir;
    tmp += ".tmp";
    fs::remove_all(tmp, ec);
    if (!fs::create_directories(tmp, ec) || ec) {
        throw IoError("cannot create staging directory: " + tmp.string());
    }
    try {
        write_file(tmp / artifact_files::kConfig, scenario_to_json_text(artifacts.config));
        write_file(tmp / artifact_files::kCohort, cohort_to_csv(artifacts.cohort));
        write_file(tmp / artifact_files::kLog,
                   log_to_csv(artifacts.log, artifacts.config.arms, artifacts.cohort));
        write_file(tmp / artifact_files::kInterventions,
                   interventions_to_csv(artifacts.log, artifacts.config.arms, artifacts.cohort));
        for (std::size_t a = 0; a < artifacts.config.arms.size(); ++a) {
            write_file(tmp / artifact_files::qtable_file(artifacts.config.arms[a].name),
                       qtable_to_csv(artifacts.qtables[a]));
        }
        write_file(tmp / artifact_files::kReport, report_to_json_text(artifacts.report));
        write_file(tmp / artifact_files::kGroups,
                   report_groups_csv(artifacts.report, artifacts.report.arms));
    } catch (...) {
        fs::remove_all(tmp, ec);
        throw;
    }
    fs::rename(tmp, out_dir, ec);
    if (ec) {
        fs::remove_all(tmp, ec);
        throw IoError("cannot rename staging directory onto: " + out_dir.string());
    }
}

RunArtifacts load_artifacts(const fs::path& dir) {
    if (!fs::is_directory(dir)) {
        throw IoError("not an artifacts directory: " + dir.string());
    }
    RunArtifacts artifacts;
    artifacts.config = scenario_from_json_text(read_file(dir / artifact_files::kConfig));
    artifacts.cohort = cohort_from_csv(read_file(dir / artifact_files::kCohort));
    artifacts.log =
        log_from_csv(read_file(dir / artifact_files::kLog), artifacts.config.arms, artifacts.cohort);
    for (const auto& arm : artifacts.config.arms) {
        artifacts.qtables.push_back(
            qtable_from_csv(read_file(dir / artifact_files::qtable_file(arm.name))));
    }
    return artifacts;
}

} // namespace workwell
