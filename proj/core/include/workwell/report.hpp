#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "workwell/domain.hpp"
#include "workwell/evalstats.hpp"
#include "workwell/scenario.hpp"
#include "workwell/wellness.hpp"

namespace workwell {

// One per-tick, per-employee, per-arm log record. Columns before `content_id`
// are arm-invariant by construction; only the intervention columns
// (content_id, intensity, intervention_delta) and the cumulative productivity
// differ between arms sharing a seed.
struct LogRow {
    std::int32_t arm = 0;
    std::int64_t tick = 0;
    std::int32_t employee = 0; // index into the cohort
    double physiological = 0.0;
    double environmental = 0.0;
    double cognitive_load = 0.0;
    double emotional_state = 0.0;
    double distraction = 0.0;
    double engagement = 0.0;
    std::int32_t action = 0; // policy action index
    double task_value = 0.0;
    double health_effectiveness = 0.0;
    ContentId content_id = ContentId::None;
    double intensity = 0.0;
    double intervention_delta = 0.0;
    double distraction_penalty = 0.0;
    double productivity = 0.0; // running score after this tick
};

struct CalibrationInfo {
    bool enabled = false;
    std::string scope = "global";
    std::vector<double> setpoint;       // argmin at the cohort's mean sensitivity
    double achieved_distraction = 0.0;  // preset minimum at the mean sensitivity
    double coefficient = 0.0;           // penalty coefficient (mean, when per-employee)
    // One coefficient per employee when scope == "per_employee"; empty for
    // the global scope.
    std::vector<double> per_employee_coefficients;
};

struct GroupMetrics {
    GroupLabel group = GroupLabel::A;
    int count = 0;
    double satisfaction = 0.0;
    double mean_baseline = 0.0;
    double mean_final = 0.0;          // pooled across arms
    double change_pct = 0.0;
    std::vector<double> arm_mean_final; // one entry per arm
};

struct ArmSummary {
    std::string name;
    bool interventions_enabled = false;
    double mean_final_productivity = 0.0;
    double mean_change_pct = 0.0;
    double satisfaction = 0.0;
    std::int64_t interventions_delivered = 0;
    double mean_challenge_level = 0.0;
    double mean_reward_frequency = 0.0;
};

struct MetricsReport {
    double satisfaction_overall = 0.0;
    double productivity_change_overall = 0.0; // pooled pct change vs baseline
    std::vector<GroupMetrics> per_group;
    std::vector<ArmSummary> arms;
    std::optional<RegressionFit> regression;
    std::string regression_note; // set when the regression was skipped
    std::optional<AnovaResult> anova;
    std::string anova_note;      // set when the ANOVA was skipped
    CalibrationInfo calibration;
};

// Aggregates a completed run: satisfaction per group, productivity change
// overall and per group, OLS over per-(arm,employee) rows (outcome = mean
// logged health effectiveness, productivity = percent change, satisfaction =
// synthesized rating), and ANOVA of final productivity across arms. Missing
// sections (empty cohort or log) throw ConfigError. Deterministic in its
// inputs.
MetricsReport build_report(const ScenarioConfig& config,
                           const std::vector<EmployeeProfile>& cohort,
                           const std::vector<LogRow>& log,
                           const CalibrationInfo& calibration);

// The per-employee satisfaction rating synthesized from that employee's log
// rows within one arm: clamp(3 + 2*(mean engagement - 0.5) + mean sentiment,
// 1, 5).
double satisfaction_rating(double mean_engagement, double mean_sentiment);

struct ArmComparison {
    std::vector<ArmSummary> arms;
    AnovaResult anova; // across arms, observations = per-employee final score
};

// Per-arm summaries plus ANOVA across arms. Requires >= 2 arms and >= 2
// employees; otherwise throws std::invalid_argument.
ArmComparison compare_arms(const ScenarioConfig& config,
                           const std::vector<EmployeeProfile>& cohort,
                           const std::vector<LogRow>& log);

// Deterministic JSON rendering (stable key order, trailing newline).
std::string report_to_json_text(const MetricsReport& report);

// Per-group CSV mirroring the demographic table layout, with simulated
// deltas appended (pooled and per-arm).
std::string report_groups_csv(const MetricsReport& report, const std::vector<ArmSummary>& arms);

} // namespace workwell
