#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "workwell/report.hpp"
#include "workwell/scenario.hpp"
#include "workwell/scheduler.hpp"

namespace workwell {

// Policy state space: cognitive-load bucket (thresholds 0.33 / 0.66) crossed
// with pending-backlog bucket (0 / 1 / 2+), 9 states. Actions: one focus
// action per task category plus "prompt break" (index 7).
inline constexpr int kPolicyStateCount = 9;
inline constexpr int kPolicyActionCount = kTaskCategoryCount + 1;
inline constexpr int kBreakAction = kTaskCategoryCount;

int cognitive_load_bucket(double cognitive_load); // 0,1,2
int backlog_bucket(std::size_t pending_tasks);    // 0,1,2
int policy_state(int cognitive_bucket, int backlog_bucket);

struct RunArtifacts {
    ScenarioConfig config; // resolved configuration, echoed into the artifacts
    std::vector<EmployeeProfile> cohort;
    std::vector<LogRow> log;          // arm-major, then tick, then employee
    std::vector<QTable> qtables;      // one per arm
    CalibrationInfo calibration;
    MetricsReport report;
};

// The offline calibration step: when the config enables it, minimizes the
// configured objective preset over the setpoint box at the cohort's mean
// sensitivity and scales the per-tick distraction penalty coefficient by
// (1 - achieved minimum distraction). Deterministic; also used to rebuild
// reports from stored artifacts.
CalibrationInfo calibrate_distraction_penalty(const ScenarioConfig& config,
                                              const std::vector<EmployeeProfile>& cohort);

// Runs every arm of the scenario. Arms share the cohort, the task stream, the
// biometric noise, and the policy exploration stream (all derived from the
// scenario seed, never from the arm), so the logs differ only in the
// intervention columns and the productivity they accumulate. Per employee and
// tick:
//   biometrics -> distraction -> engagement -> epsilon-greedy action ->
//   weighted task assignment -> content selection + synthetic intervention
//   effect (when the arm enables interventions) -> productivity update ->
//   Q-update with the scalarized (productivity, wellbeing) reward.
// The per-tick productivity delta is task_value + intervention_delta -
// penalty, every term logged. Fully deterministic in the config; module
// errors are propagated with tick/employee context attached.
RunArtifacts run_scenario(const ScenarioConfig& config);

} // namespace workwell
