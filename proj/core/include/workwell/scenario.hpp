#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "workwell/domain.hpp"
#include "workwell/scheduler.hpp"
#include "workwell/synthgen.hpp"
#include "workwell/wellness.hpp"

namespace workwell {

inline constexpr int kScenarioSchemaVersion = 1;

// Task stream and assignment knobs. value_scale converts assignment weight
// into productivity score units; focus/affinity multipliers shape both the
// assignment preference and the realized value.
struct TaskStreamConfig {
    int per_tick = 2;
    std::array<double, 2> weight_range{0.5, 2.0};
    std::vector<std::pair<TaskCategory, double>> category_mix; // empty = uniform
    int slots = 1;
    std::array<int, 2> duration_range{1, 1};
    int capacity = 1;            // max tasks per (employee, slot)
    int max_pool_considered = 48; // tasks offered to the scheduler per tick
    double value_scale = 0.01;
    double focus_multiplier = 1.25;
    double affinity_multiplier = 1.1;
};

enum class HealthWeightMode { Fixed, Fit };

struct HealthConfig {
    HealthWeightMode mode = HealthWeightMode::Fixed;
    HealthWeights weights{0.6, 0.4};
    // Planted "field" weights and noise generating the synthetic
    // effectiveness observations that the Fit mode learns from.
    HealthWeights observed_weights{0.7, 0.3};
    double observed_noise = 0.02;
    double threshold = 0.7; // [0,1]
    EffectSizes effect_sizes;
    ContentMap content_map;
    int refit_window = 200;
    int refit_period_ticks = 25;
};

struct ObjectiveConfig {
    std::string preset = "distraction"; // or "distraction_minus_engagement"
    // Whether the calibration problem is solved once at the cohort's mean
    // sensitivity ("global") or per employee ("per_employee").
    std::string scope = "global";
    double lambda = 1.0;
    double cognitive_floor = 0.2;
    double environment_floor = 0.2;
    // When true, an offline calibration minimizes the preset over the
    // setpoint box and scales the per-tick distraction penalty coefficient by
    // (1 - achieved minimum distraction).
    bool calibrate = false;
    double distraction_penalty = 0.02; // base per-tick coefficient
};

struct ArmConfig {
    std::string name;
    bool interventions_enabled = false;
    // Multiplies the synthetic intervention effect in this arm, so dose
    // levels can be compared across arms sharing one effect catalog.
    double effect_scale = 1.0;
};

struct ScenarioConfig {
    int schema_version = kScenarioSchemaVersion;
    std::uint64_t seed = 0;
    std::int64_t ticks = 1;
    CohortSpec cohort;
    SignalSpec signals;
    LearningParams learning;
    double scalarization_productivity = 0.7;
    double scalarization_wellbeing = 0.3;
    HealthConfig health;
    ObjectiveConfig objective;
    TaskStreamConfig tasks;
    // Per-group category affinity (qualitative strengths as configuration).
    std::map<GroupLabel, TaskCategory> affinity;
    std::vector<ArmConfig> arms;
};

// The affinity table shipped with the default configuration.
std::map<GroupLabel, TaskCategory> default_affinity();

// A small ready-to-run two-arm scenario (used by `workwell init` style docs
// and as the baseline for tests).
ScenarioConfig default_scenario();

// Total validation: returns every violation, empty iff the config is valid.
std::vector<std::string> validate_scenario(const ScenarioConfig& config);

// JSON round-trip. Parsing throws ParseError on malformed documents and
// unknown enum tokens; it does not range-check (validate_scenario does).
ScenarioConfig scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const ScenarioConfig& config);

// Reads the file and parses it. Throws IoError when unreadable.
ScenarioConfig load_scenario(const std::string& path);

} // namespace workwell
