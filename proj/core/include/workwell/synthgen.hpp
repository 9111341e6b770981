#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "workwell/domain.hpp"
#include "workwell/rng.hpp"

namespace workwell {

// Per-group cohort request. target_mean_productivity defaults to the group's
// reference score when left negative.
struct GroupCohortSpec {
    GroupLabel group = GroupLabel::A;
    int count = 0;
    double target_mean_productivity = -1.0; // [1,5]; <0 means "use reference"
    double productivity_stddev = 0.3;       // >= 0
};

struct CohortSpec {
    std::vector<GroupCohortSpec> groups;
    // Uniform draw ranges for the per-employee sensitivity parameters.
    std::array<double, 2> sensitivity_range{0.5, 1.5};
    std::array<double, 2> responsiveness_range{0.0, 1.0};
};

// Sinusoid-plus-noise shape for one synthetic signal channel.
struct SignalShape {
    double mean = 0.5;
    double amplitude = 0.1;
};

struct SignalSpec {
    SignalShape physiological;
    SignalShape environmental;
    SignalShape cognitive_load;
    SignalShape emotional_state; // clamped to [-1,1]; others to [0,1]
    double noise_stddev = 0.05;  // >= 0
    int diurnal_period_ticks = 24; // >= 1
};

std::vector<std::string> validate_cohort_spec(const CohortSpec& spec);
std::vector<std::string> validate_signal_spec(const SignalSpec& spec);

// Generates sum(counts) profiles, ordered by the spec's group order. Baseline
// productivity is a truncated normal on [1,5]; per-employee draws come from a
// substream of (seed, employee ordinal), so generation may be parallelized by
// employee without changing the output. Throws ConfigError on an invalid spec.
std::vector<EmployeeProfile> generate_cohort(const CohortSpec& spec, RngState seed);

// Deterministic in (profile.id, tick, seed): signal = clamp(mean +
// amplitude*sin(2*pi*tick/period) + gaussian noise).
BiometricSample sample_biometrics(const EmployeeProfile& profile, const SignalSpec& spec,
                                  std::int64_t tick, RngState seed);

// n tasks with uniform weights on [lo,hi], multinomial categories, uniform
// slots on [0,slots). category_mix probabilities must sum to 1 within 1e-9.
// Throws ConfigError on a malformed mix or weight range.
std::vector<TaskInstance> generate_tasks(int n,
                                         const std::vector<std::pair<TaskCategory, double>>& category_mix,
                                         std::array<double, 2> weight_range, int slots,
                                         RngState seed);

// CSV export with a header row matching the JSON field names.
std::string cohort_to_csv(const std::vector<EmployeeProfile>& cohort);
std::vector<EmployeeProfile> cohort_from_csv(const std::string& csv);

} // namespace workwell
