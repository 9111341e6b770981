#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace workwell {

// Error taxonomy shared across the toolkit. The CLI maps these onto its
// documented exit codes.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GroupLabel { A, B, C, D, E, F, G, H, I, J };
inline constexpr int kGroupCount = 10;

enum class AgeRange { From18To25, From26To35, From36To45, From46To55, From56Plus };

enum class Gender { Male, Female };

enum class TaskCategory {
    Collaborative,
    Creative,
    Technical,
    Strategic,
    Independent,
    Mentoring,
    Advisory,
};
inline constexpr int kTaskCategoryCount = 7;

std::string_view to_string(GroupLabel g);
std::string_view to_string(AgeRange a);
std::string_view to_string(Gender g);
std::string_view to_string(TaskCategory c);

// Parsers throw ParseError naming the offending token.
GroupLabel group_label_from_string(std::string_view s);
AgeRange age_range_from_string(std::string_view s);
Gender gender_from_string(std::string_view s);
TaskCategory task_category_from_string(std::string_view s);

// One simulated employee. Immutable after construction; safe to share.
struct EmployeeProfile {
    std::string id;
    GroupLabel group_label = GroupLabel::A;
    AgeRange age_range = AgeRange::From18To25;
    Gender gender = Gender::Male;
    double baseline_productivity = 3.0;       // [1,5]
    double distraction_sensitivity = 1.0;     // >= 0
    double intervention_responsiveness = 0.5; // [0,1]

    friend bool operator==(const EmployeeProfile&, const EmployeeProfile&) = default;
};

// One timestamped observation of the synthetic signal bundle. All values are
// normalized: physiological/environmental/cognitive_load on [0,1],
// emotional_state on [-1,1].
struct BiometricSample {
    std::string employee_id;
    std::int64_t tick = 0;
    double physiological = 0.5;
    double environmental = 0.5;
    double cognitive_load = 0.5;
    double emotional_state = 0.0;

    friend bool operator==(const BiometricSample&, const BiometricSample&) = default;
};

// A unit of schedulable work.
struct TaskInstance {
    std::string task_id;
    TaskCategory category = TaskCategory::Technical;
    double priority_weight = 1.0; // >= 0
    int duration_ticks = 1;       // >= 1
    int slot = 0;                 // time-slot index >= 0

    friend bool operator==(const TaskInstance&, const TaskInstance&) = default;
};

// Built-in demographic reference for the ten simulated cohort groups:
// age band, gender, and the default mean productivity score per group.
struct GroupReference {
    GroupLabel group;
    AgeRange age_range;
    Gender gender;
    double mean_productivity;
};

const std::array<GroupReference, kGroupCount>& group_reference_table();
const GroupReference& group_reference(GroupLabel g);

// Validation is total: it reports every violated invariant and never throws.
std::vector<std::string> validate_profile(const EmployeeProfile& p);
std::vector<std::string> validate_sample(const BiometricSample& s);
std::vector<std::string> validate_task(const TaskInstance& t);

// Canonical double formatting for CSV artifacts: shortest text that parses
// back to the identical bit pattern.
std::string fmt_double(double v);

} // namespace workwell
