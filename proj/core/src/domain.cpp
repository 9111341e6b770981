#include "workwell/domain.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

namespace workwell {

std::string_view to_string(GroupLabel g) {
    static constexpr std::string_view names[] = {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J"};
    return names[static_cast<int>(g)];
}

std::string_view to_string(AgeRange a) {
    static constexpr std::string_view names[] = {"18-25", "26-35", "36-45", "46-55", "56+"};
    return names[static_cast<int>(a)];
}

std::string_view to_string(Gender g) {
    return g == Gender::Male ? "male" : "female";
}

std::string_view to_string(TaskCategory c) {
    static constexpr std::string_view names[] = {"collaborative", "creative", "technical",
                                                 "strategic",     "independent", "mentoring",
                                                 "advisory"};
    return names[static_cast<int>(c)];
}

namespace {

[[noreturn]] void bad_token(const char* kind, std::string_view s) {
    throw ParseError(std::string("unknown ") + kind + ": '" + std::string(s) + "'");
}

} // namespace

GroupLabel group_label_from_string(std::string_view s) {
    if (s.size() == 1 && s[0] >= 'A' && s[0] <= 'J') {
        return static_cast<GroupLabel>(s[0] - 'A');
    }
    bad_token("group label", s);
}

AgeRange age_range_from_string(std::string_view s) {
    for (int i = 0; i < 5; ++i) {
        auto a = static_cast<AgeRange>(i);
        if (to_string(a) == s) return a;
    }
    bad_token("age range", s);
}

Gender gender_from_string(std::string_view s) {
    if (s == "male") return Gender::Male;
    if (s == "female") return Gender::Female;
    bad_token("gender", s);
}

TaskCategory task_category_from_string(std::string_view s) {
    for (int i = 0; i < kTaskCategoryCount; ++i) {
        auto c = static_cast<TaskCategory>(i);
        if (to_string(c) == s) return c;
    }
    bad_token("task category", s);
}

const std::array<GroupReference, kGroupCount>& group_reference_table() {
    static const std::array<GroupReference, kGroupCount> table{{
        {GroupLabel::A, AgeRange::From18To25, Gender::Male, 4.2},
        {GroupLabel::B, AgeRange::From18To25, Gender::Female, 4.5},
        {GroupLabel::C, AgeRange::From26To35, Gender::Male, 3.8},
        {GroupLabel::D, AgeRange::From26To35, Gender::Female, 4.3},
        {GroupLabel::E, AgeRange::From36To45, Gender::Male, 3.9},
        {GroupLabel::F, AgeRange::From36To45, Gender::Female, 4.0},
        {GroupLabel::G, AgeRange::From46To55, Gender::Male, 3.7},
        {GroupLabel::H, AgeRange::From46To55, Gender::Female, 4.1},
        {GroupLabel::I, AgeRange::From56Plus, Gender::Male, 3.5},
        {GroupLabel::J, AgeRange::From56Plus, Gender::Female, 3.9},
    }};
    return table;
}

const GroupReference& group_reference(GroupLabel g) {
    return group_reference_table()[static_cast<int>(g)];
}

namespace {

bool in_closed(double v, double lo, double hi) {
    return std::isfinite(v) && v >= lo && v <= hi;
}

} // namespace

std::vector<std::string> validate_profile(const EmployeeProfile& p) {
    std::vector<std::string> violations;
    if (p.id.empty()) {
        violations.push_back("id must be non-empty");
    }
    if (!in_closed(p.baseline_productivity, 1.0, 5.0)) {
        violations.push_back("baseline_productivity out of [1,5]");
    }
    if (!std::isfinite(p.distraction_sensitivity) || p.distraction_sensitivity < 0.0) {
        violations.push_back("distraction_sensitivity must be >= 0");
    }
    if (!in_closed(p.intervention_responsiveness, 0.0, 1.0)) {
        violations.push_back("intervention_responsiveness out of [0,1]");
    }
    const GroupReference& ref = group_reference(p.group_label);
    if (p.age_range != ref.age_range || p.gender != ref.gender) {
        violations.push_back(std::string("group ") + std::string(to_string(p.group_label)) +
                             " requires age_range " + std::string(to_string(ref.age_range)) +
                             " and gender " + std::string(to_string(ref.gender)));
    }
    return violations;
}

std::vector<std::string> validate_sample(const BiometricSample& s) {
    std::vector<std::string> violations;
    if (s.employee_id.empty()) violations.push_back("employee_id must be non-empty");
    if (s.tick < 0) violations.push_back("tick must be >= 0");
    if (!in_closed(s.physiological, 0.0, 1.0)) violations.push_back("physiological out of [0,1]");
    if (!in_closed(s.environmental, 0.0, 1.0)) violations.push_back("environmental out of [0,1]");
    if (!in_closed(s.cognitive_load, 0.0, 1.0)) violations.push_back("cognitive_load out of [0,1]");
    if (!in_closed(s.emotional_state, -1.0, 1.0)) {
        violations.push_back("emotional_state out of [-1,1]");
    }
    return violations;
}

std::vector<std::string> validate_task(const TaskInstance& t) {
    std::vector<std::string> violations;
    if (t.task_id.empty()) violations.push_back("task_id must be non-empty");
    if (!std::isfinite(t.priority_weight) || t.priority_weight < 0.0) {
        violations.push_back("priority_weight must be >= 0");
    }
    if (t.duration_ticks < 1) violations.push_back("duration_ticks must be >= 1");
    if (t.slot < 0) violations.push_back("slot must be >= 0");
    return violations;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace workwell
