#include "workwell/serialization.hpp"

namespace workwell {

void to_json(nlohmann::json& j, const EmployeeProfile& p) {
    j = nlohmann::json{{"id", p.id},
                       {"group_label", std::string(to_string(p.group_label))},
                       {"age_range", std::string(to_string(p.age_range))},
                       {"gender", std::string(to_string(p.gender))},
                       {"baseline_productivity", p.baseline_productivity},
                       {"distraction_sensitivity", p.distraction_sensitivity},
                       {"intervention_responsiveness", p.intervention_responsiveness}};
}

void from_json(const nlohmann::json& j, EmployeeProfile& p) {
    p.id = j.at("id").get<std::string>();
    p.group_label = group_label_from_string(j.at("group_label").get<std::string>());
    p.age_range = age_range_from_string(j.at("age_range").get<std::string>());
    p.gender = gender_from_string(j.at("gender").get<std::string>());
    p.baseline_productivity = j.at("baseline_productivity").get<double>();
    p.distraction_sensitivity = j.at("distraction_sensitivity").get<double>();
    p.intervention_responsiveness = j.at("intervention_responsiveness").get<double>();
}

void to_json(nlohmann::json& j, const BiometricSample& s) {
    j = nlohmann::json{{"employee_id", s.employee_id},
                       {"tick", s.tick},
                       {"physiological", s.physiological},
                       {"environmental", s.environmental},
                       {"cognitive_load", s.cognitive_load},
                       {"emotional_state", s.emotional_state}};
}

void from_json(const nlohmann::json& j, BiometricSample& s) {
    s.employee_id = j.at("employee_id").get<std::string>();
    s.tick = j.at("tick").get<std::int64_t>();
    s.physiological = j.at("physiological").get<double>();
    s.environmental = j.at("environmental").get<double>();
    s.cognitive_load = j.at("cognitive_load").get<double>();
    s.emotional_state = j.at("emotional_state").get<double>();
}

void to_json(nlohmann::json& j, const TaskInstance& t) {
    j = nlohmann::json{{"task_id", t.task_id},
                       {"category", std::string(to_string(t.category))},
                       {"priority_weight", t.priority_weight},
                       {"duration_ticks", t.duration_ticks},
                       {"slot", t.slot}};
}

void from_json(const nlohmann::json& j, TaskInstance& t) {
    t.task_id = j.at("task_id").get<std::string>();
    t.category = task_category_from_string(j.at("category").get<std::string>());
    t.priority_weight = j.at("priority_weight").get<double>();
    t.duration_ticks = j.at("duration_ticks").get<int>();
    t.slot = j.at("slot").get<int>();
}

} // namespace workwell
