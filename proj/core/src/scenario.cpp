#include "workwell/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "workwell/neuroecon.hpp"

namespace workwell {

using ordered_json = nlohmann::ordered_json;

std::map<GroupLabel, TaskCategory> default_affinity() {
    // Qualitative per-group strengths, shipped as configuration. Groups F, G
    // and I have no single dominant category and carry no affinity entry.
    return {
        {GroupLabel::A, TaskCategory::Collaborative},
        {GroupLabel::B, TaskCategory::Creative},
        {GroupLabel::C, TaskCategory::Technical},
        {GroupLabel::D, TaskCategory::Strategic},
        {GroupLabel::E, TaskCategory::Independent},
        {GroupLabel::H, TaskCategory::Mentoring},
        {GroupLabel::J, TaskCategory::Advisory},
    };
}

ScenarioConfig default_scenario() {
    ScenarioConfig c;
    c.seed = 42;
    c.ticks = 40;
    for (const auto& ref : group_reference_table()) {
        c.cohort.groups.push_back(GroupCohortSpec{ref.group, 2, ref.mean_productivity, 0.3});
    }
    c.signals.physiological = {0.55, 0.15};
    c.signals.environmental = {0.50, 0.20};
    c.signals.cognitive_load = {0.50, 0.25};
    c.signals.emotional_state = {0.10, 0.30};
    c.signals.noise_stddev = 0.05;
    c.signals.diurnal_period_ticks = 24;
    c.learning = LearningParams{0.1, 0.9, 0.1, 1.0};
    c.health.mode = HealthWeightMode::Fit;
    c.health.refit_period_ticks = 10;
    c.objective.calibrate = true;
    c.tasks.per_tick = 3;
    c.tasks.duration_range = {1, 2};
    c.affinity = default_affinity();
    c.arms = {{"control", false}, {"treatment", true}};
    return c;
}

namespace {

const ordered_json& require_key(const ordered_json& j, const char* key, const char* where) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(std::string("scenario: missing required key '") + key + "' in " + where);
    }
    return *it;
}

template <typename T>
T get_or(const ordered_json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    return it->get<T>();
}

std::array<double, 2> range2(const ordered_json& j, const char* key, std::array<double, 2> fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_array() || it->size() != 2) {
        throw ParseError(std::string("scenario: '") + key + "' must be a [lo,hi] pair");
    }
    return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

SignalShape parse_shape(const ordered_json& j, const char* name, SignalShape fallback) {
    auto it = j.find(name);
    if (it == j.end()) return fallback;
    SignalShape s;
    s.mean = get_or(*it, "mean", fallback.mean);
    s.amplitude = get_or(*it, "amplitude", fallback.amplitude);
    return s;
}

ordered_json shape_json(const SignalShape& s) {
    return ordered_json{{"mean", s.mean}, {"amplitude", s.amplitude}};
}

ordered_json weights_json(const HealthWeights& w) {
    return ordered_json{{"w1", w.w1}, {"w2", w.w2}};
}

HealthWeights parse_weights(const ordered_json& j, HealthWeights fallback) {
    HealthWeights w;
    w.w1 = get_or(j, "w1", fallback.w1);
    w.w2 = get_or(j, "w2", fallback.w2);
    return w;
}

} // namespace

ScenarioConfig scenario_from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario: invalid JSON: ") + e.what());
    }
    try {
        ScenarioConfig c;
        c.schema_version = get_or(j, "schema_version", kScenarioSchemaVersion);
        c.seed = get_or<std::uint64_t>(j, "seed", 0);
        c.ticks = get_or<std::int64_t>(j, "ticks", 1);

        const auto& jc = require_key(j, "cohort", "scenario");
        const auto& jgroups = require_key(jc, "groups", "cohort");
        if (!jgroups.is_array()) throw ParseError("scenario: cohort.groups must be an array");
        for (const auto& jg : jgroups) {
            GroupCohortSpec g;
            g.group = group_label_from_string(
                require_key(jg, "group_label", "cohort group").get<std::string>());
            g.count = get_or(jg, "count", 0);
            g.target_mean_productivity = get_or(jg, "target_mean_productivity", -1.0);
            g.productivity_stddev = get_or(jg, "productivity_stddev", 0.3);
            c.cohort.groups.push_back(g);
        }
        c.cohort.sensitivity_range = range2(jc, "sensitivity_range", c.cohort.sensitivity_range);
        c.cohort.responsiveness_range =
            range2(jc, "responsiveness_range", c.cohort.responsiveness_range);

        if (auto it = j.find("signals"); it != j.end()) {
            const auto& js = *it;
            c.signals.physiological = parse_shape(js, "physiological", c.signals.physiological);
            c.signals.environmental = parse_shape(js, "environmental", c.signals.environmental);
            c.signals.cognitive_load = parse_shape(js, "cognitive_load", c.signals.cognitive_load);
            c.signals.emotional_state = parse_shape(js, "emotional_state", c.signals.emotional_state);
            c.signals.noise_stddev = get_or(js, "noise_stddev", c.signals.noise_stddev);
            c.signals.diurnal_period_ticks =
                get_or(js, "diurnal_period_ticks", c.signals.diurnal_period_ticks);
        }

        if (auto it = j.find("learning"); it != j.end()) {
            c.learning.alpha = get_or(*it, "alpha", c.learning.alpha);
            c.learning.gamma = get_or(*it, "gamma", c.learning.gamma);
            c.learning.epsilon = get_or(*it, "epsilon", c.learning.epsilon);
            c.learning.epsilon_decay = get_or(*it, "epsilon_decay", c.learning.epsilon_decay);
        }

        if (auto it = j.find("scalarization"); it != j.end()) {
            c.scalarization_productivity = get_or(*it, "productivity", c.scalarization_productivity);
            c.scalarization_wellbeing = get_or(*it, "wellbeing", c.scalarization_wellbeing);
        }

        if (auto it = j.find("health"); it != j.end()) {
            const auto& jh = *it;
            std::string mode = get_or<std::string>(jh, "mode", "fixed");
            if (mode == "fixed") {
                c.health.mode = HealthWeightMode::Fixed;
            } else if (mode == "fit") {
                c.health.mode = HealthWeightMode::Fit;
            } else {
                throw ParseError("scenario: health.mode must be 'fixed' or 'fit', got '" + mode +
                                 "'");
            }
            if (auto wit = jh.find("weights"); wit != jh.end()) {
                c.health.weights = parse_weights(*wit, c.health.weights);
            }
            if (auto wit = jh.find("observed_weights"); wit != jh.end()) {
                c.health.observed_weights = parse_weights(*wit, c.health.observed_weights);
            }
            c.health.observed_noise = get_or(jh, "observed_noise", c.health.observed_noise);
            c.health.threshold = get_or(jh, "threshold", c.health.threshold);
            if (auto eit = jh.find("effect_sizes"); eit != jh.end()) {
                auto& es = c.health.effect_sizes;
                es.stretch_prompt = get_or(*eit, "stretch_prompt", es.stretch_prompt);
                es.hydration_prompt = get_or(*eit, "hydration_prompt", es.hydration_prompt);
                es.walk_prompt = get_or(*eit, "walk_prompt", es.walk_prompt);
                es.breath_prompt = get_or(*eit, "breath_prompt", es.breath_prompt);
            }
            if (auto mit = jh.find("content_map"); mit != jh.end()) {
                c.health.content_map.physiological_prompt = content_id_from_string(
                    get_or<std::string>(*mit, "physiological", "walk_prompt"));
                c.health.content_map.environmental_prompt = content_id_from_string(
                    get_or<std::string>(*mit, "environmental", "breath_prompt"));
            }
            c.health.refit_window = get_or(jh, "refit_window", c.health.refit_window);
            c.health.refit_period_ticks =
                get_or(jh, "refit_period_ticks", c.health.refit_period_ticks);
        }

        if (auto it = j.find("objective"); it != j.end()) {
            const auto& jo = *it;
            c.objective.preset = get_or<std::string>(jo, "preset", c.objective.preset);
            c.objective.scope = get_or<std::string>(jo, "scope", c.objective.scope);
            c.objective.lambda = get_or(jo, "lambda", c.objective.lambda);
            c.objective.cognitive_floor = get_or(jo, "cognitive_floor", c.objective.cognitive_floor);
            c.objective.environment_floor =
                get_or(jo, "environment_floor", c.objective.environment_floor);
            c.objective.calibrate = get_or(jo, "calibrate", c.objective.calibrate);
            c.objective.distraction_penalty =
                get_or(jo, "distraction_penalty", c.objective.distraction_penalty);
        }

        if (auto it = j.find("tasks"); it != j.end()) {
            const auto& jt = *it;
            c.tasks.per_tick = get_or(jt, "per_tick", c.tasks.per_tick);
            c.tasks.weight_range = range2(jt, "weight_range", c.tasks.weight_range);
            if (auto mit = jt.find("category_mix"); mit != jt.end() && !mit->is_null()) {
                for (int i = 0; i < kTaskCategoryCount; ++i) {
                    auto cat = static_cast<TaskCategory>(i);
                    auto cit = mit->find(std::string(to_string(cat)));
                    if (cit != mit->end()) {
                        c.tasks.category_mix.emplace_back(cat, cit->get<double>());
                    }
                }
            }
            if (auto dit = jt.find("duration_range"); dit != jt.end()) {
                if (!dit->is_array() || dit->size() != 2) {
                    throw ParseError("scenario: tasks.duration_range must be a [lo,hi] pair");
                }
                c.tasks.duration_range = {(*dit)[0].get<int>(), (*dit)[1].get<int>()};
            }
            c.tasks.slots = get_or(jt, "slots", c.tasks.slots);
            c.tasks.capacity = get_or(jt, "capacity", c.tasks.capacity);
            c.tasks.max_pool_considered =
                get_or(jt, "max_pool_considered", c.tasks.max_pool_considered);
            c.tasks.value_scale = get_or(jt, "value_scale", c.tasks.value_scale);
            c.tasks.focus_multiplier = get_or(jt, "focus_multiplier", c.tasks.focus_multiplier);
            c.tasks.affinity_multiplier =
                get_or(jt, "affinity_multiplier", c.tasks.affinity_multiplier);
        }

        if (auto it = j.find("affinity"); it != j.end() && !it->is_null()) {
            for (auto& [key, value] : it->items()) {
                c.affinity[group_label_from_string(key)] =
                    task_category_from_string(value.get<std::string>());
            }
        } else {
            c.affinity = default_affinity();
        }

        const auto& jarms = require_key(j, "arms", "scenario");
        if (!jarms.is_array()) throw ParseError("scenario: arms must be an array");
        for (const auto& ja : jarms) {
            ArmConfig arm;
            arm.name = require_key(ja, "name", "arm").get<std::string>();
            arm.interventions_enabled = get_or(ja, "interventions_enabled", false);
            arm.effect_scale = get_or(ja, "effect_scale", 1.0);
            c.arms.push_back(arm);
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
}

std::string scenario_to_json_text(const ScenarioConfig& c) {
    ordered_json j;
    j["schema_version"] = c.schema_version;
    j["seed"] = c.seed;
    j["ticks"] = c.ticks;

    ordered_json groups = ordered_json::array();
    for (const auto& g : c.cohort.groups) {
        groups.push_back(ordered_json{{"group_label", std::string(to_string(g.group))},
                                      {"count", g.count},
                                      {"target_mean_productivity", g.target_mean_productivity},
                                      {"productivity_stddev", g.productivity_stddev}});
    }
    j["cohort"] = ordered_json{{"groups", groups},
                               {"sensitivity_range", c.cohort.sensitivity_range},
                               {"responsiveness_range", c.cohort.responsiveness_range}};

    j["signals"] = ordered_json{{"physiological", shape_json(c.signals.physiological)},
                                {"environmental", shape_json(c.signals.environmental)},
                                {"cognitive_load", shape_json(c.signals.cognitive_load)},
                                {"emotional_state", shape_json(c.signals.emotional_state)},
                                {"noise_stddev", c.signals.noise_stddev},
                                {"diurnal_period_ticks", c.signals.diurnal_period_ticks}};

    j["learning"] = ordered_json{{"alpha", c.learning.alpha},
                                 {"gamma", c.learning.gamma},
                                 {"epsilon", c.learning.epsilon},
                                 {"epsilon_decay", c.learning.epsilon_decay}};

    j["scalarization"] = ordered_json{{"productivity", c.scalarization_productivity},
                                      {"wellbeing", c.scalarization_wellbeing}};

    j["health"] =
        ordered_json{{"mode", c.health.mode == HealthWeightMode::Fixed ? "fixed" : "fit"},
                     {"weights", weights_json(c.health.weights)},
                     {"observed_weights", weights_json(c.health.observed_weights)},
                     {"observed_noise", c.health.observed_noise},
                     {"threshold", c.health.threshold},
                     {"effect_sizes",
                      ordered_json{{"stretch_prompt", c.health.effect_sizes.stretch_prompt},
                                   {"hydration_prompt", c.health.effect_sizes.hydration_prompt},
                                   {"walk_prompt", c.health.effect_sizes.walk_prompt},
                                   {"breath_prompt", c.health.effect_sizes.breath_prompt}}},
                     {"content_map",
                      ordered_json{
                          {"physiological",
                           std::string(to_string(c.health.content_map.physiological_prompt))},
                          {"environmental",
                           std::string(to_string(c.health.content_map.environmental_prompt))}}},
                     {"refit_window", c.health.refit_window},
                     {"refit_period_ticks", c.health.refit_period_ticks}};

    j["objective"] = ordered_json{{"preset", c.objective.preset},
                                  {"scope", c.objective.scope},
                                  {"lambda", c.objective.lambda},
                                  {"cognitive_floor", c.objective.cognitive_floor},
                                  {"environment_floor", c.objective.environment_floor},
                                  {"calibrate", c.objective.calibrate},
                                  {"distraction_penalty", c.objective.distraction_penalty}};

    ordered_json mix;
    if (c.tasks.category_mix.empty()) {
        mix = nullptr; // uniform
    } else {
        mix = ordered_json::object();
        for (const auto& [cat, p] : c.tasks.category_mix) {
            mix[std::string(to_string(cat))] = p;
        }
    }
    j["tasks"] = ordered_json{{"per_tick", c.tasks.per_tick},
                              {"weight_range", c.tasks.weight_range},
                              {"category_mix", mix},
                              {"slots", c.tasks.slots},
                              {"duration_range", c.tasks.duration_range},
                              {"capacity", c.tasks.capacity},
                              {"max_pool_considered", c.tasks.max_pool_considered},
                              {"value_scale", c.tasks.value_scale},
                              {"focus_multiplier", c.tasks.focus_multiplier},
                              {"affinity_multiplier", c.tasks.affinity_multiplier}};

    ordered_json affinity = ordered_json::object();
    for (const auto& [group, cat] : c.affinity) {
        affinity[std::string(to_string(group))] = std::string(to_string(cat));
    }
    j["affinity"] = affinity;

    ordered_json arms = ordered_json::array();
    for (const auto& a : c.arms) {
        arms.push_back(ordered_json{{"name", a.name},
                                    {"interventions_enabled", a.interventions_enabled},
                                    {"effect_scale", a.effect_scale}});
    }
    j["arms"] = arms;

    return j.dump(2) + "\n";
}

std::vector<std::string> validate_scenario(const ScenarioConfig& c) {
    std::vector<std::string> v;
    if (c.schema_version != kScenarioSchemaVersion) {
        v.push_back("schema_version must be " + std::to_string(kScenarioSchemaVersion));
    }
    if (c.ticks < 1) v.push_back("ticks must be >= 1");

    for (auto& msg : validate_cohort_spec(c.cohort)) v.push_back(msg);
    if (c.cohort.groups.empty()) v.push_back("cohort must list at least one group");
    for (auto& msg : validate_signal_spec(c.signals)) v.push_back(msg);
    for (auto& msg : validate_learning_params(c.learning)) v.push_back("learning " + msg);

    if (!(c.scalarization_productivity >= 0.0) || !(c.scalarization_wellbeing >= 0.0)) {
        v.push_back("scalarization weights must be >= 0");
    } else if (c.scalarization_productivity + c.scalarization_wellbeing <= 0.0) {
        v.push_back("scalarization weights must not both be zero");
    }

    for (auto& msg : validate_health_weights(c.health.weights)) v.push_back("health.weights " + msg);
    if (c.health.mode == HealthWeightMode::Fit) {
        for (auto& msg : validate_health_weights(c.health.observed_weights)) {
            v.push_back("health.observed_weights " + msg);
        }
        if (!(c.health.observed_noise >= 0.0)) v.push_back("health.observed_noise must be >= 0");
        if (c.health.refit_window < 2) v.push_back("health.refit_window must be >= 2");
        if (c.health.refit_period_ticks < 1) v.push_back("health.refit_period_ticks must be >= 1");
    }
    if (!(c.health.threshold >= 0.0 && c.health.threshold <= 1.0)) {
        v.push_back("health.threshold out of [0,1]");
    }
    for (double e : {c.health.effect_sizes.stretch_prompt, c.health.effect_sizes.hydration_prompt,
                     c.health.effect_sizes.walk_prompt, c.health.effect_sizes.breath_prompt}) {
        if (!(e >= 0.0)) {
            v.push_back("health.effect_sizes entries must be >= 0");
            break;
        }
    }

    if (!is_known_objective_preset(c.objective.preset)) {
        v.push_back("objective.preset unknown: '" + c.objective.preset + "'");
    }
    if (c.objective.scope != "global" && c.objective.scope != "per_employee") {
        v.push_back("objective.scope must be 'global' or 'per_employee'");
    }
    if (!(c.objective.lambda >= 0.0)) v.push_back("objective.lambda must be >= 0");
    if (!(c.objective.cognitive_floor >= 0.0 && c.objective.cognitive_floor <= 1.0)) {
        v.push_back("objective.cognitive_floor out of [0,1]");
    }
    if (!(c.objective.environment_floor >= 0.0 && c.objective.environment_floor <= 1.0)) {
        v.push_back("objective.environment_floor out of [0,1]");
    }
    if (!(c.objective.distraction_penalty >= 0.0)) {
        v.push_back("objective.distraction_penalty must be >= 0");
    }

    if (c.tasks.per_tick < 0) v.push_back("tasks.per_tick must be >= 0");
    if (!(c.tasks.weight_range[0] >= 0.0 && c.tasks.weight_range[0] <= c.tasks.weight_range[1])) {
        v.push_back("tasks.weight_range must satisfy 0 <= lo <= hi");
    }
    if (!c.tasks.category_mix.empty()) {
        double total = 0.0;
        bool negative = false;
        for (const auto& [cat, p] : c.tasks.category_mix) {
            if (!(p >= 0.0)) negative = true;
            total += p;
        }
        if (negative) v.push_back("tasks.category_mix has a negative probability");
        else if (std::abs(total - 1.0) > 1e-9) {
            v.push_back("tasks.category_mix probabilities must sum to 1");
        }
    }
    if (c.tasks.slots < 1) v.push_back("tasks.slots must be >= 1");
    if (!(c.tasks.duration_range[0] >= 1 && c.tasks.duration_range[0] <= c.tasks.duration_range[1])) {
        v.push_back("tasks.duration_range must satisfy 1 <= lo <= hi");
    }
    if (c.tasks.capacity < 1) v.push_back("tasks.capacity must be >= 1");
    if (c.tasks.max_pool_considered < 1) v.push_back("tasks.max_pool_considered must be >= 1");
    if (!(c.tasks.value_scale >= 0.0)) v.push_back("tasks.value_scale must be >= 0");
    if (!(c.tasks.focus_multiplier >= 0.0)) v.push_back("tasks.focus_multiplier must be >= 0");
    if (!(c.tasks.affinity_multiplier >= 0.0)) v.push_back("tasks.affinity_multiplier must be >= 0");

    if (c.arms.empty()) v.push_back("arms must list at least one arm");
    std::set<std::string> arm_names;
    for (const auto& a : c.arms) {
        if (a.name.empty()) v.push_back("arm names must be non-empty");
        else if (!arm_names.insert(a.name).second) {
            v.push_back("duplicate arm name '" + a.name + "'");
        }
        if (!(a.effect_scale >= 0.0)) {
            v.push_back("arm '" + a.name + "' effect_scale must be >= 0");
        }
    }
    return v;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read scenario file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json_text(buf.str());
}

} // namespace workwell
