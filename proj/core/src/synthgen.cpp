#include "workwell/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

namespace workwell {

namespace {

std::string spec_error_text(const std::vector<std::string>& violations) {
    std::string msg = "invalid spec:";
    for (const auto& v : violations) {
        msg += " ";
        msg += v;
        msg += ";";
    }
    return msg;
}

} // namespace

std::vector<std::string> validate_cohort_spec(const CohortSpec& spec) {
    std::vector<std::string> violations;
    std::set<GroupLabel> seen;
    for (const auto& g : spec.groups) {
        std::string label(to_string(g.group));
        if (!seen.insert(g.group).second) {
            violations.push_back("cohort group " + label + " listed more than once");
        }
        if (g.count < 0) {
            violations.push_back("cohort group " + label + " count must be >= 0");
        }
        if (g.target_mean_productivity >= 0.0 &&
            !(g.target_mean_productivity >= 1.0 && g.target_mean_productivity <= 5.0)) {
            violations.push_back("cohort group " + label +
                                 " target_mean_productivity out of [1,5]");
        }
        if (!(g.productivity_stddev >= 0.0) || !std::isfinite(g.productivity_stddev)) {
            violations.push_back("cohort group " + label + " productivity_stddev must be >= 0");
        }
    }
    auto check_range = [&](std::array<double, 2> r, const char* name, double lo, double hi) {
        if (!(r[0] <= r[1]) || r[0] < lo || r[1] > hi) {
            violations.push_back(std::string("cohort ") + name + " must be an ordered range within [" +
                                 fmt_double(lo) + "," + fmt_double(hi) + "]");
        }
    };
    check_range(spec.responsiveness_range, "responsiveness_range", 0.0, 1.0);
    if (!(spec.sensitivity_range[0] <= spec.sensitivity_range[1]) || spec.sensitivity_range[0] < 0.0) {
        violations.push_back("cohort sensitivity_range must be an ordered nonnegative range");
    }
    return violations;
}

std::vector<std::string> validate_signal_spec(const SignalSpec& spec) {
    std::vector<std::string> violations;
    auto check_shape = [&](const SignalShape& s, const char* name, double lo, double hi) {
        if (!std::isfinite(s.mean) || s.mean < lo || s.mean > hi) {
            violations.push_back(std::string("signals.") + name + ".mean out of [" + fmt_double(lo) +
                                 "," + fmt_double(hi) + "]");
        }
        if (!std::isfinite(s.amplitude) || s.amplitude < 0.0) {
            violations.push_back(std::string("signals.") + name + ".amplitude must be >= 0");
        }
    };
    check_shape(spec.physiological, "physiological", 0.0, 1.0);
    check_shape(spec.environmental, "environmental", 0.0, 1.0);
    check_shape(spec.cognitive_load, "cognitive_load", 0.0, 1.0);
    check_shape(spec.emotional_state, "emotional_state", -1.0, 1.0);
    if (!std::isfinite(spec.noise_stddev) || spec.noise_stddev < 0.0) {
        violations.push_back("signals.noise_stddev must be >= 0");
    }
    if (spec.diurnal_period_ticks < 1) {
        violations.push_back("signals.diurnal_period_ticks must be >= 1");
    }
    return violations;
}

std::vector<EmployeeProfile> generate_cohort(const CohortSpec& spec, RngState seed) {
    auto violations = validate_cohort_spec(spec);
    if (!violations.empty()) {
        throw ConfigError(spec_error_text(violations));
    }

    std::size_t total = 0;
    for (const auto& g : spec.groups) total += static_cast<std::size_t>(g.count);

    std::vector<EmployeeProfile> cohort;
    cohort.reserve(total);
    std::uint64_t ordinal = 0;
    for (const auto& g : spec.groups) {
        const GroupReference& ref = group_reference(g.group);
        double target = g.target_mean_productivity >= 0.0 ? g.target_mean_productivity
                                                          : ref.mean_productivity;
        for (int n = 0; n < g.count; ++n, ++ordinal) {
            // Independent substream per employee ordinal so generation can be
            // parallelized without changing the stream.
            Rng rng(derive_stream(seed, ordinal));
            EmployeeProfile p;
            char idbuf[16];
            std::snprintf(idbuf, sizeof(idbuf), "E%05llu",
                          static_cast<unsigned long long>(ordinal));
            p.id = idbuf;
            p.group_label = g.group;
            p.age_range = ref.age_range;
            p.gender = ref.gender;
            p.baseline_productivity = truncated_normal(rng, target, g.productivity_stddev, 1.0, 5.0);
            p.distraction_sensitivity =
                rng.uniform(spec.sensitivity_range[0], spec.sensitivity_range[1]);
            p.intervention_responsiveness =
                rng.uniform(spec.responsiveness_range[0], spec.responsiveness_range[1]);
            cohort.push_back(std::move(p));
        }
    }
    return cohort;
}

BiometricSample sample_biometrics(const EmployeeProfile& profile, const SignalSpec& spec,
                                  std::int64_t tick, RngState seed) {
    if (tick < 0) {
        throw std::invalid_argument("sample_biometrics: tick must be >= 0");
    }
    // Counter-style stream: every (employee, tick) pair owns a substream, so
    // samples do not depend on evaluation order.
    Rng rng(derive_stream(derive_stream(seed, fnv1a64(profile.id)),
                          static_cast<std::uint64_t>(tick)));
    double phase =
        std::sin(2.0 * std::numbers::pi * static_cast<double>(tick % spec.diurnal_period_ticks) /
                 static_cast<double>(spec.diurnal_period_ticks));
    auto draw = [&](const SignalShape& shape, double lo, double hi) {
        double noise = spec.noise_stddev == 0.0 ? 0.0 : spec.noise_stddev * rng.gaussian();
        return std::clamp(shape.mean + shape.amplitude * phase + noise, lo, hi);
    };
    BiometricSample s;
    s.employee_id = profile.id;
    s.tick = tick;
    s.physiological = draw(spec.physiological, 0.0, 1.0);
    s.environmental = draw(spec.environmental, 0.0, 1.0);
    s.cognitive_load = draw(spec.cognitive_load, 0.0, 1.0);
    s.emotional_state = draw(spec.emotional_state, -1.0, 1.0);
    return s;
}

std::vector<TaskInstance> generate_tasks(int n,
                                         const std::vector<std::pair<TaskCategory, double>>& category_mix,
                                         std::array<double, 2> weight_range, int slots,
                                         RngState seed) {
    if (n < 0) throw ConfigError("generate_tasks: n must be >= 0");
    if (slots < 1) throw ConfigError("generate_tasks: slots must be >= 1");
    if (!(weight_range[0] >= 0.0) || !(weight_range[0] <= weight_range[1])) {
        throw ConfigError("generate_tasks: weight_range must satisfy 0 <= lo <= hi");
    }
    if (category_mix.empty()) throw ConfigError("generate_tasks: category_mix is empty");
    double total = 0.0;
    for (const auto& [cat, p] : category_mix) {
        if (!(p >= 0.0)) throw ConfigError("generate_tasks: category_mix has a negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ConfigError("generate_tasks: category_mix probabilities sum to " + fmt_double(total) +
                          ", expected 1");
    }

    Rng rng(seed);
    std::vector<TaskInstance> tasks;
    tasks.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        TaskInstance t;
        char idbuf[16];
        std::snprintf(idbuf, sizeof(idbuf), "T%05d", i);
        t.task_id = idbuf;
        double u = rng.uniform();
        double acc = 0.0;
        t.category = category_mix.back().first;
        for (const auto& [cat, p] : category_mix) {
            acc += p;
            if (u < acc) {
                t.category = cat;
                break;
            }
        }
        t.priority_weight = rng.uniform(weight_range[0], weight_range[1]);
        t.duration_ticks = 1;
        t.slot = rng.uniform_int(slots);
        tasks.push_back(std::move(t));
    }
    return tasks;
}

std::string cohort_to_csv(const std::vector<EmployeeProfile>& cohort) {
    std::string out = "id,group_label,age_range,gender,baseline_productivity,"
                      "distraction_sensitivity,intervention_responsiveness\n";
    for (const auto& p : cohort) {
        out += p.id;
        out += ',';
        out += to_string(p.group_label);
        out += ',';
        out += to_string(p.age_range);
        out += ',';
        out += to_string(p.gender);
        out += ',';
        out += fmt_double(p.baseline_productivity);
        out += ',';
        out += fmt_double(p.distraction_sensitivity);
        out += ',';
        out += fmt_double(p.intervention_responsiveness);
        out += '\n';
    }
    return out;
}

std::vector<EmployeeProfile> cohort_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("cohort csv: missing header");
    }
    std::vector<EmployeeProfile> cohort;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 7) {
            throw ParseError("cohort csv line " + std::to_string(lineno) + ": expected 7 columns");
        }
        EmployeeProfile p;
        p.id = cells[0];
        p.group_label = group_label_from_string(cells[1]);
        p.age_range = age_range_from_string(cells[2]);
        p.gender = gender_from_string(cells[3]);
        try {
            p.baseline_productivity = std::stod(cells[4]);
            p.distraction_sensitivity = std::stod(cells[5]);
            p.intervention_responsiveness = std::stod(cells[6]);
        } catch (const std::exception&) {
            throw ParseError("cohort csv line " + std::to_string(lineno) + ": bad numeric field");
        }
        cohort.push_back(std::move(p));
    }
    return cohort;
}

} // namespace workwell
