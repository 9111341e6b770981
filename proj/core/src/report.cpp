#include "workwell/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

namespace workwell {

using ordered_json = nlohmann::ordered_json;

double satisfaction_rating(double mean_engagement, double mean_sentiment) {
    return std::clamp(3.0 + 2.0 * (mean_engagement - 0.5) + mean_sentiment, 1.0, 5.0);
}

namespace {

// Per-(arm, employee) aggregates extracted from the log.
struct EmployeeAgg {
    double mean_engagement = 0.0;
    double mean_sentiment = 0.0;
    double mean_health = 0.0;
    double final_productivity = 0.0;
    double rating = 0.0;
    double change_pct = 0.0;
};

struct Aggregates {
    std::size_t arm_count = 0;
    std::size_t employee_count = 0;
    // indexed [arm][employee]
    std::vector<std::vector<EmployeeAgg>> per_employee;
};

Aggregates aggregate_log(const ScenarioConfig& config,
                         const std::vector<EmployeeProfile>& cohort,
                         const std::vector<LogRow>& log) {
    if (cohort.empty()) throw ConfigError("build_report: cohort section is missing or empty");
    if (log.empty()) throw ConfigError("build_report: log section is missing or empty");
    if (config.arms.empty()) throw ConfigError("build_report: config lists no arms");

    Aggregates agg;
    agg.arm_count = config.arms.size();
    agg.employee_count = cohort.size();

    std::vector<std::vector<std::vector<double>>> eng(agg.arm_count), sent(agg.arm_count),
        health(agg.arm_count);
    std::vector<std::vector<double>> final_prod(agg.arm_count);
    std::vector<std::vector<std::int64_t>> last_tick(agg.arm_count);
    for (std::size_t a = 0; a < agg.arm_count; ++a) {
        eng[a].resize(agg.employee_count);
        sent[a].resize(agg.employee_count);
        health[a].resize(agg.employee_count);
        final_prod[a].assign(agg.employee_count, 0.0);
        last_tick[a].assign(agg.employee_count, -1);
    }

    for (const auto& row : log) {
        if (row.arm < 0 || static_cast<std::size_t>(row.arm) >= agg.arm_count) {
            throw ConfigError("build_report: log row references unknown arm index " +
                              std::to_string(row.arm));
        }
        if (row.employee < 0 || static_cast<std::size_t>(row.employee) >= agg.employee_count) {
            throw ConfigError("build_report: log row references unknown employee index " +
                              std::to_string(row.employee));
        }
        auto a = static_cast<std::size_t>(row.arm);
        auto e = static_cast<std::size_t>(row.employee);
        eng[a][e].push_back(row.engagement);
        sent[a][e].push_back(row.emotional_state);
        health[a][e].push_back(row.health_effectiveness);
        if (row.tick >= last_tick[a][e]) {
            last_tick[a][e] = row.tick;
            final_prod[a][e] = row.productivity;
        }
    }

    agg.per_employee.resize(agg.arm_count);
    for (std::size_t a = 0; a < agg.arm_count; ++a) {
        agg.per_employee[a].resize(agg.employee_count);
        for (std::size_t e = 0; e < agg.employee_count; ++e) {
            if (eng[a][e].empty()) {
                throw ConfigError("build_report: log has no rows for arm " + std::to_string(a) +
                                  ", employee " + std::to_string(e));
            }
            EmployeeAgg& out = agg.per_employee[a][e];
            out.mean_engagement = mean(eng[a][e]);
            out.mean_sentiment = mean(sent[a][e]);
            out.mean_health = mean(health[a][e]);
            out.final_productivity = final_prod[a][e];
            out.rating = satisfaction_rating(out.mean_engagement, out.mean_sentiment);
            out.change_pct =
                productivity_change(cohort[e].baseline_productivity, out.final_productivity);
        }
    }
    return agg;
}

// Rank-based performance percentile used for the gamification summaries:
// ascending productivity rank, ties broken by employee index, scaled to
// [0,1]; a single employee sits at 0.5.
std::vector<double> tick_percentiles(const std::vector<std::pair<int, double>>& employees) {
    std::vector<std::size_t> order(employees.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (employees[a].second != employees[b].second) {
            return employees[a].second < employees[b].second;
        }
        return employees[a].first < employees[b].first;
    });
    std::vector<double> pct(employees.size(), 0.5);
    if (employees.size() > 1) {
        for (std::size_t rank = 0; rank < order.size(); ++rank) {
            pct[order[rank]] = static_cast<double>(rank) / static_cast<double>(order.size() - 1);
        }
    }
    return pct;
}

std::vector<ArmSummary> summarize_arms(const ScenarioConfig& config, const Aggregates& agg,
                                       const std::vector<LogRow>& log) {
    std::vector<ArmSummary> arms(agg.arm_count);
    std::vector<std::vector<double>> finals(agg.arm_count), changes(agg.arm_count),
        ratings(agg.arm_count);
    for (std::size_t a = 0; a < agg.arm_count; ++a) {
        for (const auto& e : agg.per_employee[a]) {
            finals[a].push_back(e.final_productivity);
            changes[a].push_back(e.change_pct);
            ratings[a].push_back(e.rating);
        }
        arms[a].name = config.arms[a].name;
        arms[a].interventions_enabled = config.arms[a].interventions_enabled;
        arms[a].mean_final_productivity = mean(finals[a]);
        arms[a].mean_change_pct = mean(changes[a]);
        arms[a].satisfaction = satisfaction_score(ratings[a]);
    }
    for (const auto& row : log) {
        if (row.content_id != ContentId::None) {
            ++arms[static_cast<std::size_t>(row.arm)].interventions_delivered;
        }
    }

    // Gamification summaries recomputed from the log (same code path whether
    // the report is built in-run or regenerated from artifacts).
    for (std::size_t a = 0; a < agg.arm_count; ++a) {
        std::map<std::int64_t, std::vector<std::pair<int, double>>> by_tick;
        std::map<std::int64_t, std::vector<double>> sentiment_by_tick;
        for (const auto& row : log) {
            if (static_cast<std::size_t>(row.arm) != a) continue;
            by_tick[row.tick].emplace_back(row.employee, row.productivity);
            sentiment_by_tick[row.tick].push_back(row.emotional_state);
        }
        std::vector<double> challenges, frequencies;
        for (const auto& [tick, employees] : by_tick) {
            std::vector<double> pct = tick_percentiles(employees);
            const auto& sentiments = sentiment_by_tick[tick];
            for (std::size_t i = 0; i < employees.size(); ++i) {
                GameMechanics m = gamification_params(pct[i], sentiments[i]);
                challenges.push_back(m.challenge_level);
                frequencies.push_back(m.reward_frequency);
            }
        }
        arms[a].mean_challenge_level = mean(challenges);
        arms[a].mean_reward_frequency = mean(frequencies);
    }
    return arms;
}

} // namespace

ArmComparison compare_arms(const ScenarioConfig& config,
                           const std::vector<EmployeeProfile>& cohort,
                           const std::vector<LogRow>& log) {
    if (config.arms.size() < 2) {
        throw std::invalid_argument("compare_arms: need at least 2 arms, got " +
                                    std::to_string(config.arms.size()));
    }
    Aggregates agg = aggregate_log(config, cohort, log);
    ArmComparison cmp;
    cmp.arms = summarize_arms(config, agg, log);
    std::vector<std::vector<double>> groups(agg.arm_count);
    for (std::size_t a = 0; a < agg.arm_count; ++a) {
        for (const auto& e : agg.per_employee[a]) groups[a].push_back(e.final_productivity);
    }
    cmp.anova = anova_oneway(groups);
    return cmp;
}

MetricsReport build_report(const ScenarioConfig& config,
                           const std::vector<EmployeeProfile>& cohort,
                           const std::vector<LogRow>& log,
                           const CalibrationInfo& calibration) {
    Aggregates agg = aggregate_log(config, cohort, log);

    MetricsReport report;
    report.calibration = calibration;
    report.arms = summarize_arms(config, agg, log);

    // Pooled per-employee views across arms.
    std::vector<double> all_ratings, all_finals, baselines;
    for (std::size_t a = 0; a < agg.arm_count; ++a) {
        for (const auto& e : agg.per_employee[a]) {
            all_ratings.push_back(e.rating);
            all_finals.push_back(e.final_productivity);
        }
    }
    for (const auto& p : cohort) baselines.push_back(p.baseline_productivity);
    report.satisfaction_overall = satisfaction_score(all_ratings);
    report.productivity_change_overall = productivity_change(mean(baselines), mean(all_finals));

    // Per-group metrics, pooled across arms.
    std::map<GroupLabel, std::vector<std::size_t>> members;
    for (std::size_t e = 0; e < cohort.size(); ++e) {
        members[cohort[e].group_label].push_back(e);
    }
    for (const auto& [group, idx] : members) {
        GroupMetrics gm;
        gm.group = group;
        gm.count = static_cast<int>(idx.size());
        std::vector<double> g_ratings, g_finals, g_base;
        for (std::size_t e : idx) g_base.push_back(cohort[e].baseline_productivity);
        for (std::size_t a = 0; a < agg.arm_count; ++a) {
            std::vector<double> g_arm_finals;
            for (std::size_t e : idx) {
                const auto& agg_e = agg.per_employee[a][e];
                g_ratings.push_back(agg_e.rating);
                g_finals.push_back(agg_e.final_productivity);
                g_arm_finals.push_back(agg_e.final_productivity);
            }
            gm.arm_mean_final.push_back(mean(g_arm_finals));
        }
        gm.satisfaction = satisfaction_score(g_ratings);
        gm.mean_baseline = mean(g_base);
        gm.mean_final = mean(g_finals);
        gm.change_pct = productivity_change(gm.mean_baseline, gm.mean_final);
        report.per_group.push_back(std::move(gm));
    }

    // OLS of per-(arm,employee) wellness outcome on productivity change and
    // satisfaction rating. Skipped (with the reason recorded) when the run is
    // too small or the design is degenerate.
    std::vector<RegressionRow> rows;
    for (std::size_t a = 0; a < agg.arm_count; ++a) {
        for (const auto& e : agg.per_employee[a]) {
            rows.push_back(RegressionRow{e.mean_health, e.change_pct, e.rating});
        }
    }
    if (rows.size() < 4) {
        report.regression_note = "skipped: fewer than 4 (arm, employee) rows";
    } else {
        try {
            report.regression = ols_fit(rows);
        } catch (const ConfigError& e) {
            report.regression_note = std::string("skipped: ") + e.what();
        }
    }

    // ANOVA of final productivity across intervention arms.
    if (agg.arm_count < 2) {
        report.anova_note = "skipped: fewer than 2 arms";
    } else if (agg.employee_count < 2) {
        report.anova_note = "skipped: fewer than 2 employees per arm";
    } else {
        std::vector<std::vector<double>> groups(agg.arm_count);
        for (std::size_t a = 0; a < agg.arm_count; ++a) {
            for (const auto& e : agg.per_employee[a]) groups[a].push_back(e.final_productivity);
        }
        report.anova = anova_oneway(groups);
    }
    return report;
}

std::string report_to_json_text(const MetricsReport& report) {
    ordered_json j;
    j["schema_version"] = 1;
    j["intervention_effect_model"] = "synthetic";

    ordered_json sat_groups = ordered_json::object();
    for (const auto& g : report.per_group) {
        sat_groups[std::string(to_string(g.group))] = g.satisfaction;
    }
    j["satisfaction"] =
        ordered_json{{"overall", report.satisfaction_overall}, {"per_group", sat_groups}};

    ordered_json prod_groups = ordered_json::object();
    for (const auto& g : report.per_group) {
        prod_groups[std::string(to_string(g.group))] =
            ordered_json{{"count", g.count},
                         {"baseline_mean", g.mean_baseline},
                         {"final_mean", g.mean_final},
                         {"change_pct", g.change_pct},
                         {"arm_final_means", g.arm_mean_final}};
    }
    j["productivity"] = ordered_json{{"overall_change_pct", report.productivity_change_overall},
                                     {"per_group", prod_groups}};

    ordered_json arms = ordered_json::array();
    for (const auto& a : report.arms) {
        arms.push_back(ordered_json{{"name", a.name},
                                    {"interventions_enabled", a.interventions_enabled},
                                    {"mean_final_productivity", a.mean_final_productivity},
                                    {"mean_change_pct", a.mean_change_pct},
                                    {"satisfaction", a.satisfaction},
                                    {"interventions_delivered", a.interventions_delivered},
                                    {"mean_challenge_level", a.mean_challenge_level},
                                    {"mean_reward_frequency", a.mean_reward_frequency}});
    }
    j["arms"] = arms;

    if (report.regression) {
        const auto& r = *report.regression;
        j["regression"] = ordered_json{{"alpha_hat", r.alpha_hat},
                                       {"beta1_hat", r.beta1_hat},
                                       {"beta2_hat", r.beta2_hat},
                                       {"residual_variance", r.residual_variance},
                                       {"r_squared", r.r_squared}};
    } else {
        j["regression"] = nullptr;
        j["regression_note"] = report.regression_note;
    }

    if (report.anova) {
        const auto& a = *report.anova;
        ordered_json ja{{"ss_between", a.ss_between},
                        {"ss_within", a.ss_within},
                        {"df_between", a.df_between},
                        {"df_within", a.df_within},
                        {"f_infinite", a.f_infinite}};
        if (!a.f_infinite) ja["f_statistic"] = a.f_statistic;
        j["anova"] = ja;
    } else {
        j["anova"] = nullptr;
        j["anova_note"] = report.anova_note;
    }

    ordered_json jc{{"enabled", report.calibration.enabled}};
    if (report.calibration.enabled) {
        jc["setpoint"] = report.calibration.setpoint;
        jc["achieved_distraction"] = report.calibration.achieved_distraction;
    }
    jc["coefficient"] = report.calibration.coefficient;
    j["calibration"] = jc;

    return j.dump(2) + "\n";
}

std::string report_groups_csv(const MetricsReport& report, const std::vector<ArmSummary>& arms) {
    std::string out = "group,age_range,gender,productivity_score,baseline_mean,change_pct";
    for (const auto& a : arms) {
        out += ",final_mean_" + a.name;
    }
    out += '\n';
    for (const auto& g : report.per_group) {
        const GroupReference& ref = group_reference(g.group);
        out += to_string(g.group);
        out += ',';
        out += to_string(ref.age_range);
        out += ',';
        out += to_string(ref.gender);
        out += ',';
        out += fmt_double(g.mean_final);
        out += ',';
        out += fmt_double(g.mean_baseline);
        out += ',';
        out += fmt_double(g.change_pct);
        for (double v : g.arm_mean_final) {
            out += ',';
            out += fmt_double(v);
        }
        out += '\n';
    }
    return out;
}

} // namespace workwell
