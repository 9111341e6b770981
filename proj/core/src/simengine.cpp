#include "workwell/simengine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "workwell/neuroecon.hpp"

namespace workwell {

int cognitive_load_bucket(double cognitive_load) {
    if (cognitive_load < 0.33) return 0;
    if (cognitive_load < 0.66) return 1;
    return 2;
}

int backlog_bucket(std::size_t pending_tasks) {
    if (pending_tasks == 0) return 0;
    if (pending_tasks == 1) return 1;
    return 2;
}

int policy_state(int cognitive_bucket, int backlog) {
    return cognitive_bucket * 3 + backlog;
}

namespace {

struct PendingTransition {
    int state = 0;
    int action = 0;
    double reward = 0.0;
};

std::vector<std::pair<TaskCategory, double>> resolved_mix(const TaskStreamConfig& tasks) {
    if (!tasks.category_mix.empty()) return tasks.category_mix;
    std::vector<std::pair<TaskCategory, double>> mix;
    for (int i = 0; i < kTaskCategoryCount; ++i) {
        mix.emplace_back(static_cast<TaskCategory>(i), 1.0 / kTaskCategoryCount);
    }
    return mix;
}

} // namespace

CalibrationInfo calibrate_distraction_penalty(const ScenarioConfig& config,
                                              const std::vector<EmployeeProfile>& cohort) {
    CalibrationInfo info;
    info.enabled = config.objective.calibrate;
    info.coefficient = config.objective.distraction_penalty;
    if (!info.enabled) return info;

    std::vector<double> sensitivities;
    sensitivities.reserve(cohort.size());
    for (const auto& p : cohort) sensitivities.push_back(p.distraction_sensitivity);
    double mean_sensitivity = mean(sensitivities);

    ConstrainedProblem problem =
        make_objective_preset(config.objective.preset, mean_sensitivity, config.objective.lambda,
                              config.objective.cognitive_floor, config.objective.environment_floor);
    double start[2] = {0.5, 0.5};
    SolveResult solved = minimize_constrained(problem, start);
    info.setpoint = solved.x;
    info.achieved_distraction =
        distraction_level(solved.x[0], solved.x[1], mean_sensitivity);
    // The achievable distraction floor softens the per-tick penalty: a fully
    // avoidable distraction keeps the base coefficient, an unavoidable one
    // suppresses it so arm comparisons stay meaningful.
    info.coefficient =
        config.objective.distraction_penalty * (1.0 - info.achieved_distraction);
    return info;
}


RunArtifacts run_scenario(const ScenarioConfig& config) {
    {
        auto violations = validate_scenario(config);
        if (!violations.empty()) {
            std::string msg = "run_scenario: invalid config:";
            for (const auto& v : violations) msg += " " + v + ";";
            throw ConfigError(msg);
        }
    }

    RunArtifacts artifacts;
    artifacts.config = config;

    const RngState seed{config.seed};
    // All substreams derive from the scenario seed and never from the arm, so
    // arms share employees, task streams, biometric noise, and exploration.
    const RngState cohort_seed = derive_stream(seed, "cohort");
    const RngState signal_seed = derive_stream(seed, "signals");
    const RngState task_seed = derive_stream(seed, "tasks");
    const RngState duration_seed = derive_stream(seed, "durations");
    const RngState policy_seed = derive_stream(seed, "policy");
    const RngState health_seed = derive_stream(seed, "health");

    artifacts.cohort = generate_cohort(config.cohort, cohort_seed);
    const std::size_t n_employees = artifacts.cohort.size();
    if (n_employees == 0) {
        throw ConfigError("run_scenario: cohort is empty (all group counts are zero)");
    }

    artifacts.calibration = calibrate_distraction_penalty(config, artifacts.cohort);
    const double penalty_coeff = artifacts.calibration.coefficient;

    const auto mix = resolved_mix(config.tasks);
    const bool draw_durations =
        config.tasks.duration_range[0] != 1 || config.tasks.duration_range[1] != 1;

    artifacts.log.reserve(config.arms.size() * static_cast<std::size_t>(config.ticks) *
                          n_employees);

    for (std::size_t arm_idx = 0; arm_idx < config.arms.size(); ++arm_idx) {
        const ArmConfig& arm = config.arms[arm_idx];
        QTable qtable(kPolicyStateCount, kPolicyActionCount);

        std::vector<double> productivity(n_employees);
        for (std::size_t e = 0; e < n_employees; ++e) {
            productivity[e] = artifacts.cohort[e].baseline_productivity;
        }
        std::vector<std::int64_t> busy_until(n_employees, 0);
        std::vector<std::optional<PendingTransition>> pending(n_employees);

        std::vector<TaskInstance> pool;
        std::uint64_t task_ordinal = 0;

        SlidingWindowFitter fitter(static_cast<std::size_t>(std::max(2, config.health.refit_window)),
                                   config.health.weights);

        for (std::int64_t tick = 0; tick < config.ticks; ++tick) {
            try {
                // Task arrivals, shared across arms.
                auto arrivals = generate_tasks(config.tasks.per_tick, mix,
                                               config.tasks.weight_range, config.tasks.slots,
                                               derive_stream(task_seed,
                                                             static_cast<std::uint64_t>(tick)));
                if (draw_durations) {
                    Rng dur_rng(derive_stream(duration_seed, static_cast<std::uint64_t>(tick)));
                    for (auto& t : arrivals) {
                        t.duration_ticks =
                            config.tasks.duration_range[0] +
                            dur_rng.uniform_int(config.tasks.duration_range[1] -
                                                config.tasks.duration_range[0] + 1);
                    }
                }
                for (auto& t : arrivals) {
                    char idbuf[24];
                    std::snprintf(idbuf, sizeof(idbuf), "T%08llu",
                                  static_cast<unsigned long long>(task_ordinal++));
                    t.task_id = idbuf;
                    pool.push_back(std::move(t));
                }

                // Observations and policy states.
                std::vector<BiometricSample> samples;
                samples.reserve(n_employees);
                std::vector<int> states(n_employees);
                const int backlog = backlog_bucket(pool.size());
                for (std::size_t e = 0; e < n_employees; ++e) {
                    samples.push_back(sample_biometrics(artifacts.cohort[e], config.signals, tick,
                                                        signal_seed));
                    states[e] = policy_state(cognitive_load_bucket(samples[e].cognitive_load),
                                             backlog);
                }

                // Previous tick's transitions complete against today's states.
                for (std::size_t e = 0; e < n_employees; ++e) {
                    if (pending[e]) {
                        q_update(qtable, pending[e]->state, pending[e]->action,
                                 pending[e]->reward, states[e], config.learning);
                        pending[e].reset();
                    }
                }

                // Action selection (exploration stream shared across arms).
                std::vector<int> actions(n_employees);
                for (std::size_t e = 0; e < n_employees; ++e) {
                    Rng explore(derive_stream(derive_stream(policy_seed,
                                                            static_cast<std::uint64_t>(tick)),
                                              static_cast<std::uint64_t>(e)));
                    actions[e] = select_action(qtable, states[e], config.learning.epsilon, explore);
                }

                // Assignment over eligible employees and the offered pool
                // prefix.
                std::vector<std::size_t> eligible;
                for (std::size_t e = 0; e < n_employees; ++e) {
                    if (busy_until[e] > tick) continue;
                    if (actions[e] == kBreakAction) continue;
                    eligible.push_back(e);
                }
                const int offered = static_cast<int>(
                    std::min<std::size_t>(pool.size(),
                                          static_cast<std::size_t>(config.tasks.max_pool_considered)));
                std::vector<double> task_value(n_employees, 0.0);
                if (!eligible.empty() && offered > 0) {
                    AssignmentInstance instance(static_cast<int>(eligible.size()), offered,
                                                config.tasks.slots, config.tasks.capacity);
                    for (std::size_t ie = 0; ie < eligible.size(); ++ie) {
                        const EmployeeProfile& emp = artifacts.cohort[eligible[ie]];
                        auto affinity_it = config.affinity.find(emp.group_label);
                        for (int jt = 0; jt < offered; ++jt) {
                            const TaskInstance& task = pool[static_cast<std::size_t>(jt)];
                            double w = task.priority_weight;
                            if (actions[eligible[ie]] == static_cast<int>(task.category)) {
                                w *= config.tasks.focus_multiplier;
                            }
                            if (affinity_it != config.affinity.end() &&
                                affinity_it->second == task.category) {
                                w *= config.tasks.affinity_multiplier;
                            }
                            instance.set_weight(static_cast<int>(ie), jt, task.slot, w);
                        }
                    }
                    AssignmentResult assignment = schedule_assignments(instance);
                    std::vector<int> taken;
                    for (const auto& [ie, jt, k] : assignment.chosen) {
                        std::size_t e = eligible[static_cast<std::size_t>(ie)];
                        task_value[e] += instance.weight(ie, jt, k) * config.tasks.value_scale;
                        busy_until[e] =
                            std::max<std::int64_t>(busy_until[e],
                                                   tick + pool[static_cast<std::size_t>(jt)]
                                                              .duration_ticks);
                        taken.push_back(jt);
                    }
                    std::sort(taken.begin(), taken.end(), std::greater<int>());
                    for (int jt : taken) pool.erase(pool.begin() + jt);
                }

                // Wellness: gate on the current health weights, synthesize
                // the field observations the adaptive fit learns from.
                const HealthWeights weights_now =
                    config.health.mode == HealthWeightMode::Fit ? fitter.current()
                                                                : config.health.weights;
                for (std::size_t e = 0; e < n_employees; ++e) {
                    const BiometricSample& b = samples[e];
                    const EmployeeProfile& emp = artifacts.cohort[e];

                    double h = health_effectiveness(b.physiological, b.environmental, weights_now);
                    InterventionContent content{ContentId::None, 0.0};
                    double delta = 0.0;
                    if (arm.interventions_enabled) {
                        content = select_content(b, weights_now, config.health.threshold,
                                                 config.health.content_map);
                        delta = apply_intervention(emp, content, config.health.effect_sizes) *
                                arm.effect_scale;
                    }
                    if (config.health.mode == HealthWeightMode::Fit) {
                        Rng obs_rng(derive_stream(derive_stream(health_seed,
                                                                static_cast<std::uint64_t>(tick)),
                                                  static_cast<std::uint64_t>(e)));
                        double observed =
                            config.health.observed_weights.w1 * b.physiological +
                            config.health.observed_weights.w2 * b.environmental +
                            (config.health.observed_noise == 0.0
                                 ? 0.0
                                 : config.health.observed_noise * obs_rng.gaussian());
                        fitter.observe(
                            HealthObservation{b.physiological, b.environmental, observed});
                    }

                    double distraction =
                        distraction_level(b.cognitive_load, b.environmental,
                                          emp.distraction_sensitivity);
                    double engagement = engagement_index(distraction).value;
                    // Taking a break halves the distraction penalty that tick.
                    double penalty = penalty_coeff * distraction *
                                     (actions[e] == kBreakAction ? 0.5 : 1.0);

                    productivity[e] += task_value[e] + delta - penalty;

                    double reward = scalarize(RewardVector{task_value[e] - penalty, engagement},
                                              config.scalarization_productivity,
                                              config.scalarization_wellbeing);
                    pending[e] = PendingTransition{states[e], actions[e], reward};

                    LogRow row;
                    row.arm = static_cast<std::int32_t>(arm_idx);
                    row.tick = tick;
                    row.employee = static_cast<std::int32_t>(e);
                    row.physiological = b.physiological;
                    row.environmental = b.environmental;
                    row.cognitive_load = b.cognitive_load;
                    row.emotional_state = b.emotional_state;
                    row.distraction = distraction;
                    row.engagement = engagement;
                    row.action = actions[e];
                    row.task_value = task_value[e];
                    row.health_effectiveness = h;
                    row.content_id = content.content_id;
                    row.intensity = content.intensity;
                    row.intervention_delta = delta;
                    row.distraction_penalty = penalty;
                    row.productivity = productivity[e];
                    artifacts.log.push_back(std::move(row));
                }

                if (config.health.mode == HealthWeightMode::Fit &&
                    (tick + 1) % config.health.refit_period_ticks == 0) {
                    fitter.refit();
                }
            } catch (const ConfigError&) {
                throw;
            } catch (const std::exception& e) {
                throw std::runtime_error("run_scenario: arm '" + arm.name + "', tick " +
                                         std::to_string(tick) + ": " + e.what());
            }
        }

        // Flush the final transitions against a virtual observation at
        // tick == ticks so every logged step trained the policy.
        const int final_backlog = backlog_bucket(pool.size());
        for (std::size_t e = 0; e < n_employees; ++e) {
            if (!pending[e]) continue;
            BiometricSample b = sample_biometrics(artifacts.cohort[e], config.signals,
                                                  config.ticks, signal_seed);
            int s_final = policy_state(cognitive_load_bucket(b.cognitive_load), final_backlog);
            q_update(qtable, pending[e]->state, pending[e]->action, pending[e]->reward, s_final,
                     config.learning);
            pending[e].reset();
        }

        artifacts.qtables.push_back(std::move(qtable));
    }

    artifacts.report =
        build_report(config, artifacts.cohort, artifacts.log, artifacts.calibration);
    return artifacts;
}

} // namespace workwell
