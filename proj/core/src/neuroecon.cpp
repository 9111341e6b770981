#include "workwell/neuroecon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace workwell {

double action_value(const ValueInputs& in) {
    return in.expected_reward - in.cost;
}

double distraction_level(double cognitive_load, double environment, double sensitivity) {
    auto bad = [&](const char* name, double v) {
        throw std::invalid_argument(std::string("distraction_level: ") + name + " = " +
                                    fmt_double(v) + " out of range");
    };
    if (!(cognitive_load >= 0.0 && cognitive_load <= 1.0)) bad("cognitive_load", cognitive_load);
    if (!(environment >= 0.0 && environment <= 1.0)) bad("environment", environment);
    if (!(sensitivity >= 0.0) || !std::isfinite(sensitivity)) bad("sensitivity", sensitivity);
    double mixed = sensitivity * (kCognitiveLoadWeight * cognitive_load +
                                  kEnvironmentWeight * environment);
    return std::clamp(mixed, 0.0, 1.0);
}

EngagementIndex engagement_index(double distraction) {
    if (!(distraction >= 0.0 && distraction <= 1.0)) {
        throw std::invalid_argument("engagement_index: distraction " + fmt_double(distraction) +
                                    " out of [0,1]");
    }
    return EngagementIndex{1.0 - distraction};
}

namespace {

std::string point_text(std::span<const double> x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ", ";
        s += fmt_double(x[i]);
    }
    s += ")";
    return s;
}

double eval_checked(const std::function<double(std::span<const double>)>& fn,
                    std::span<const double> x, const char* what) {
    double v = fn(x);
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string("minimize_constrained: ") + what +
                                    " returned non-finite value at x = " + point_text(x));
    }
    return v;
}

void check_problem(const ConstrainedProblem& p) {
    if (p.dimension < 1) throw std::invalid_argument("minimize_constrained: dimension must be >= 1");
    if (!p.objective) throw std::invalid_argument("minimize_constrained: objective is empty");
    if (p.bounds.size() != static_cast<std::size_t>(p.dimension)) {
        throw std::invalid_argument("minimize_constrained: bounds size does not match dimension");
    }
    for (const auto& b : p.bounds) {
        if (!(b[0] <= b[1])) {
            throw std::invalid_argument("minimize_constrained: bound lo > hi");
        }
    }
}

std::vector<double> clamp_to_bounds(const ConstrainedProblem& p, std::vector<double> x) {
    for (int i = 0; i < p.dimension; ++i) {
        x[i] = std::clamp(x[i], p.bounds[i][0], p.bounds[i][1]);
    }
    return x;
}

double violation_at(const ConstrainedProblem& p, std::span<const double> x) {
    double worst = 0.0;
    for (const auto& g : p.inequality_constraints) {
        worst = std::max(worst, eval_checked(g, x, "inequality constraint"));
    }
    for (const auto& h : p.equality_constraints) {
        worst = std::max(worst, std::abs(eval_checked(h, x, "equality constraint")));
    }
    return worst;
}

} // namespace

double penalty_objective(const ConstrainedProblem& problem, std::span<const double> x, double mu) {
    double value = eval_checked(problem.objective, x, "objective");
    for (const auto& g : problem.inequality_constraints) {
        double gv = eval_checked(g, x, "inequality constraint");
        if (gv > 0.0) value += mu * gv * gv;
    }
    for (const auto& h : problem.equality_constraints) {
        double hv = eval_checked(h, x, "equality constraint");
        value += mu * hv * hv;
    }
    return value;
}

std::vector<double> penalty_gradient(const ConstrainedProblem& problem, std::span<const double> x,
                                     double mu) {
    std::vector<double> probe(x.begin(), x.end());
    std::vector<double> grad(probe.size());
    for (std::size_t i = 0; i < probe.size(); ++i) {
        double h = 1e-6 * std::max(1.0, std::abs(probe[i]));
        double saved = probe[i];
        probe[i] = saved + h;
        double fp = penalty_objective(problem, probe, mu);
        probe[i] = saved - h;
        double fm = penalty_objective(problem, probe, mu);
        probe[i] = saved;
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

SolveResult minimize_constrained(const ConstrainedProblem& problem, std::span<const double> start,
                                 const SolverOptions& options) {
    check_problem(problem);
    if (options.budget < 1) throw std::invalid_argument("minimize_constrained: budget must be >= 1");
    if (start.size() != static_cast<std::size_t>(problem.dimension)) {
        throw std::invalid_argument("minimize_constrained: start size does not match dimension");
    }
    for (int i = 0; i < problem.dimension; ++i) {
        if (start[i] < problem.bounds[i][0] || start[i] > problem.bounds[i][1]) {
            throw std::invalid_argument("minimize_constrained: start outside bounds at coordinate " +
                                        std::to_string(i));
        }
    }

    std::vector<double> x(start.begin(), start.end());

    // Candidate tracking: feasible-within-tol beats infeasible; then lower
    // objective; then lower violation. The start is always a candidate, so a
    // feasible start can never be made worse.
    std::vector<double> best_x = x;
    double best_f = eval_checked(problem.objective, x, "objective");
    double best_viol = violation_at(problem, x);
    auto consider = [&](const std::vector<double>& cand) {
        double f = eval_checked(problem.objective, cand, "objective");
        double viol = violation_at(problem, cand);
        bool cand_ok = viol <= options.constraint_tol;
        bool best_ok = best_viol <= options.constraint_tol;
        bool better = false;
        if (cand_ok != best_ok) {
            better = cand_ok;
        } else if (cand_ok) {
            better = f < best_f;
        } else {
            better = viol < best_viol || (viol == best_viol && f < best_f);
        }
        if (better) {
            best_x = cand;
            best_f = f;
            best_viol = viol;
        }
    };

    int iterations = 0;
    double mu = options.initial_penalty;
    for (int round = 0; round < options.outer_rounds && iterations < options.budget; ++round) {
        double phi = penalty_objective(problem, x, mu);
        while (iterations < options.budget) {
            ++iterations;
            std::vector<double> grad = penalty_gradient(problem, x, mu);
            double grad_norm_sq = 0.0;
            for (double g : grad) grad_norm_sq += g * g;
            if (grad_norm_sq < 1e-24) break;

            // Backtracking along the projected gradient arc; strict decrease
            // required, so equal-valued candidates keep shrinking toward the
            // smaller step.
            double t = 1.0;
            bool accepted = false;
            std::vector<double> trial(x.size());
            while (t >= 1e-16) {
                for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - t * grad[i];
                trial = clamp_to_bounds(problem, trial);
                double decrease = 0.0; // grad . (x - trial), >= 0 by construction
                for (std::size_t i = 0; i < x.size(); ++i) decrease += grad[i] * (x[i] - trial[i]);
                double phi_trial = penalty_objective(problem, trial, mu);
                if (phi_trial < phi - 1e-4 * decrease && phi_trial < phi) {
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if (!accepted) break;

            double step_norm = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                double d = trial[i] - x[i];
                step_norm += d * d;
            }
            x = trial;
            phi = penalty_objective(problem, x, mu);
            if (std::sqrt(step_norm) < options.step_tol) break;
        }
        consider(x);
        mu *= 10.0;
    }

    SolveResult result;
    result.x = best_x;
    result.objective = best_f;
    result.max_violation = best_viol;
    result.within_tolerance = best_viol <= options.constraint_tol;
    result.iterations = iterations;
    return result;
}

bool is_known_objective_preset(std::string_view name) {
    return name == "distraction" || name == "distraction_minus_engagement";
}

ConstrainedProblem make_objective_preset(std::string_view name, double sensitivity, double lambda,
                                         double cognitive_floor, double environment_floor) {
    if (!is_known_objective_preset(name)) {
        throw ConfigError("unknown objective preset: '" + std::string(name) + "'");
    }
    // Smooth unclamped mixing so the penalty gradient is well defined on the
    // whole box (agrees with distraction_level wherever the clamp is slack).
    auto mixed = [sensitivity](std::span<const double> x) {
        return sensitivity * (kCognitiveLoadWeight * x[0] + kEnvironmentWeight * x[1]);
    };

    ConstrainedProblem p;
    p.dimension = 2;
    p.bounds = {{0.0, 1.0}, {0.0, 1.0}};
    if (name == "distraction") {
        p.objective = [mixed](std::span<const double> x) { return mixed(x); };
    } else {
        p.objective = [mixed, lambda](std::span<const double> x) {
            double d = mixed(x);
            return d - lambda * (1.0 - d);
        };
    }
    p.inequality_constraints.push_back(
        [cognitive_floor](std::span<const double> x) { return cognitive_floor - x[0]; });
    p.inequality_constraints.push_back(
        [environment_floor](std::span<const double> x) { return environment_floor - x[1]; });
    return p;
}

} // namespace workwell
