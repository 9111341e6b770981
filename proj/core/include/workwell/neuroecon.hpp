#pragma once

#include <array>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "workwell/domain.hpp"

namespace workwell {

// Decision value inputs: expected reward and nonnegative cost.
struct ValueInputs {
    double expected_reward = 0.0;
    double cost = 0.0;
};

// V = E[R] - C.
double action_value(const ValueInputs& in);

// Mixing weights for the distraction model. Cognitive load dominates.
inline constexpr double kCognitiveLoadWeight = 0.6;
inline constexpr double kEnvironmentWeight = 0.4;

// D = clamp(sensitivity * (0.6*C + 0.4*E), 0, 1). Inputs must lie in [0,1]
// (sensitivity >= 0); violations throw std::invalid_argument.
double distraction_level(double cognitive_load, double environment, double sensitivity);

struct EngagementIndex {
    double value = 0.0; // [0,1]
};

// Complement of distraction. D must lie in [0,1].
EngagementIndex engagement_index(double distraction);

// Box-constrained problem with black-box objective and constraints.
// Inequalities are satisfied when g(x) <= 0; equalities when h(x) == 0.
struct ConstrainedProblem {
    int dimension = 1;
    std::function<double(std::span<const double>)> objective;
    std::vector<std::function<double(std::span<const double>)>> inequality_constraints;
    std::vector<std::function<double(std::span<const double>)>> equality_constraints;
    std::vector<std::array<double, 2>> bounds; // per-coordinate [lo,hi]
};

struct SolverOptions {
    double constraint_tol = 1e-6;
    double step_tol = 1e-8;
    int budget = 20000;          // max inner iterations, summed over rounds
    int outer_rounds = 8;        // penalty multiplier grows x10 per round
    double initial_penalty = 1.0;
};

struct SolveResult {
    std::vector<double> x;
    double objective = 0.0;
    double max_violation = 0.0;    // max(max_i g_i, max_j |h_j|, 0) at x
    bool within_tolerance = false; // false when the budget ran out above tol
    int iterations = 0;
};

// Quadratic-penalty descent: the penalty objective
//   phi_mu(x) = f(x) + mu * (sum_i max(0,g_i(x))^2 + sum_j h_j(x)^2)
// is minimized by projected gradient descent with backtracking line search,
// warm-starting each round with the previous solution while mu grows x10.
// Line-search ties (equal objective) resolve toward the smaller step. The
// reported iterate never leaves the bounds, and when the start is feasible
// the reported objective never exceeds f(start). A non-finite objective or
// constraint value throws std::invalid_argument carrying the offending x.
SolveResult minimize_constrained(const ConstrainedProblem& problem, std::span<const double> start,
                                 const SolverOptions& options = {});

// The penalty objective and its internal gradient (central differences with
// per-coordinate step 1e-6*max(1,|x_i|)). Exposed so the gradient can be
// cross-checked against an independent discretization.
double penalty_objective(const ConstrainedProblem& problem, std::span<const double> x, double mu);
std::vector<double> penalty_gradient(const ConstrainedProblem& problem, std::span<const double> x,
                                     double mu);

// Scenario-selectable calibration objectives over x = (cognitive-load
// setpoint, environment setpoint) in [0,1]^2. Both use the smooth unclamped
// mixing sensitivity*(0.6*x0 + 0.4*x1); floors enter as inequality
// constraints (the setpoints cannot drop below ambient/workload floors).
//   "distraction"                   f = D(x)
//   "distraction_minus_engagement"  f = D(x) - lambda*(1 - D(x))
// Unknown names throw ConfigError.
ConstrainedProblem make_objective_preset(std::string_view name, double sensitivity, double lambda,
                                         double cognitive_floor, double environment_floor);

bool is_known_objective_preset(std::string_view name);

} // namespace workwell
