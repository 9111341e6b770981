#pragma once

#include <span>
#include <string>
#include <vector>

namespace workwell {

// Pairwise (cascade) summation: deterministic, order-stable, and accurate to
// O(log n) rounding growth. Every aggregate in the evaluation suite funnels
// through this so that reports are bit-stable.
double pairwise_sum(std::span<const double> values);
double mean(std::span<const double> values);

// S = (1/N) * sum s_i over ratings on [1,5]. Empty input throws
// std::invalid_argument.
double satisfaction_score(std::span<const double> ratings);

// P = (final - initial) / initial * 100. initial must be > 0.
double productivity_change(double initial_output, double final_output);

struct RegressionFit {
    double alpha_hat = 0.0;
    double beta1_hat = 0.0;
    double beta2_hat = 0.0;
    double residual_variance = 0.0; // SSR / (N-3)
    double r_squared = 0.0;         // [0,1] within 1e-12 slack
};

struct RegressionRow {
    double outcome = 0.0;      // H
    double productivity = 0.0; // P
    double satisfaction = 0.0; // S
};

// OLS of outcome on [1, P, S] via normal equations solved with partially
// pivoted Gaussian elimination. Requires >= 4 rows and a full-rank design;
// rank deficiency throws ConfigError naming the collinear column.
RegressionFit ols_fit(std::span<const RegressionRow> rows);

struct AnovaResult {
    double ss_between = 0.0;
    double ss_within = 0.0;
    int df_between = 1;
    int df_within = 1;
    double f_statistic = 0.0;
    // Degenerate case ss_within == 0: F is 0 when ss_between == 0, otherwise
    // reported as infinite via this flag (f_statistic holds +inf).
    bool f_infinite = false;
};

// Definitional one-way ANOVA. Requires >= 2 groups, each with >= 2
// observations; otherwise throws std::invalid_argument.
AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups);

// Static table of upper 1% critical values of the F distribution, shipped for
// the acceptance checks (computed offline to double precision). Untabulated
// degree pairs throw std::invalid_argument.
double f_critical_1pct(int df_between, int df_within);

} // namespace workwell
