#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "workwell/evalstats.hpp"
#include "workwell/rng.hpp"

using namespace workwell;

TEST_CASE("pairwise_sum agrees with extended-precision summation") {
    Rng r(1);
    for (int round = 0; round < 50; ++round) {
        std::size_t n = 1 + r.uniform_int(5000);
        std::vector<double> values(n);
        long double naive = 0.0L;
        for (auto& v : values) {
            v = r.uniform(-100.0, 100.0);
            naive += static_cast<long double>(v);
        }
        double s = pairwise_sum(values);
        REQUIRE(std::abs(s - static_cast<double>(naive)) <=
                1e-9 * std::max(1.0, std::abs(static_cast<double>(naive))));
        REQUIRE(pairwise_sum(values) == s); // deterministic
    }
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("satisfaction_score") {
    CHECK(satisfaction_score(std::vector<double>{4, 4, 4}) == 4.0);
    CHECK(satisfaction_score(std::vector<double>{3, 5}) == 4.0);
    CHECK(satisfaction_score(std::vector<double>{1, 2, 3, 4, 5}) == 3.0);
    CHECK_THROWS_AS(satisfaction_score(std::vector<double>{}), std::invalid_argument);

    Rng r(2);
    for (int round = 0; round < 300; ++round) {
        std::vector<double> ratings(1 + r.uniform_int(40));
        for (auto& v : ratings) v = r.uniform(1.0, 5.0);
        double s = satisfaction_score(ratings);
        REQUIRE(s >= *std::min_element(ratings.begin(), ratings.end()) - 1e-12);
        REQUIRE(s <= *std::max_element(ratings.begin(), ratings.end()) + 1e-12);
    }
}

TEST_CASE("productivity_change") {
    CHECK(productivity_change(100.0, 110.0) == 10.0);
    CHECK(productivity_change(50.0, 50.0) == 0.0);
    CHECK(productivity_change(200.0, 150.0) == -25.0);
    CHECK_THROWS_AS(productivity_change(0.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(productivity_change(-5.0, 10.0), std::invalid_argument);
}

namespace {

std::vector<RegressionRow> planted_rows(double alpha, double b1, double b2, int n, double noise,
                                        std::uint64_t seed) {
    Rng r(seed);
    std::vector<RegressionRow> rows;
    for (int i = 0; i < n; ++i) {
        RegressionRow row;
        row.productivity = r.uniform(-10.0, 10.0);
        row.satisfaction = r.uniform(1.0, 5.0);
        row.outcome = alpha + b1 * row.productivity + b2 * row.satisfaction +
                      (noise > 0.0 ? noise * r.gaussian() : 0.0);
        rows.push_back(row);
    }
    return rows;
}

} // namespace

TEST_CASE("ols_fit recovers planted coefficients") {
    auto exact = planted_rows(2.0, 0.5, 1.5, 20, 0.0, 5);
    auto fit = ols_fit(exact);
    CHECK(std::abs(fit.alpha_hat - 2.0) <= 1e-9);
    CHECK(std::abs(fit.beta1_hat - 0.5) <= 1e-9);
    CHECK(std::abs(fit.beta2_hat - 1.5) <= 1e-9);
    CHECK(fit.residual_variance <= 1e-18);
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    auto noisy = planted_rows(2.0, 0.5, 1.5, 10000, 0.1, 6);
    fit = ols_fit(noisy);
    CHECK(std::abs(fit.alpha_hat - 2.0) <= 0.02);
    CHECK(std::abs(fit.beta1_hat - 0.5) <= 0.02);
    CHECK(std::abs(fit.beta2_hat - 1.5) <= 0.02);
    CHECK(fit.residual_variance > 0.0);
    CHECK(fit.r_squared > 0.9);
}

TEST_CASE("ols_fit residuals are orthogonal to the design") {
    auto rows = planted_rows(1.0, -0.7, 0.4, 500, 0.3, 7);
    auto fit = ols_fit(rows);
    long double dot1 = 0.0L, dotp = 0.0L, dots = 0.0L, norm = 0.0L;
    for (const auto& row : rows) {
        long double resid = row.outcome -
                            (fit.alpha_hat + fit.beta1_hat * row.productivity +
                             fit.beta2_hat * row.satisfaction);
        dot1 += resid;
        dotp += resid * row.productivity;
        dots += resid * row.satisfaction;
        norm += static_cast<long double>(row.outcome) * row.outcome;
    }
    double bound = 1e-8 * std::sqrt(static_cast<double>(norm));
    CHECK(std::abs(static_cast<double>(dot1)) <= bound);
    CHECK(std::abs(static_cast<double>(dotp)) <= bound);
    CHECK(std::abs(static_cast<double>(dots)) <= bound);
}

TEST_CASE("ols_fit shift invariance") {
    auto rows = planted_rows(0.5, 1.2, -0.8, 200, 0.2, 8);
    auto base = ols_fit(rows);
    auto shifted = rows;
    for (auto& row : shifted) row.outcome += 10.0;
    auto fit = ols_fit(shifted);
    CHECK(fit.alpha_hat == doctest::Approx(base.alpha_hat + 10.0).epsilon(1e-9));
    CHECK(fit.beta1_hat == doctest::Approx(base.beta1_hat).epsilon(1e-9));
    CHECK(fit.beta2_hat == doctest::Approx(base.beta2_hat).epsilon(1e-9));
}

TEST_CASE("ols_fit error paths") {
    CHECK_THROWS_AS(ols_fit(planted_rows(1, 1, 1, 3, 0.0, 1)), std::invalid_argument);

    // Constant satisfaction column is collinear with the intercept.
    auto rows = planted_rows(1.0, 0.5, 0.0, 50, 0.0, 2);
    for (auto& row : rows) row.satisfaction = 2.5;
    try {
        ols_fit(rows);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("rank deficient") != std::string::npos);
        CHECK(std::string(e.what()).find("satisfaction") != std::string::npos);
    }

    // Productivity identically zero is named.
    rows = planted_rows(1.0, 0.0, 0.5, 50, 0.0, 3);
    for (auto& row : rows) row.productivity = 0.0;
    try {
        ols_fit(rows);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("productivity") != std::string::npos);
    }
}

TEST_CASE("anova_oneway hand cases") {
    auto flat = anova_oneway({{1.0, 1.0}, {1.0, 1.0}});
    CHECK(flat.f_statistic == 0.0);
    CHECK_FALSE(flat.f_infinite);

    auto hand = anova_oneway({{1, 2, 3}, {4, 5, 6}});
    CHECK(std::abs(hand.ss_between - 13.5) <= 1e-12);
    CHECK(std::abs(hand.ss_within - 4.0) <= 1e-12);
    CHECK(hand.df_between == 1);
    CHECK(hand.df_within == 4);
    CHECK(std::abs(hand.f_statistic - 13.5) <= 1e-12);

    // ss_within == 0 with distinct means: flagged infinite.
    auto degenerate = anova_oneway({{1.0, 1.0}, {2.0, 2.0}});
    CHECK(degenerate.f_infinite);
    CHECK(std::isinf(degenerate.f_statistic));

    CHECK_THROWS_AS(anova_oneway({{1.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(anova_oneway({{1.0, 2.0}, {3.0}}), std::invalid_argument);
}

TEST_CASE("anova partition identity and shift invariance under fuzzing") {
    Rng r(10);
    for (int round = 0; round < 1000; ++round) {
        std::vector<std::vector<double>> groups(2 + r.uniform_int(5));
        for (auto& g : groups) {
            g.resize(2 + r.uniform_int(30));
            double center = r.uniform(-50.0, 50.0);
            for (auto& v : g) v = center + r.uniform(-5.0, 5.0);
        }
        auto result = anova_oneway(groups);
        auto oracle = oracles::anova_definitional(groups);

        double total = result.ss_between + result.ss_within;
        double oracle_total = static_cast<double>(oracle.ss_total);
        REQUIRE(std::abs(total - oracle_total) <= 1e-9 * std::max(1.0, oracle_total));
        REQUIRE(std::abs(result.ss_between - static_cast<double>(oracle.ss_between)) <=
                1e-9 * std::max(1.0, static_cast<double>(oracle.ss_between)));
        if (!result.f_infinite) {
            REQUIRE(std::abs(result.f_statistic - static_cast<double>(oracle.f)) <=
                    1e-9 * std::max(1.0, static_cast<double>(oracle.f)));
        }

        auto shifted = groups;
        for (auto& g : shifted) {
            for (auto& v : g) v += 1234.5;
        }
        auto shifted_result = anova_oneway(shifted);
        if (!result.f_infinite && result.f_statistic > 1e-6) {
            REQUIRE(std::abs(shifted_result.f_statistic - result.f_statistic) <=
                    1e-9 * result.f_statistic);
        }
    }
}

TEST_CASE("f_critical_1pct table") {
    CHECK(f_critical_1pct(1, 398) == doctest::Approx(6.69897804077782).epsilon(1e-15));
    CHECK(f_critical_1pct(1, 998) == doctest::Approx(6.660345850341551).epsilon(1e-15));
    CHECK_THROWS_AS(f_critical_1pct(7, 13), std::invalid_argument);
}
