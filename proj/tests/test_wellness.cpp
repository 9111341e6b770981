#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "workwell/rng.hpp"
#include "workwell/wellness.hpp"

using namespace workwell;

TEST_CASE("health_effectiveness") {
    CHECK(health_effectiveness(0.8, 0.2, {1.0, 0.0}) == 0.8);
    CHECK(health_effectiveness(0.0, 0.0, {0.3, 0.9}) == 0.0);
    CHECK(health_effectiveness(0.5, 0.5, {0.6, 0.4}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(health_effectiveness(-0.1, 0.5, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(health_effectiveness(0.5, 1.1, {0.5, 0.5}), std::invalid_argument);

    // Monotone and jointly linear for nonnegative weights.
    Rng r(2);
    for (int i = 0; i < 500; ++i) {
        HealthWeights w{r.uniform(0.0, 2.0), r.uniform(0.0, 2.0)};
        if (w.w1 + w.w2 == 0.0) w.w1 = 0.5;
        double p = r.uniform(), e = r.uniform();
        double dp = r.uniform() * (1.0 - p), de = r.uniform() * (1.0 - e);
        double base = health_effectiveness(p, e, w);
        REQUIRE(health_effectiveness(p + dp, e, w) >= base - 1e-15);
        REQUIRE(health_effectiveness(p, e + de, w) >= base - 1e-15);
        double a = r.uniform(0.0, 1.0);
        double p2 = r.uniform(), e2 = r.uniform();
        double lhs = health_effectiveness(a * p + (1.0 - a) * p2, a * e + (1.0 - a) * e2, w);
        double rhs = a * health_effectiveness(p, e, w) + (1.0 - a) * health_effectiveness(p2, e2, w);
        REQUIRE(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("make_health_weights enforces the invariants") {
    CHECK(make_health_weights(0.7, 0.3).w1 == 0.7);
    CHECK_THROWS_AS(make_health_weights(-0.1, 0.5), ConfigError);
    CHECK_THROWS_AS(make_health_weights(0.0, 0.0), ConfigError);
}

namespace {

std::vector<HealthObservation> planted_observations(double w1, double w2, int n, double noise,
                                                    std::uint64_t seed) {
    Rng r(seed);
    std::vector<HealthObservation> obs;
    for (int i = 0; i < n; ++i) {
        HealthObservation o;
        o.physiological = r.uniform();
        o.environmental = r.uniform();
        o.observed_effectiveness = w1 * o.physiological + w2 * o.environmental +
                                   (noise > 0.0 ? noise * r.gaussian() : 0.0);
        obs.push_back(o);
    }
    return obs;
}

} // namespace

TEST_CASE("fit_health_weights recovers planted weights") {
    auto clean = planted_observations(0.7, 0.3, 50, 0.0, 8);
    auto fit = fit_health_weights(clean);
    CHECK(std::abs(fit.weights.w1 - 0.7) <= 1e-9);
    CHECK(std::abs(fit.weights.w2 - 0.3) <= 1e-9);
    CHECK(fit.residual_norm <= 1e-9);

    auto noisy = planted_observations(0.7, 0.3, 10000, 0.01, 9);
    fit = fit_health_weights(noisy);
    CHECK(std::abs(fit.weights.w1 - 0.7) <= 0.01);
    CHECK(std::abs(fit.weights.w2 - 0.3) <= 0.01);
    CHECK(fit.residual_norm > 0.0);
}

TEST_CASE("fit_health_weights degenerate inputs") {
    CHECK_THROWS_AS(fit_health_weights(std::vector<HealthObservation>{{0.5, 0.5, 0.5}}),
                    ConfigError);

    // All P identical and all E identical: rank-deficient design.
    std::vector<HealthObservation> flat(10, HealthObservation{0.4, 0.4, 0.4});
    CHECK_THROWS_AS(fit_health_weights(flat), ConfigError);

    // Proportional columns are collinear even when not constant.
    std::vector<HealthObservation> prop;
    for (int i = 1; i <= 10; ++i) {
        prop.push_back({0.05 * i, 0.025 * i, 0.1 * i});
    }
    CHECK_THROWS_AS(fit_health_weights(prop), ConfigError);
}

TEST_CASE("fit_health_weights clamps a negative component and refits") {
    // Exactly consistent with (w1, w2) = (1, -0.2); the refit keeps only P:
    // w1 = sum(P*y)/sum(P^2) = 1.8/2 = 0.9.
    std::vector<HealthObservation> obs{{1.0, 0.0, 1.0}, {0.0, 1.0, -0.2}, {1.0, 1.0, 0.8}};
    auto fit = fit_health_weights(obs);
    CHECK(fit.weights.w2 == 0.0);
    CHECK(fit.weights.w1 == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(fit.residual_norm > 0.0);
}

TEST_CASE("select_content") {
    BiometricSample s;
    s.employee_id = "E0";

    // H above threshold: no intervention.
    s.physiological = 0.9;
    s.environmental = 0.9;
    auto none = select_content(s, {0.5, 0.5}, 0.8);
    CHECK(none.content_id == ContentId::None);
    CHECK(none.intensity == 0.0);

    // Weakest signal is P: the physiological prompt fires.
    s.physiological = 0.1;
    s.environmental = 0.9;
    auto picked = select_content(s, {0.5, 0.5}, 0.8);
    CHECK(picked.content_id == ContentId::WalkPrompt);
    CHECK(picked.intensity == doctest::Approx(0.3).epsilon(1e-12));

    // Weakest signal is E.
    s.physiological = 0.9;
    s.environmental = 0.1;
    CHECK(select_content(s, {0.5, 0.5}, 0.8).content_id == ContentId::BreathPrompt);

    // Tie goes to the physiological channel.
    s.physiological = 0.2;
    s.environmental = 0.2;
    CHECK(select_content(s, {0.5, 0.5}, 0.8).content_id == ContentId::WalkPrompt);

    // threshold 0 is vacuous (H >= 0 always).
    s.physiological = 0.0;
    s.environmental = 0.0;
    CHECK(select_content(s, {0.5, 0.5}, 0.0).content_id == ContentId::None);

    CHECK_THROWS_AS(select_content(s, {0.5, 0.5}, 1.5), std::invalid_argument);

    // Custom content map is honored.
    ContentMap map;
    map.physiological_prompt = ContentId::StretchPrompt;
    s.physiological = 0.1;
    s.environmental = 0.9;
    CHECK(select_content(s, {0.5, 0.5}, 0.8, map).content_id == ContentId::StretchPrompt);
}

TEST_CASE("select_content invariants under fuzzing") {
    Rng r(13);
    for (int i = 0; i < 5000; ++i) {
        BiometricSample s;
        s.employee_id = "E0";
        s.physiological = r.uniform();
        s.environmental = r.uniform();
        HealthWeights w{r.uniform(0.0, 1.0), r.uniform(0.0, 1.0)};
        if (w.w1 + w.w2 == 0.0) w.w1 = 1.0;
        double threshold = r.uniform();
        auto c = select_content(s, w, threshold);
        REQUIRE(c.intensity >= 0.0);
        REQUIRE(c.intensity <= 1.0);
        double h = health_effectiveness(s.physiological, s.environmental, w);
        if (h >= threshold) {
            REQUIRE(c.content_id == ContentId::None);
            REQUIRE(c.intensity == 0.0);
        } else {
            REQUIRE(c.content_id != ContentId::None);
        }
    }
}

TEST_CASE("gamification_params") {
    auto g = gamification_params(0.5, 0.0);
    CHECK(g.challenge_level == 0.5);
    CHECK(g.reward_frequency == 5.0);
    CHECK(g.leaderboard_visibility);

    g = gamification_params(1.0, -1.0);
    CHECK(g.challenge_level == 1.0);
    CHECK(g.reward_frequency == doctest::Approx(10.0).epsilon(1e-15));
    CHECK_FALSE(g.leaderboard_visibility);

    g = gamification_params(0.0, 1.0);
    CHECK(g.challenge_level == 0.0);
    CHECK(g.reward_frequency == 5.0);
    CHECK(g.leaderboard_visibility);

    CHECK_THROWS_AS(gamification_params(1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gamification_params(0.5, -1.5), std::invalid_argument);

    Rng r(3);
    for (int i = 0; i < 5000; ++i) {
        auto m = gamification_params(r.uniform(), r.uniform(-1.0, 1.0));
        REQUIRE(m.challenge_level >= 0.0);
        REQUIRE(m.challenge_level <= 1.0);
        REQUIRE(m.reward_frequency >= 0.0);
    }
}

TEST_CASE("apply_intervention") {
    EmployeeProfile p;
    p.id = "E0";
    p.intervention_responsiveness = 1.0;

    CHECK(apply_intervention(p, {ContentId::None, 0.7}) == 0.0);
    CHECK(apply_intervention(p, {ContentId::WalkPrompt, 1.0}) ==
          doctest::Approx(0.05).epsilon(1e-15));

    p.intervention_responsiveness = 0.0;
    CHECK(apply_intervention(p, {ContentId::BreathPrompt, 1.0}) == 0.0);

    EffectSizes custom;
    custom.stretch_prompt = 0.2;
    p.intervention_responsiveness = 0.5;
    CHECK(apply_intervention(p, {ContentId::StretchPrompt, 0.5}, custom) ==
          doctest::Approx(0.05).epsilon(1e-15));

    Rng r(4);
    for (int i = 0; i < 2000; ++i) {
        p.intervention_responsiveness = r.uniform();
        InterventionContent c{static_cast<ContentId>(r.uniform_int(5)), r.uniform()};
        double delta = apply_intervention(p, c);
        REQUIRE(delta >= 0.0);
        if (c.intensity == 0.0) REQUIRE(delta == 0.0);
    }
}

TEST_CASE("sliding window fitter adapts and survives bad windows") {
    SlidingWindowFitter fitter(100, {0.5, 0.5});
    CHECK(fitter.current().w1 == 0.5);

    // Feed planted data; after a refit the weights move to the plant.
    auto obs = planted_observations(0.8, 0.2, 150, 0.0, 77);
    for (const auto& o : obs) fitter.observe(o);
    REQUIRE(fitter.refit());
    CHECK(std::abs(fitter.current().w1 - 0.8) <= 1e-9);
    CHECK(std::abs(fitter.current().w2 - 0.2) <= 1e-9);
    CHECK(fitter.refit_count() == 1);

    // A collinear window keeps the previous weights.
    SlidingWindowFitter degenerate(10, {0.6, 0.4});
    for (int i = 0; i < 10; ++i) degenerate.observe({0.3, 0.3, 0.3});
    REQUIRE_FALSE(degenerate.refit());
    CHECK(degenerate.current().w1 == 0.6);
    CHECK(degenerate.failed_refit_count() == 1);

    CHECK_THROWS_AS(SlidingWindowFitter(1, {0.5, 0.5}), ConfigError);
}

TEST_CASE("content id strings round-trip") {
    for (ContentId c : {ContentId::StretchPrompt, ContentId::HydrationPrompt, ContentId::WalkPrompt,
                        ContentId::BreathPrompt, ContentId::None}) {
        CHECK(content_id_from_string(to_string(c)) == c);
    }
    CHECK_THROWS_AS(content_id_from_string("nap_prompt"), ParseError);
}
