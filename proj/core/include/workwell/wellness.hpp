#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <span>
#include <string_view>
#include <vector>

#include "workwell/domain.hpp"

namespace workwell {

struct HealthWeights {
    double w1 = 0.6; // physiological weight, >= 0
    double w2 = 0.4; // environmental weight, >= 0
};

std::vector<std::string> validate_health_weights(const HealthWeights& w);
// Throws ConfigError unless w1 >= 0, w2 >= 0 and w1 + w2 > 0.
HealthWeights make_health_weights(double w1, double w2);

// H = w1*P + w2*E. P and E must lie in [0,1].
double health_effectiveness(double physiological, double environmental, const HealthWeights& w);

struct HealthObservation {
    double physiological = 0.0;
    double environmental = 0.0;
    double observed_effectiveness = 0.0;
};

struct WeightFit {
    HealthWeights weights;
    double residual_norm = 0.0;
};

// Least-squares fit of (w1,w2) through the origin. A negative component is
// clamped to zero and the remaining component refit alone. Throws ConfigError
// on fewer than 2 observations, collinear columns, or an all-zero fit.
WeightFit fit_health_weights(std::span<const HealthObservation> observations);

enum class ContentId { StretchPrompt, HydrationPrompt, WalkPrompt, BreathPrompt, None };

std::string_view to_string(ContentId c);
ContentId content_id_from_string(std::string_view s);

struct InterventionContent {
    ContentId content_id = ContentId::None;
    double intensity = 0.0; // [0,1]
};

// Which prompt answers a weak signal. Scenario-configurable.
struct ContentMap {
    ContentId physiological_prompt = ContentId::WalkPrompt;
    ContentId environmental_prompt = ContentId::BreathPrompt;
};

// Computes H from the sample; when H < threshold, selects the prompt mapped
// to the weakest signal (lowest of P and E, ties toward P) with intensity
// clamp(threshold - H, 0, 1); otherwise returns none. threshold in [0,1].
InterventionContent select_content(const BiometricSample& sample, const HealthWeights& weights,
                                   double threshold, const ContentMap& map = {});

struct GameMechanics {
    double challenge_level = 0.0;   // [0,1]
    double reward_frequency = 0.0;  // prompts per 100 ticks, >= 0
    bool leaderboard_visibility = true;
};

inline constexpr double kBaseRewardFrequency = 5.0; // prompts per 100 ticks

// challenge = percentile; frequency = base * (1 + max(0,-sentiment));
// leaderboard shown iff sentiment >= 0. Inputs must lie in [0,1] / [-1,1].
GameMechanics gamification_params(double performance_percentile, double sentiment);

// Synthetic per-content effect sizes, in productivity score units.
struct EffectSizes {
    double stretch_prompt = 0.05;
    double hydration_prompt = 0.05;
    double walk_prompt = 0.05;
    double breath_prompt = 0.05;

    double of(ContentId c) const;
};

// delta = responsiveness * intensity * effect_size(content); none -> 0.
// Always nonnegative. This effect model is synthetic and is labeled as such
// in every report.
double apply_intervention(const EmployeeProfile& profile, const InterventionContent& content,
                          const EffectSizes& effects = {});

// Adaptive weight tuning realized as periodic refits over a sliding window
// of observations. A refit that fails (collinear window) keeps the previous
// weights and counts the failure.
class SlidingWindowFitter {
public:
    SlidingWindowFitter(std::size_t window, HealthWeights initial);

    void observe(const HealthObservation& obs);
    // Refits from the current window; returns true when the fit succeeded.
    bool refit();

    const HealthWeights& current() const { return current_; }
    std::size_t observation_count() const { return seen_; }
    int refit_count() const { return refits_; }
    int failed_refit_count() const { return failures_; }

private:
    std::size_t window_;
    HealthWeights current_;
    std::deque<HealthObservation> buffer_;
    std::size_t seen_ = 0;
    int refits_ = 0;
    int failures_ = 0;
};

} // namespace workwell
