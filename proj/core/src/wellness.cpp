#include "workwell/wellness.hpp"

#include <algorithm>
#include <cmath>

namespace workwell {

std::vector<std::string> validate_health_weights(const HealthWeights& w) {
    std::vector<std::string> violations;
    if (!std::isfinite(w.w1) || w.w1 < 0.0) violations.push_back("w1 must be >= 0");
    if (!std::isfinite(w.w2) || w.w2 < 0.0) violations.push_back("w2 must be >= 0");
    if (violations.empty() && !(w.w1 + w.w2 > 0.0)) violations.push_back("w1 + w2 must be > 0");
    return violations;
}

HealthWeights make_health_weights(double w1, double w2) {
    HealthWeights w{w1, w2};
    auto violations = validate_health_weights(w);
    if (!violations.empty()) {
        std::string msg = "invalid health weights:";
        for (const auto& v : violations) msg += " " + v + ";";
        throw ConfigError(msg);
    }
    return w;
}

double health_effectiveness(double physiological, double environmental, const HealthWeights& w) {
    auto bad = [](const char* name, double v) {
        throw std::invalid_argument(std::string("health_effectiveness: ") + name + " = " +
                                    fmt_double(v) + " out of [0,1]");
    };
    if (!(physiological >= 0.0 && physiological <= 1.0)) bad("physiological", physiological);
    if (!(environmental >= 0.0 && environmental <= 1.0)) bad("environmental", environmental);
    return w.w1 * physiological + w.w2 * environmental;
}

WeightFit fit_health_weights(std::span<const HealthObservation> observations) {
    if (observations.size() < 2) {
        throw ConfigError("fit_health_weights: need at least 2 observations, got " +
                          std::to_string(observations.size()));
    }
    // Normal equations for the through-origin two-column design [P E].
    double spp = 0.0, see = 0.0, spe = 0.0, spy = 0.0, sey = 0.0;
    for (const auto& o : observations) {
        spp += o.physiological * o.physiological;
        see += o.environmental * o.environmental;
        spe += o.physiological * o.environmental;
        spy += o.physiological * o.observed_effectiveness;
        sey += o.environmental * o.observed_effectiveness;
    }
    double det = spp * see - spe * spe;
    double scale = std::max(spp, see);
    if (scale <= 0.0 || det <= 1e-12 * scale * scale) {
        throw ConfigError("fit_health_weights: design columns are collinear "
                          "(physiological and environmental carry no independent variation)");
    }
    double w1 = (see * spy - spe * sey) / det;
    double w2 = (spp * sey - spe * spy) / det;

    // Nonphysical negative weight: clamp it and refit the other alone.
    if (w1 < 0.0 && w2 < 0.0) {
        throw ConfigError("fit_health_weights: both fitted weights are negative");
    }
    if (w1 < 0.0) {
        w1 = 0.0;
        w2 = see > 0.0 ? sey / see : 0.0;
        w2 = std::max(w2, 0.0);
    } else if (w2 < 0.0) {
        w2 = 0.0;
        w1 = spp > 0.0 ? spy / spp : 0.0;
        w1 = std::max(w1, 0.0);
    }
    if (!(w1 + w2 > 0.0)) {
        throw ConfigError("fit_health_weights: fit degenerated to zero weights");
    }

    double ssr = 0.0;
    for (const auto& o : observations) {
        double r = o.observed_effectiveness - (w1 * o.physiological + w2 * o.environmental);
        ssr += r * r;
    }
    return WeightFit{HealthWeights{w1, w2}, std::sqrt(ssr)};
}

std::string_view to_string(ContentId c) {
    switch (c) {
        case ContentId::StretchPrompt: return "stretch_prompt";
        case ContentId::HydrationPrompt: return "hydration_prompt";
        case ContentId::WalkPrompt: return "walk_prompt";
        case ContentId::BreathPrompt: return "breath_prompt";
        case ContentId::None: return "none";
    }
    return "none";
}

ContentId content_id_from_string(std::string_view s) {
    for (ContentId c : {ContentId::StretchPrompt, ContentId::HydrationPrompt, ContentId::WalkPrompt,
                        ContentId::BreathPrompt, ContentId::None}) {
        if (to_string(c) == s) return c;
    }
    throw ParseError("unknown content id: '" + std::string(s) + "'");
}

InterventionContent select_content(const BiometricSample& sample, const HealthWeights& weights,
                                   double threshold, const ContentMap& map) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw std::invalid_argument("select_content: threshold out of [0,1]");
    }
    double h = health_effectiveness(sample.physiological, sample.environmental, weights);
    if (h >= threshold) {
        return InterventionContent{ContentId::None, 0.0};
    }
    // Weakest signal picks the prompt; ties go to the physiological channel.
    ContentId content = sample.physiological <= sample.environmental ? map.physiological_prompt
                                                                     : map.environmental_prompt;
    double intensity = std::clamp(threshold - h, 0.0, 1.0);
    return InterventionContent{content, intensity};
}

GameMechanics gamification_params(double performance_percentile, double sentiment) {
    if (!(performance_percentile >= 0.0 && performance_percentile <= 1.0)) {
        throw std::invalid_argument("gamification_params: performance_percentile out of [0,1]");
    }
    if (!(sentiment >= -1.0 && sentiment <= 1.0)) {
        throw std::invalid_argument("gamification_params: sentiment out of [-1,1]");
    }
    GameMechanics g;
    g.challenge_level = performance_percentile;
    g.reward_frequency = kBaseRewardFrequency * (1.0 + std::max(0.0, -sentiment));
    g.leaderboard_visibility = sentiment >= 0.0;
    return g;
}

double EffectSizes::of(ContentId c) const {
    switch (c) {
        case ContentId::StretchPrompt: return stretch_prompt;
        case ContentId::HydrationPrompt: return hydration_prompt;
        case ContentId::WalkPrompt: return walk_prompt;
        case ContentId::BreathPrompt: return breath_prompt;
        case ContentId::None: return 0.0;
    }
    return 0.0;
}

double apply_intervention(const EmployeeProfile& profile, const InterventionContent& content,
                          const EffectSizes& effects) {
    if (content.content_id == ContentId::None) return 0.0;
    return profile.intervention_responsiveness * content.intensity * effects.of(content.content_id);
}

SlidingWindowFitter::SlidingWindowFitter(std::size_t window, HealthWeights initial)
    : window_(window), current_(initial) {
    if (window_ < 2) {
        throw ConfigError("SlidingWindowFitter: window must be >= 2");
    }
}

void SlidingWindowFitter::observe(const HealthObservation& obs) {
    buffer_.push_back(obs);
    ++seen_;
    while (buffer_.size() > window_) buffer_.pop_front();
}

bool SlidingWindowFitter::refit() {
    if (buffer_.size() < 2) {
        ++failures_;
        return false;
    }
    std::vector<HealthObservation> window(buffer_.begin(), buffer_.end());
    try {
        current_ = fit_health_weights(window).weights;
        ++refits_;
        return true;
    } catch (const ConfigError&) {
        // Collinear window: keep the previous weights.
        ++failures_;
        return false;
    }
}

} // namespace workwell
