#include "workwell/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace workwell {

double Rng::gaussian() {
    // Box-Muller; u1 shifted into (0,1] so the log is always finite.
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double truncated_normal(Rng& rng, double mean, double stddev, double lo, double hi) {
    if (stddev == 0.0) {
        return std::clamp(mean, lo, hi);
    }
    for (int attempt = 0; attempt < 100; ++attempt) {
        double v = mean + stddev * rng.gaussian();
        if (v >= lo && v <= hi) return v;
    }
    // Pathological spec (mean far outside the window): fall back to the bound.
    return std::clamp(mean, lo, hi);
}

} // namespace workwell
