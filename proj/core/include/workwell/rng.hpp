#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

namespace workwell {

// Deterministic 64-bit generator state. A value type: advancing never mutates,
// it returns the successor state. Identical seeds yield identical streams on
// every platform (integer ops plus an exact power-of-two scaling only).
struct RngState {
    std::uint64_t state = 0;

    friend bool operator==(const RngState&, const RngState&) = default;
};

namespace detail {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). These constants define the
// generator contract; changing them breaks every golden stream in the tests.
inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kMixA = 0xBF58476D1CE4E5B9ULL;
inline constexpr std::uint64_t kMixB = 0x94D049BB133111EBULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * kMixA;
    z = (z ^ (z >> 27)) * kMixB;
    return z ^ (z >> 31);
}

} // namespace detail

// One pure step: returns the successor state and a raw 64-bit draw.
constexpr std::pair<RngState, std::uint64_t> rng_next_u64(RngState s) {
    s.state += detail::kGamma;
    return {s, detail::mix64(s.state)};
}

// One pure step mapped to [0,1) with full 53-bit precision.
constexpr std::pair<RngState, double> rng_next(RngState s) {
    auto [next, z] = rng_next_u64(s);
    return {next, static_cast<double>(z >> 11) * (1.0 / 9007199254740992.0)};
}

// FNV-1a, used to turn opaque string ids into stream tags.
constexpr std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Derives an independent substream. Streams for distinct tags are decorrelated
// by the SplitMix64 finalizer; derivation is associative-free (order of tags
// matters) and pure.
constexpr RngState derive_stream(RngState base, std::uint64_t tag) {
    return RngState{detail::mix64(base.state ^ detail::mix64(tag + detail::kGamma))};
}

constexpr RngState derive_stream(RngState base, std::string_view tag) {
    return derive_stream(base, fnv1a64(tag));
}

// Convenience wrapper owning one RngState. Not shared across threads; the
// underlying advance is the pure rng_next step.
class Rng {
public:
    Rng() = default;
    explicit Rng(RngState s) : state_(s) {}
    explicit Rng(std::uint64_t seed) : state_{seed} {}

    std::uint64_t next_u64() {
        auto [next, z] = rng_next_u64(state_);
        state_ = next;
        return z;
    }

    // Uniform on [0,1).
    double uniform() {
        auto [next, v] = rng_next(state_);
        state_ = next;
        return v;
    }

    // Uniform on [lo,hi); degenerate ranges return lo exactly.
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    // Uniform integer on [0,n). n must be positive.
    int uniform_int(int n) {
        int k = static_cast<int>(uniform() * n);
        return k >= n ? n - 1 : k;
    }

    // Standard normal via Box-Muller, one value per two uniform draws.
    double gaussian();

    RngState state() const { return state_; }
    Rng split(std::uint64_t tag) const { return Rng(derive_stream(state_, tag)); }
    Rng split(std::string_view tag) const { return Rng(derive_stream(state_, tag)); }

private:
    RngState state_;
};

// Normal draw constrained to [lo,hi]: rejection sampling with a fixed cap of
// 100 attempts, then clamping. Zero stddev returns the clamped mean directly.
double truncated_normal(Rng& rng, double mean, double stddev, double lo, double hi);

} // namespace workwell
