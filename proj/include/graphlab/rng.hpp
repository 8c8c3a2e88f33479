#pragma once

#include <cstdint>

namespace graphlab {

// SplitMix64: a 64-bit counter-based generator (Weyl increment + finalizer).
// Every dataset records the seed it was generated from, so streams must be
// reproducible across platforms; this generator is exact integer arithmetic
// and has no platform-dependent state.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Stateless finalizer; also used to derive independent child seeds.
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n); n must be positive.
    std::uint64_t uniform_int(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

// Deterministic seed derivation for substreams (per-graph, per-split, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return SplitMix64::mix(seed ^ SplitMix64::mix(tag + 0x632be59bd9b4e019ULL));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t sub) {
    return derive_seed(derive_seed(seed, tag), sub);
}

} // namespace graphlab
