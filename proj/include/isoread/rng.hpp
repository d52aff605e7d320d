#pragma once

#include <cstdint>
#include <cmath>

namespace isoread {

// splitmix64 finalizer. All randomness in the library flows through this
// fixed algorithm so results are reproducible across builds.
inline uint64_t sm64_mix(uint64_t z) {
    z ^= z >> 30; z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27; z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        return sm64_mix(state);
    }

    // uniform double in [0,1) with full 53-bit mantissa
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // integer in [0, bound) without modulo bias beyond 2^-64 scale (bound is
    // tiny here, plain rejection is overkill)
    uint64_t bounded(uint64_t bound) {
        return next() % bound;
    }
};

// Deterministic per-task seed: feed the indices through the finalizer one at
// a time so (master, a, b) triples map to well-spread streams.
inline uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b) {
    uint64_t s = sm64_mix(master + 0x9E3779B97F4A7C15ULL * (a + 1));
    return sm64_mix(s + 0xC2B2AE3D27D4EB4FULL * (b + 1));
}

// Box-Muller pairs on top of a SplitMix64 stream. Values are consumed in
// generation order; the second member of each pair is cached.
struct GaussianStream {
    SplitMix64 gen;
    bool have_spare = false;
    double spare = 0.0;

    explicit GaussianStream(uint64_t seed) : gen(seed) {}

    double next() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        double u1 = gen.uniform();
        double u2 = gen.uniform();
        if (u1 < 1e-300) u1 = 1e-300;  // guard the log
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        spare = r * std::sin(a);
        have_spare = true;
        return r * std::cos(a);
    }
};

}  // namespace isoread
