#pragma once
// Deterministic random streams. Every stochastic component draws from a
// UniformStream seeded by stream_seed(master, index, role), so a run is a
// pure function of (master seed, trial/agent index). The generator and the
// uniform mapping are pinned and versioned: changing either changes results,
// so bump kGeneratorId when they change.

#include <cmath>
#include <cstdint>
#include <random>

namespace drift {

inline constexpr char kGeneratorId[] = "mt19937_64/splitmix64-mix/u53/v1";

// Stream roles keep independent randomness separated: clicks drive the
// agent's consumption draws, exploration drives platform sampling, sampling
// draws population-level innate opinions and recommendations.
enum class StreamRole : std::uint64_t {
    clicks = 0,
    exploration = 1,
    sampling = 2,
};

// splitmix64 finalizer, used as a one-shot 64-bit hash.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t master_seed,
                                    std::uint64_t index,
                                    StreamRole role) {
    return mix64(mix64(mix64(master_seed) ^ index) ^
                 static_cast<std::uint64_t>(role));
}

// Uniform draws on [0,1) with exactly 53 random bits per draw. mt19937_64's
// output sequence is fixed by the C++ standard, so streams are reproducible
// across platforms and releases.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : gen_(seed) {}

    // next value in [0, 1)
    double next() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double next_in(double lo, double hi) { return lo + (hi - lo) * next(); }

    // standard normal via Box-Muller (cosine branch); consumes two uniforms
    double next_gaussian() {
        const double u1 = next();
        const double u2 = next();
        const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
        return radius * std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace drift
