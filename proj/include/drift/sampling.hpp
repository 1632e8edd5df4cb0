#pragma once
// Distribution specs for sampling opinions and recommendations on [-1, 1].

#include <stdexcept>
#include <string>

#include "drift/rng.hpp"

namespace drift {

enum class SampleKind { point, uniform, gaussian };
enum class Truncation { clip, reject };

struct SamplingSpec {
    SampleKind kind = SampleKind::point;
    double value = 0.0;            // point
    double lo = -1.0, hi = 1.0;    // uniform
    double mean = 0.0, stddev = 0.5;  // gaussian
    Truncation truncation = Truncation::clip;

    static SamplingSpec point_at(double v) {
        SamplingSpec s;
        s.kind = SampleKind::point;
        s.value = v;
        return s;
    }
    static SamplingSpec uniform_on(double lo, double hi) {
        SamplingSpec s;
        s.kind = SampleKind::uniform;
        s.lo = lo;
        s.hi = hi;
        return s;
    }
    static SamplingSpec gaussian_of(double mean, double stddev,
                                    Truncation t = Truncation::clip) {
        SamplingSpec s;
        s.kind = SampleKind::gaussian;
        s.mean = mean;
        s.stddev = stddev;
        s.truncation = t;
        return s;
    }
};

inline void validate(const SamplingSpec& s) {
    switch (s.kind) {
    case SampleKind::point:
        if (s.value < -1.0 || s.value > 1.0)
            throw std::invalid_argument("sampling: point value must lie in [-1,1], got " +
                                        std::to_string(s.value));
        return;
    case SampleKind::uniform:
        if (!(s.lo <= s.hi) || s.lo < -1.0 || s.hi > 1.0)
            throw std::invalid_argument("sampling: uniform bounds must satisfy -1 <= lo <= hi <= 1");
        return;
    case SampleKind::gaussian:
        if (!(s.stddev >= 0.0))
            throw std::invalid_argument("sampling: gaussian stddev must be >= 0");
        if (s.mean < -1.0 || s.mean > 1.0)
            throw std::invalid_argument("sampling: gaussian mean must lie in [-1,1]");
        return;
    }
    throw std::invalid_argument("sampling: unknown kind");
}

// Draws one value in [-1, 1]. A rejected gaussian resamples until the draw
// lands inside; clip projects onto the interval instead.
inline double sample(const SamplingSpec& s, UniformStream& stream) {
    switch (s.kind) {
    case SampleKind::point:
        return s.value;
    case SampleKind::uniform:
        return stream.next_in(s.lo, s.hi);
    case SampleKind::gaussian: {
        if (s.truncation == Truncation::clip) {
            const double x = s.mean + s.stddev * stream.next_gaussian();
            return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x);
        }
        for (long attempt = 0; attempt < 1000000; ++attempt) {
            const double x = s.mean + s.stddev * stream.next_gaussian();
            if (x >= -1.0 && x <= 1.0) return x;
        }
        throw std::runtime_error("sampling: gaussian rejection failed to land in [-1,1]");
    }
    }
    throw std::invalid_argument("sampling: unknown kind");
}

}  // namespace drift
