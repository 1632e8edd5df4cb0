#pragma once
// Population experiment: many independent agents, each with a sampled innate
// opinion and a sampled (constant) recommendation, simulated under both the
// fixed and the adaptive click policy with common random numbers, so the two
// final-opinion distributions are directly comparable.

#include <cstdint>
#include <vector>

#include "drift/dynamics.hpp"
#include "drift/sampling.hpp"

namespace drift {

struct PopulationConfig {
    DynamicsParams params;
    double gamma0 = 1.0;
    double kappa = 1.0;
    double delta = 0.1;
    int horizon = 0;  // K = 0 allowed: finals equal innates
    long num_agents = 1;
    SamplingSpec innate = SamplingSpec::uniform_on(-1.0, 1.0);
    SamplingSpec recommendation = SamplingSpec::gaussian_of(0.0, 0.5);
    std::uint64_t master_seed = 0;
};

void validate(const PopulationConfig& c);

// Columns indexed by agent; agent i uses identical (x0, u0, click seed)
// under both policies.
struct PopulationResult {
    std::vector<double> innate;           // sampled x0 per agent
    std::vector<double> recommendation;   // sampled u0 per agent
    std::vector<double> final_fixed;      // x_K under the fixed policy
    std::vector<double> final_adaptive;   // x_K under the adaptive policy
};

PopulationResult run_population(const PopulationConfig& c, int workers = 1);

// Empirical 1-Wasserstein distance: mean absolute difference of order
// statistics. Arguments are copied and sorted internally.
double wasserstein1(std::vector<double> a, std::vector<double> b);

// Equal-width bins over [lo, hi]; the last bin's right edge is inclusive,
// out-of-range samples are dropped.
std::vector<long> histogram(const std::vector<double>& samples, int bins,
                            double lo = -1.0, double hi = 1.0);

}  // namespace drift
