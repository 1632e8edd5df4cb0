#include "drift/population.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "drift/montecarlo.hpp"
#include "drift/parallel.hpp"
#include "drift/policies.hpp"
#include "drift/rng.hpp"

namespace drift {

void validate(const PopulationConfig& c) {
    validate(c.params);
    if (!(c.gamma0 >= 0.0) || !(c.gamma0 <= 1.0))
        throw std::invalid_argument("population: gamma0 must lie in [0,1]");
    if (!(c.kappa > 1.0))
        throw std::invalid_argument("population: kappa must exceed 1");
    if (!(c.delta > 0.0))
        throw std::invalid_argument("population: delta must be positive");
    if (c.horizon < 0)
        throw std::invalid_argument("population: horizon must be >= 0");
    if (c.num_agents < 1)
        throw std::invalid_argument("population: num_agents must be >= 1");
    validate(c.innate);
    validate(c.recommendation);
}

PopulationResult run_population(const PopulationConfig& c, int workers) {
    validate(c);
    const long n = c.num_agents;
    PopulationResult res;
    res.innate.resize(static_cast<std::size_t>(n));
    res.recommendation.resize(static_cast<std::size_t>(n));
    res.final_fixed.resize(static_cast<std::size_t>(n));
    res.final_adaptive.resize(static_cast<std::size_t>(n));

    AgentPolicyConfig fixed_policy;
    fixed_policy.kind = AgentPolicyKind::fixed;
    fixed_policy.gamma0 = c.gamma0;
    AgentPolicyConfig adaptive_policy;
    adaptive_policy.kind = AgentPolicyKind::adaptive;
    adaptive_policy.gamma0 = c.gamma0;
    adaptive_policy.kappa = c.kappa;
    adaptive_policy.delta = c.delta;
    const RewardSpec reward;  // rewards never feed back under a fixed platform

    parallel_for(n, workers, [&](long i) {
        const auto idx = static_cast<std::uint64_t>(i);
        UniformStream sampler(stream_seed(c.master_seed, idx, StreamRole::sampling));
        const double x0 = sample(c.innate, sampler);
        const double u0 = sample(c.recommendation, sampler);

        PlatformPolicyConfig platform;
        platform.kind = PlatformPolicyKind::fixed;
        platform.u0 = u0;

        // common random numbers: both policies replay the same click stream
        const std::uint64_t click_seed =
            stream_seed(c.master_seed, idx, StreamRole::clicks);
        const std::uint64_t explore_seed =
            stream_seed(c.master_seed, idx, StreamRole::exploration);

        UniformStream clicks_f(click_seed), explore_f(explore_seed);
        const Trajectory tf = simulate_trajectory(c.params, x0, c.horizon,
                                                  fixed_policy, platform, reward,
                                                  clicks_f, explore_f);
        UniformStream clicks_a(click_seed), explore_a(explore_seed);
        const Trajectory ta = simulate_trajectory(c.params, x0, c.horizon,
                                                  adaptive_policy, platform, reward,
                                                  clicks_a, explore_a);

        res.innate[static_cast<std::size_t>(i)] = x0;
        res.recommendation[static_cast<std::size_t>(i)] = u0;
        res.final_fixed[static_cast<std::size_t>(i)] = tf.opinions.back();
        res.final_adaptive[static_cast<std::size_t>(i)] = ta.opinions.back();
    });
    return res;
}

double wasserstein1(std::vector<double> a, std::vector<double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("wasserstein1: sequences must have equal length");
    if (a.empty()) return 0.0;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return sum / static_cast<double>(a.size());
}

std::vector<long> histogram(const std::vector<double>& samples, int bins,
                            double lo, double hi) {
    if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
    if (!(lo < hi)) throw std::invalid_argument("histogram: need lo < hi");
    std::vector<long> counts(static_cast<std::size_t>(bins), 0);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (double v : samples) {
        if (v < lo || v > hi) continue;
        int idx = static_cast<int>((v - lo) / width);
        if (idx >= bins) idx = bins - 1;  // right edge of the last bin is inclusive
        ++counts[static_cast<std::size_t>(idx)];
    }
    return counts;
}

}  // namespace drift
