#include "drift/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace drift {

DynamicsParams make_dynamics(double alpha, double beta) {
    if (!(beta >= 0.0) || !(beta <= alpha) || !(alpha <= 1.0))
        throw std::invalid_argument("dynamics: need 0 <= beta <= alpha <= 1, got alpha=" +
                                    std::to_string(alpha) + " beta=" + std::to_string(beta));
    const double zeta = alpha + beta;
    if (!(zeta > 0.0) || !(zeta <= 1.0))
        throw std::invalid_argument("dynamics: need 0 < alpha + beta <= 1, got " +
                                    std::to_string(zeta));
    DynamicsParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.zeta = zeta;
    p.b = beta / zeta;
    return p;
}

void validate(const DynamicsParams& p) {
    const DynamicsParams q = make_dynamics(p.alpha, p.beta);
    if (p.zeta != q.zeta || p.b != q.b)
        throw std::invalid_argument("dynamics: zeta/b inconsistent with alpha/beta; "
                                    "construct params with make_dynamics");
}

double step(const DynamicsParams& p, double x0, double x_prev, double u_prev,
            bool clicked) {
    if (clicked) return p.alpha * x0 + p.beta * x_prev + (1.0 - p.zeta) * u_prev;
    return (1.0 - p.b) * x0 + p.b * x_prev;
}

double recommendation_weight(const DynamicsParams& p,
                             const std::vector<std::uint8_t>& clicks) {
    // Backward accumulation: each clicked step j contributes
    // b^(K-1-j) * zeta^(number of clicks after j).
    double acc = 0.0;
    double bpow = 1.0;
    double zpow = 1.0;
    for (auto it = clicks.rbegin(); it != clicks.rend(); ++it) {
        if (*it) {
            acc += bpow * zpow;
            zpow *= p.zeta;
        }
        bpow *= p.b;
    }
    return (1.0 - p.zeta) * acc;
}

double ex_post_opinion(const DynamicsParams& p, double x0, double u0,
                       const std::vector<std::uint8_t>& clicks) {
    const double w = recommendation_weight(p, clicks);
    return (1.0 - w) * x0 + w * u0;
}

void validate(const RewardSpec& r) {
    if (!(r.d >= 0.0) || !(r.d <= 1.0))
        throw std::invalid_argument("reward: slope d must lie in [0,1], got " +
                                    std::to_string(r.d));
}

double reward_value(const RewardSpec& r, double dist) {
    return 1.0 - r.d * dist;
}

namespace {

double clicked_reward_sum(const Trajectory& t, int k, const RewardSpec& r) {
    if (k < 1 || k > t.horizon)
        throw std::invalid_argument("trajectory: step index " + std::to_string(k) +
                                    " outside [1," + std::to_string(t.horizon) + "]");
    double sum = 0.0;
    for (int j = 0; j < k; ++j) {
        const auto i = static_cast<std::size_t>(j);
        if (t.clicks[i])
            sum += reward_value(r, std::abs(t.opinions[i] - t.recommendations[i]));
    }
    return sum;
}

}  // namespace

double agent_utility(const Trajectory& t, int k, double x0, double lambda,
                     const RewardSpec& r) {
    const double payoff = clicked_reward_sum(t, k, r) / static_cast<double>(k);
    const double drift = std::abs(t.opinions[static_cast<std::size_t>(k)] - x0);
    return lambda * payoff - (1.0 - lambda) * drift;
}

double platform_payoff(const Trajectory& t, int k, const RewardSpec& r) {
    return clicked_reward_sum(t, k, r) / static_cast<double>(k);
}

}  // namespace drift
