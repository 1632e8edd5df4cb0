#pragma once
// Opinion dynamics for a single agent consuming a stream of recommendations.
//
// One step: given opinion x_k, recommendation u_k and click c_k,
//   clicked:  x_{k+1} = alpha*x0 + beta*x_k + (1 - alpha - beta)*u_k
//   skipped:  x_{k+1} = (1 - b)*x0 + b*x_k
// with zeta = alpha + beta and b = beta / zeta. Skipping pulls the opinion
// back toward the innate x0 along the same memory weights, clicking mixes in
// the recommendation.

#include <cstdint>
#include <vector>

namespace drift {

struct DynamicsParams {
    double alpha = 0.5;  // weight on the innate opinion
    double beta = 0.0;   // weight on the current opinion
    double zeta = 0.5;   // alpha + beta, total inertia
    double b = 0.0;      // beta / zeta, relative inertia
};

// The only construction path: derives zeta and b and enforces
// 0 <= beta <= alpha <= 1 and 0 < zeta <= 1 (which gives b in [0, 1/2]).
DynamicsParams make_dynamics(double alpha, double beta);

// Re-checks the invariants plus consistency of the derived fields; used when
// params arrive through config files rather than make_dynamics.
void validate(const DynamicsParams& p);

// One dynamics update. clicked follows the recommendation-mixing branch,
// otherwise the recommendation is ignored entirely.
double step(const DynamicsParams& p, double x0, double x_prev, double u_prev,
            bool clicked);

// Everything produced by one simulated run over K steps. click_probs[k] is
// the probability that governed the draw of clicks[k]; the post-final
// probability (after the update triggered by step K-1) is recomputed on
// demand rather than stored.
struct Trajectory {
    int horizon = 0;
    std::vector<double> opinions;         // x_0 .. x_K
    std::vector<double> recommendations;  // u_0 .. u_{K-1}
    std::vector<std::uint8_t> clicks;     // c_0 .. c_{K-1}
    std::vector<double> click_probs;      // gamma_0 .. gamma_{K-1}
};

// Closed form for the opinion after k steps of a constant recommendation u0:
// x_k = (1 - w)*x0 + w*u0 where the recommendation weight w depends only on
// the click pattern. Computed in one backward pass over the clicks.
double recommendation_weight(const DynamicsParams& p,
                             const std::vector<std::uint8_t>& clicks);
double ex_post_opinion(const DynamicsParams& p, double x0, double u0,
                       const std::vector<std::uint8_t>& clicks);

// Per-click reward 1 - d*dist, linear in the distance between the opinion
// and the recommendation at the clicked step. d = 0 makes every click worth
// 1; d in (0.5, 1] can give negative values at distance 2, which is allowed.
struct RewardSpec {
    double d = 0.0;
};

void validate(const RewardSpec& r);

double reward_value(const RewardSpec& r, double dist);

// Agent utility after k steps (k >= 1): lambda times the per-step average of
// clicked rewards 1 - d*|x_i - u_i|, minus (1 - lambda) * |x_k - x0|.
double agent_utility(const Trajectory& t, int k, double x0, double lambda,
                     const RewardSpec& r);

// Platform payoff after k steps (k >= 1): the same clicked-reward average
// without the drift penalty.
double platform_payoff(const Trajectory& t, int k, const RewardSpec& r);

}  // namespace drift
