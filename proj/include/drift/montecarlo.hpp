#pragma once
// Seed-reproducible trial engine. A trajectory is a pure function of
// (master_seed, trial_index): per-trial generators are derived with
// stream_seed, one uniform click draw is consumed per step even when gamma
// is 0 or 1, and aggregation runs in trial-index order, so whole-experiment
// outputs are byte-stable across runs and across worker counts.

#include <cstdint>
#include <utility>
#include <vector>

#include "drift/analytics.hpp"
#include "drift/dynamics.hpp"
#include "drift/policies.hpp"
#include "drift/rng.hpp"

namespace drift {

struct ExperimentConfig {
    ScenarioParams scenario;
    AgentPolicyConfig agent;
    PlatformPolicyConfig platform;
    RewardSpec reward;
    long trials = 1;
    std::uint64_t master_seed = 0;
};

// Checks each part and their cross-consistency (the policy configs must
// restate the scenario's gamma0/kappa/delta/u0 verbatim).
void validate(const ExperimentConfig& c);

// Core closed loop: recommend, draw click (c = 1 iff z < gamma, strict),
// update opinion, advance agent policy, record platform observation.
Trajectory simulate_trajectory(const DynamicsParams& p, double x0, int horizon,
                               const AgentPolicyConfig& agent,
                               const PlatformPolicyConfig& platform,
                               const RewardSpec& reward, UniformStream& clicks,
                               UniformStream& exploration);

Trajectory run_trial(const ExperimentConfig& c, std::uint64_t trial_index);

// Click probability that would govern step K, i.e. after the policy advance
// triggered by the final opinion update. Trajectories store gamma_0..gamma_{K-1};
// this replays the last advance to extend the series by one.
double final_click_probability(const Trajectory& t, const AgentPolicyConfig& agent,
                               double x0);

// Per-step means and standard errors over all trials. Series run k = 0..K;
// utility and payoff are 0 at k = 0 by convention, and the gamma series ends
// with the post-final probability. A zero-variance column reports se = 0 and
// the exact common value as the mean.
struct SeriesEstimate {
    int horizon = 0;
    long trials = 0;
    std::vector<double> mean_opinion, se_opinion;
    std::vector<double> mean_utility, se_utility;
    std::vector<double> mean_payoff, se_payoff;
    std::vector<double> mean_gamma, se_gamma;
};

SeriesEstimate run_experiment(const ExperimentConfig& c, int workers = 1);

// Two forced-reduction runs driven by the identical uniform click sequence.
// schedule_a must be a subset of schedule_b; the coupling then guarantees,
// on every path, elementwise c_b <= c_a and |x_K_b - x0| <= |x_K_a - x0|.
std::pair<Trajectory, Trajectory> run_coupled_pair(const ExperimentConfig& c,
                                                   const std::vector<int>& schedule_a,
                                                   const std::vector<int>& schedule_b,
                                                   std::uint64_t trial_index);

// Exact per-step expectations by exhaustive enumeration of all 2^K click
// paths, each weighted by its probability under the configured policy
// (gamma_k is a deterministic function of the click prefix, so this covers
// fixed, adaptive and forced agents). Requires the fixed platform policy and
// K <= 16.
struct ExactSeries {
    int horizon = 0;
    std::vector<double> opinion, utility, payoff, gamma;
};

inline constexpr int kEnumerateHorizonCap = 16;

ExactSeries enumerate_exact(const ExperimentConfig& c);

// Paired comparison of the adaptive policy against its fixed counterpart
// (same scenario, same seeds, common random numbers): per-trial difference
// of agent utilities at step k, aggregated to mean and standard error.
struct PairedDiff {
    double mean = 0.0;
    double se = 0.0;
    long trials = 0;
};

PairedDiff adaptive_vs_fixed_utility(const ExperimentConfig& adaptive_config,
                                     int k, int workers = 1);

}  // namespace drift
