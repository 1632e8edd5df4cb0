#include "drift/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "drift/parallel.hpp"

namespace drift {

void validate(const ExperimentConfig& c) {
    validate(c.scenario);
    validate(c.agent, c.scenario.horizon);
    validate(c.platform);
    validate(c.reward);
    if (c.trials < 1)
        throw std::invalid_argument("experiment: trials must be >= 1");
    if (c.agent.gamma0 != c.scenario.gamma0)
        throw std::invalid_argument("experiment: agent gamma0 must equal scenario gamma0");
    if (c.agent.kind == AgentPolicyKind::adaptive &&
        (c.agent.kappa != c.scenario.kappa || c.agent.delta != c.scenario.delta))
        throw std::invalid_argument("experiment: adaptive kappa/delta must equal the "
                                    "scenario's");
    if (c.platform.kind == PlatformPolicyKind::fixed && c.platform.u0 != c.scenario.u0)
        throw std::invalid_argument("experiment: fixed-platform u0 must equal scenario u0");
}

Trajectory simulate_trajectory(const DynamicsParams& p, double x0, int horizon,
                               const AgentPolicyConfig& agent,
                               const PlatformPolicyConfig& platform,
                               const RewardSpec& reward, UniformStream& clicks,
                               UniformStream& exploration) {
    Trajectory t;
    t.horizon = horizon;
    t.opinions.reserve(static_cast<std::size_t>(horizon) + 1);
    t.recommendations.reserve(static_cast<std::size_t>(horizon));
    t.clicks.reserve(static_cast<std::size_t>(horizon));
    t.click_probs.reserve(static_cast<std::size_t>(horizon));
    t.opinions.push_back(x0);

    AgentPolicyState astate = make_agent_state(agent);
    PlatformPolicyState pstate;
    double x = x0;
    for (int k = 0; k < horizon; ++k) {
        const double u = platform_recommend(pstate, platform, k, exploration);
        const double gamma = agent_click_probability(astate);
        // one click draw per step, consumed even when gamma is 0 or 1, so
        // coupled runs stay aligned draw-for-draw
        const bool clicked = clicks.next() < gamma;
        const double x_next = step(p, x0, x, u, clicked);
        agent_policy_advance(astate, agent, x_next, x0, k + 1);
        platform_observe(pstate, u, clicked, reward_value(reward, std::abs(x - u)));
        t.recommendations.push_back(u);
        t.click_probs.push_back(gamma);
        t.clicks.push_back(clicked ? 1 : 0);
        t.opinions.push_back(x_next);
        x = x_next;
    }
    return t;
}

Trajectory run_trial(const ExperimentConfig& c, std::uint64_t trial_index) {
    validate(c);
    UniformStream clicks(stream_seed(c.master_seed, trial_index, StreamRole::clicks));
    UniformStream exploration(
        stream_seed(c.master_seed, trial_index, StreamRole::exploration));
    return simulate_trajectory(c.scenario.params, c.scenario.x0, c.scenario.horizon,
                               c.agent, c.platform, c.reward, clicks, exploration);
}

double final_click_probability(const Trajectory& t, const AgentPolicyConfig& agent,
                               double x0) {
    if (t.horizon == 0) return agent.gamma0;
    AgentPolicyState s;
    s.gamma = t.click_probs.back();
    agent_policy_advance(s, agent, t.opinions.back(), x0, t.horizon);
    return s.gamma;
}

namespace {

struct TrialSeries {
    std::vector<double> opinion, utility, payoff, gamma;  // each length K+1
};

// Builds all four per-step series for one trajectory in O(K) using a running
// clicked-reward sum (equivalent to calling agent_utility/platform_payoff at
// every k).
TrialSeries trial_series(const Trajectory& t, const ExperimentConfig& c) {
    const int big_k = t.horizon;
    const double x0 = c.scenario.x0;
    const double lambda = c.scenario.lambda;
    TrialSeries s;
    s.opinion.resize(static_cast<std::size_t>(big_k) + 1);
    s.utility.resize(static_cast<std::size_t>(big_k) + 1);
    s.payoff.resize(static_cast<std::size_t>(big_k) + 1);
    s.gamma.resize(static_cast<std::size_t>(big_k) + 1);
    double reward_sum = 0.0;
    s.opinion[0] = t.opinions[0];
    s.utility[0] = 0.0;
    s.payoff[0] = 0.0;
    for (int k = 1; k <= big_k; ++k) {
        const auto prev = static_cast<std::size_t>(k - 1);
        if (t.clicks[prev])
            reward_sum += reward_value(
                c.reward, std::abs(t.opinions[prev] - t.recommendations[prev]));
        const double x = t.opinions[static_cast<std::size_t>(k)];
        const double payoff = reward_sum / static_cast<double>(k);
        s.opinion[static_cast<std::size_t>(k)] = x;
        s.payoff[static_cast<std::size_t>(k)] = payoff;
        s.utility[static_cast<std::size_t>(k)] =
            lambda * payoff - (1.0 - lambda) * std::abs(x - x0);
    }
    for (int k = 0; k < big_k; ++k)
        s.gamma[static_cast<std::size_t>(k)] = t.click_probs[static_cast<std::size_t>(k)];
    s.gamma[static_cast<std::size_t>(big_k)] = final_click_probability(t, c.agent, x0);
    return s;
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

// Mean and standard error over one column of per-trial values. When every
// value is identical the mean is that exact value and se is exactly 0 (no
// floating-point residue from summation).
MeanSe mean_se(const std::vector<const double*>& rows, std::size_t col, long n) {
    const double first = rows[0][col];
    bool all_equal = true;
    for (long i = 1; i < n; ++i)
        if (rows[static_cast<std::size_t>(i)][col] != first) {
            all_equal = false;
            break;
        }
    if (all_equal) return {first, 0.0};
    double sum = 0.0;
    for (long i = 0; i < n; ++i) sum += rows[static_cast<std::size_t>(i)][col];
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (long i = 0; i < n; ++i) {
        const double dev = rows[static_cast<std::size_t>(i)][col] - mean;
        sq += dev * dev;
    }
    const double var = sq / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

void aggregate(const std::vector<TrialSeries>& all,
               std::vector<double> TrialSeries::*member, int big_k, long n,
               std::vector<double>& means, std::vector<double>& ses) {
    means.resize(static_cast<std::size_t>(big_k) + 1);
    ses.resize(static_cast<std::size_t>(big_k) + 1);
    std::vector<const double*> rows(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        rows[static_cast<std::size_t>(i)] = (all[static_cast<std::size_t>(i)].*member).data();
    for (int k = 0; k <= big_k; ++k) {
        const MeanSe ms = mean_se(rows, static_cast<std::size_t>(k), n);
        means[static_cast<std::size_t>(k)] = ms.mean;
        ses[static_cast<std::size_t>(k)] = ms.se;
    }
}

}  // namespace

SeriesEstimate run_experiment(const ExperimentConfig& c, int workers) {
    validate(c);
    const int big_k = c.scenario.horizon;
    const long n = c.trials;
    std::vector<TrialSeries> all(static_cast<std::size_t>(n));
    parallel_for(n, workers, [&](long i) {
        all[static_cast<std::size_t>(i)] =
            trial_series(run_trial(c, static_cast<std::uint64_t>(i)), c);
    });
    SeriesEstimate est;
    est.horizon = big_k;
    est.trials = n;
    aggregate(all, &TrialSeries::opinion, big_k, n, est.mean_opinion, est.se_opinion);
    aggregate(all, &TrialSeries::utility, big_k, n, est.mean_utility, est.se_utility);
    aggregate(all, &TrialSeries::payoff, big_k, n, est.mean_payoff, est.se_payoff);
    aggregate(all, &TrialSeries::gamma, big_k, n, est.mean_gamma, est.se_gamma);
    return est;
}

std::pair<Trajectory, Trajectory> run_coupled_pair(const ExperimentConfig& c,
                                                   const std::vector<int>& schedule_a,
                                                   const std::vector<int>& schedule_b,
                                                   std::uint64_t trial_index) {
    validate(c);
    if (c.platform.kind != PlatformPolicyKind::fixed)
        throw std::invalid_argument("coupled pair: requires the fixed platform policy "
                                    "(a random recommendation path breaks the coupling)");
    AgentPolicyConfig base;
    base.kind = AgentPolicyKind::forced;
    base.gamma0 = c.scenario.gamma0;
    base.kappa = c.scenario.kappa;
    AgentPolicyConfig pol_a = base;
    pol_a.schedule = schedule_a;
    AgentPolicyConfig pol_b = base;
    pol_b.schedule = schedule_b;
    validate(pol_a, c.scenario.horizon);
    validate(pol_b, c.scenario.horizon);
    if (!std::includes(schedule_b.begin(), schedule_b.end(), schedule_a.begin(),
                       schedule_a.end()))
        throw std::invalid_argument("coupled pair: schedule_a must be a subset of "
                                    "schedule_b");

    const std::uint64_t seed =
        stream_seed(c.master_seed, trial_index, StreamRole::clicks);
    const std::uint64_t eseed =
        stream_seed(c.master_seed, trial_index, StreamRole::exploration);
    UniformStream clicks_a(seed), exploration_a(eseed);
    Trajectory ta = simulate_trajectory(c.scenario.params, c.scenario.x0,
                                        c.scenario.horizon, pol_a, c.platform,
                                        c.reward, clicks_a, exploration_a);
    UniformStream clicks_b(seed), exploration_b(eseed);
    Trajectory tb = simulate_trajectory(c.scenario.params, c.scenario.x0,
                                        c.scenario.horizon, pol_b, c.platform,
                                        c.reward, clicks_b, exploration_b);
    return {std::move(ta), std::move(tb)};
}

namespace {

struct Accumulator {
    std::vector<double> opinion, utility, payoff, gamma;
};

void enumerate_dfs(const ExperimentConfig& c, int k, double prob, double x,
                   double reward_sum, AgentPolicyState astate, Accumulator& acc) {
    const std::size_t idx = static_cast<std::size_t>(k);
    acc.opinion[idx] += prob * x;
    acc.gamma[idx] += prob * astate.gamma;
    if (k > 0) {
        const double payoff = reward_sum / static_cast<double>(k);
        acc.payoff[idx] += prob * payoff;
        acc.utility[idx] += prob * (c.scenario.lambda * payoff -
                                    (1.0 - c.scenario.lambda) *
                                        std::abs(x - c.scenario.x0));
    }
    if (k == c.scenario.horizon) return;

    const auto& p = c.scenario.params;
    const double x0 = c.scenario.x0;
    const double u = c.platform.u0;
    const double g = astate.gamma;
    if (g > 0.0) {
        const double x_next = step(p, x0, x, u, true);
        AgentPolicyState st = astate;
        agent_policy_advance(st, c.agent, x_next, x0, k + 1);
        enumerate_dfs(c, k + 1, prob * g, x_next,
                      reward_sum + reward_value(c.reward, std::abs(x - u)), st, acc);
    }
    if (g < 1.0) {
        const double x_next = step(p, x0, x, u, false);
        AgentPolicyState st = astate;
        agent_policy_advance(st, c.agent, x_next, x0, k + 1);
        enumerate_dfs(c, k + 1, prob * (1.0 - g), x_next, reward_sum, st, acc);
    }
}

}  // namespace

ExactSeries enumerate_exact(const ExperimentConfig& c) {
    validate(c);
    if (c.scenario.horizon > kEnumerateHorizonCap)
        throw std::invalid_argument("enumerate: horizon " +
                                    std::to_string(c.scenario.horizon) +
                                    " exceeds the exhaustive cap of " +
                                    std::to_string(kEnumerateHorizonCap));
    if (c.platform.kind != PlatformPolicyKind::fixed)
        throw std::invalid_argument("enumerate: requires the fixed platform policy "
                                    "(the recommendation path is random otherwise)");
    const std::size_t len = static_cast<std::size_t>(c.scenario.horizon) + 1;
    Accumulator acc;
    acc.opinion.assign(len, 0.0);
    acc.utility.assign(len, 0.0);
    acc.payoff.assign(len, 0.0);
    acc.gamma.assign(len, 0.0);
    enumerate_dfs(c, 0, 1.0, c.scenario.x0, 0.0, make_agent_state(c.agent), acc);
    ExactSeries out;
    out.horizon = c.scenario.horizon;
    out.opinion = std::move(acc.opinion);
    out.utility = std::move(acc.utility);
    out.payoff = std::move(acc.payoff);
    out.gamma = std::move(acc.gamma);
    return out;
}

PairedDiff adaptive_vs_fixed_utility(const ExperimentConfig& adaptive_config, int k,
                                     int workers) {
    validate(adaptive_config);
    if (adaptive_config.agent.kind != AgentPolicyKind::adaptive)
        throw std::invalid_argument("paired comparison: config must use the adaptive "
                                    "agent policy");
    if (k < 0 || k > adaptive_config.scenario.horizon)
        throw std::invalid_argument("paired comparison: step index out of range");
    ExperimentConfig fixed_config = adaptive_config;
    fixed_config.agent.kind = AgentPolicyKind::fixed;

    const long n = adaptive_config.trials;
    std::vector<double> diffs(static_cast<std::size_t>(n));
    parallel_for(n, workers, [&](long i) {
        const auto idx = static_cast<std::uint64_t>(i);
        const Trajectory ta = run_trial(adaptive_config, idx);
        const Trajectory tf = run_trial(fixed_config, idx);
        const double ua = agent_utility(ta, k, adaptive_config.scenario.x0,
                                        adaptive_config.scenario.lambda,
                                        adaptive_config.reward);
        const double uf = agent_utility(tf, k, fixed_config.scenario.x0,
                                        fixed_config.scenario.lambda,
                                        fixed_config.reward);
        diffs[static_cast<std::size_t>(i)] = ua - uf;
    });

    PairedDiff out;
    out.trials = n;
    const double first = diffs[0];
    bool all_equal = true;
    for (long i = 1; i < n; ++i)
        if (diffs[static_cast<std::size_t>(i)] != first) {
            all_equal = false;
            break;
        }
    if (all_equal) {
        out.mean = first;
        out.se = 0.0;
        return out;
    }
    double sum = 0.0;
    for (double d : diffs) sum += d;
    out.mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (double d : diffs) {
        const double dev = d - out.mean;
        sq += dev * dev;
    }
    out.se = std::sqrt(sq / static_cast<double>(n - 1) / static_cast<double>(n));
    return out;
}

}  // namespace drift
