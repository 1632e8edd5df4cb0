#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "drift/montecarlo.hpp"

using namespace drift;

namespace {

ExperimentConfig make_config(AgentPolicyKind kind, int horizon, long trials,
                             std::uint64_t seed = 17) {
    ExperimentConfig c;
    c.scenario.params = make_dynamics(0.4, 0.2);
    c.scenario.x0 = -1.0;
    c.scenario.u0 = 1.0;
    c.scenario.gamma0 = 0.9;
    c.scenario.kappa = 1.2;
    c.scenario.delta = 0.3;
    c.scenario.lambda = 0.5;
    c.scenario.horizon = horizon;
    c.reward.d = 0.1;
    c.agent.kind = kind;
    c.agent.gamma0 = 0.9;
    c.agent.kappa = 1.2;
    c.agent.delta = 0.3;
    c.platform.kind = PlatformPolicyKind::fixed;
    c.platform.u0 = 1.0;
    c.trials = trials;
    c.master_seed = seed;
    return c;
}

bool same_trajectory(const Trajectory& a, const Trajectory& b) {
    return a.opinions == b.opinions && a.recommendations == b.recommendations &&
           a.clicks == b.clicks && a.click_probs == b.click_probs;
}

}  // namespace

TEST_CASE("experiment validation catches inconsistent policy configs") {
    auto c = make_config(AgentPolicyKind::adaptive, 10, 5);
    CHECK_NOTHROW(validate(c));

    c.agent.gamma0 = 0.8;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);

    c = make_config(AgentPolicyKind::adaptive, 10, 5);
    c.agent.kappa = 2.0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);

    c = make_config(AgentPolicyKind::fixed, 10, 5);
    c.platform.u0 = 0.5;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);

    c = make_config(AgentPolicyKind::fixed, 10, 0);
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
}

TEST_CASE("trials are pure functions of seed and index") {
    auto c = make_config(AgentPolicyKind::adaptive, 50, 1);
    auto t1 = run_trial(c, 3);
    auto t2 = run_trial(c, 3);
    CHECK(same_trajectory(t1, t2));

    auto t3 = run_trial(c, 4);
    CHECK_FALSE(same_trajectory(t1, t3));

    auto c2 = make_config(AgentPolicyKind::adaptive, 50, 1, 18);
    auto t4 = run_trial(c2, 3);
    CHECK_FALSE(same_trajectory(t1, t4));
}

TEST_CASE("degenerate click probabilities are deterministic") {
    auto c = make_config(AgentPolicyKind::fixed, 30, 1);
    c.scenario.gamma0 = 1.0;
    c.agent.gamma0 = 1.0;
    auto t = run_trial(c, 0);
    CHECK(std::all_of(t.clicks.begin(), t.clicks.end(),
                      [](std::uint8_t v) { return v == 1; }));
    std::vector<std::uint8_t> all_ones(30, 1);
    CHECK(t.opinions.back() ==
          doctest::Approx(ex_post_opinion(c.scenario.params, -1.0, 1.0, all_ones))
              .epsilon(1e-12));

    c.scenario.gamma0 = 0.0;
    c.agent.gamma0 = 0.0;
    t = run_trial(c, 0);
    CHECK(std::all_of(t.clicks.begin(), t.clicks.end(),
                      [](std::uint8_t v) { return v == 0; }));
    CHECK(t.opinions.back() == -1.0);
}

TEST_CASE("single trial estimates echo the trajectory with zero error") {
    auto c = make_config(AgentPolicyKind::adaptive, 12, 1);
    auto est = run_experiment(c);
    auto t = run_trial(c, 0);
    REQUIRE(est.mean_opinion.size() == 13);
    for (int k = 0; k <= 12; ++k) {
        CHECK(est.mean_opinion[k] == t.opinions[k]);
        CHECK(est.se_opinion[k] == 0.0);
        CHECK(est.se_utility[k] == 0.0);
        CHECK(est.se_payoff[k] == 0.0);
        CHECK(est.se_gamma[k] == 0.0);
    }
    CHECK(est.mean_utility[0] == 0.0);
    CHECK(est.mean_payoff[0] == 0.0);
    for (int k = 1; k <= 12; ++k) {
        CHECK(est.mean_utility[k] ==
              doctest::Approx(agent_utility(t, k, -1.0, 0.5, c.reward)).epsilon(1e-15));
        CHECK(est.mean_payoff[k] ==
              doctest::Approx(platform_payoff(t, k, c.reward)).epsilon(1e-15));
    }
}

TEST_CASE("fixed policy gamma series is exact with zero spread") {
    auto c = make_config(AgentPolicyKind::fixed, 40, 64);
    auto est = run_experiment(c, 4);
    for (std::size_t k = 0; k < est.mean_gamma.size(); ++k) {
        CHECK(est.mean_gamma[k] == 0.9);  // bitwise, via the all-equal path
        CHECK(est.se_gamma[k] == 0.0);
    }
}

TEST_CASE("adaptive gamma never rises along any path") {
    auto c = make_config(AgentPolicyKind::adaptive, 200, 1);
    for (std::uint64_t i = 0; i < 50; ++i) {
        auto t = run_trial(c, i);
        for (std::size_t k = 1; k < t.click_probs.size(); ++k)
            CHECK(t.click_probs[k] <= t.click_probs[k - 1]);
        CHECK(final_click_probability(t, c.agent, c.scenario.x0) <=
              t.click_probs.back());
    }
}

TEST_CASE("monte carlo means track the closed form") {
    auto c = make_config(AgentPolicyKind::fixed, 50, 400);
    auto est = run_experiment(c, 4);
    for (int k : {1, 5, 20, 50}) {
        const double closed = expected_opinion_fixed(k, c.scenario);
        CHECK(est.se_opinion[k] > 0.0);
        CHECK(std::abs(est.mean_opinion[k] - closed) <= 4.0 * est.se_opinion[k]);
    }
}

TEST_CASE("series utilities equal the pointwise definitions") {
    auto c = make_config(AgentPolicyKind::adaptive, 7, 3);
    auto est = run_experiment(c);
    for (int k = 1; k <= 7; ++k) {
        double u = 0.0, p = 0.0;
        for (std::uint64_t i = 0; i < 3; ++i) {
            auto t = run_trial(c, i);
            u += agent_utility(t, k, c.scenario.x0, c.scenario.lambda, c.reward);
            p += platform_payoff(t, k, c.reward);
        }
        CHECK(est.mean_utility[k] == doctest::Approx(u / 3.0).epsilon(1e-14));
        CHECK(est.mean_payoff[k] == doctest::Approx(p / 3.0).epsilon(1e-14));
    }
}

TEST_CASE("aggregates are identical for any worker count") {
    auto c = make_config(AgentPolicyKind::adaptive, 60, 101);
    auto a = run_experiment(c, 1);
    auto b = run_experiment(c, 4);
    CHECK(a.mean_opinion == b.mean_opinion);
    CHECK(a.se_opinion == b.se_opinion);
    CHECK(a.mean_utility == b.mean_utility);
    CHECK(a.se_utility == b.se_utility);
    CHECK(a.mean_payoff == b.mean_payoff);
    CHECK(a.se_payoff == b.se_payoff);
    CHECK(a.mean_gamma == b.mean_gamma);
    CHECK(a.se_gamma == b.se_gamma);
}

TEST_CASE("exact enumeration at horizon one") {
    auto c = make_config(AgentPolicyKind::fixed, 1, 1);
    for (double g : {0.0, 0.3, 0.9, 1.0}) {
        c.scenario.gamma0 = g;
        c.agent.gamma0 = g;
        auto e = enumerate_exact(c);
        const double zeta = c.scenario.params.zeta;
        CHECK(e.opinion[1] ==
              doctest::Approx(-1.0 + g * (1.0 - zeta) * 2.0).epsilon(1e-14));
        CHECK(e.gamma[0] == g);
    }
}

TEST_CASE("exact enumeration matches the closed form for the fixed policy") {
    for (int horizon : {3, 8, 12}) {
        for (double g : {0.0, 0.3, 0.9, 1.0}) {
            auto c = make_config(AgentPolicyKind::fixed, horizon, 1);
            c.scenario.gamma0 = g;
            c.agent.gamma0 = g;
            auto e = enumerate_exact(c);
            for (int k = 0; k <= horizon; ++k)
                CHECK(std::abs(e.opinion[k] - expected_opinion_fixed(k, c.scenario)) <=
                      1e-12);
        }
    }
}

TEST_CASE("unreachable band makes adaptive enumeration equal fixed") {
    auto adaptive = make_config(AgentPolicyKind::adaptive, 10, 1);
    adaptive.scenario.delta = 1.5;  // sup all-click drift is 1.0
    adaptive.agent.delta = 1.5;
    auto fixed = adaptive;
    fixed.agent.kind = AgentPolicyKind::fixed;
    auto ea = enumerate_exact(adaptive);
    auto ef = enumerate_exact(fixed);
    for (int k = 0; k <= 10; ++k) {
        CHECK(ea.opinion[k] == ef.opinion[k]);
        CHECK(ea.utility[k] == ef.utility[k]);
        CHECK(ea.gamma[k] == ef.gamma[k]);
    }
}

TEST_CASE("enumeration rejects oversized horizons and random platforms") {
    auto c = make_config(AgentPolicyKind::fixed, 17, 1);
    CHECK_THROWS_AS(enumerate_exact(c), std::invalid_argument);

    c = make_config(AgentPolicyKind::fixed, 10, 1);
    c.platform.kind = PlatformPolicyKind::explore;
    c.platform.period = 5;
    CHECK_THROWS_AS(enumerate_exact(c), std::invalid_argument);
}

TEST_CASE("enumeration agrees with simulation for the adaptive policy") {
    auto c = make_config(AgentPolicyKind::adaptive, 8, 4000);
    auto exact = enumerate_exact(c);
    auto est = run_experiment(c, 4);
    for (int k : {1, 4, 8}) {
        CHECK(est.se_opinion[k] > 0.0);
        CHECK(std::abs(est.mean_opinion[k] - exact.opinion[k]) <=
              4.0 * est.se_opinion[k]);
        CHECK(std::abs(est.mean_gamma[k] - exact.gamma[k]) <= 4.0 * est.se_gamma[k]);
        CHECK(std::abs(est.mean_utility[k] - exact.utility[k]) <=
              4.0 * est.se_utility[k]);
    }
}

TEST_CASE("identical schedules produce identical coupled runs") {
    auto c = make_config(AgentPolicyKind::forced, 20, 1);
    c.agent.schedule = {5};
    auto [a, b] = run_coupled_pair(c, {5}, {5}, 12);
    CHECK(same_trajectory(a, b));
}

TEST_CASE("coupled runs dominate pathwise under nested schedules") {
    auto c = make_config(AgentPolicyKind::forced, 20, 1);
    c.agent.schedule = {3};
    long clicks_a = 0, clicks_b = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        auto [a, b] = run_coupled_pair(c, {3}, {3, 6, 11}, i);
        for (int k = 0; k < 20; ++k) {
            CHECK(b.clicks[k] <= a.clicks[k]);
            clicks_a += a.clicks[k];
            clicks_b += b.clicks[k];
        }
        CHECK(std::abs(b.opinions.back() - c.scenario.x0) <=
              std::abs(a.opinions.back() - c.scenario.x0));
    }
    CHECK(clicks_b < clicks_a);  // aggregate strictness over 500 paths
}

TEST_CASE("coupling rejects non-nested schedules and random platforms") {
    auto c = make_config(AgentPolicyKind::forced, 20, 1);
    c.agent.schedule = {3};
    CHECK_THROWS_AS(run_coupled_pair(c, {3}, {4, 6}, 0), std::invalid_argument);

    c.platform.kind = PlatformPolicyKind::explore;
    c.platform.period = 5;
    CHECK_THROWS_AS(run_coupled_pair(c, {3}, {3, 6}, 0), std::invalid_argument);
}

TEST_CASE("paired utility comparison") {
    auto c = make_config(AgentPolicyKind::adaptive, 5, 400);
    c.scenario.params = make_dynamics(0.3, 0.2);
    c.scenario.lambda = 0.2925;  // just below the advantage threshold
    c.reward.d = 0.0;
    auto diff = adaptive_vs_fixed_utility(c, 5, 2);
    CHECK(diff.trials == 400);
    CHECK(diff.se > 0.0);
    CHECK(diff.mean > 0.0);

    auto same_workers = adaptive_vs_fixed_utility(c, 5, 1);
    CHECK(same_workers.mean == diff.mean);
    CHECK(same_workers.se == diff.se);

    c.agent.kind = AgentPolicyKind::fixed;
    CHECK_THROWS_AS(adaptive_vs_fixed_utility(c, 5, 1), std::invalid_argument);
}
