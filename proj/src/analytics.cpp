#include "drift/analytics.hpp"

#include <cmath>
#include <string>

namespace drift {

namespace {
// Cap for the integer searches below; both loops terminate far earlier for
// any non-degenerate scenario.
constexpr int kSearchCap = 1000000;
}  // namespace

void validate(const ScenarioParams& s) {
    validate(s.params);
    if (s.x0 < -1.0 || s.x0 > 1.0 || s.u0 < -1.0 || s.u0 > 1.0)
        throw std::invalid_argument("scenario: opinions must lie in [-1,1]");
    if (!(s.gamma0 >= 0.0) || !(s.gamma0 <= 1.0))
        throw std::invalid_argument("scenario: gamma0 must lie in [0,1]");
    if (!(s.kappa >= 1.0))
        throw std::invalid_argument("scenario: kappa must be >= 1");
    if (!(s.delta > 0.0))
        throw std::invalid_argument("scenario: delta must be positive");
    if (!(s.lambda >= 0.0) || !(s.lambda <= 1.0))
        throw std::invalid_argument("scenario: lambda must lie in [0,1]");
    if (s.horizon < 1)
        throw std::invalid_argument("scenario: horizon must be >= 1");
}

double opinion_recursion_rate(const ScenarioParams& s) {
    return s.params.b * (s.gamma0 * s.params.zeta + 1.0 - s.gamma0);
}

double expected_opinion_fixed(int k, const ScenarioParams& s) {
    if (k < 0) throw std::invalid_argument("expected_opinion_fixed: k must be >= 0");
    const double r = opinion_recursion_rate(s);  // <= b <= 1/2, so 1 - r >= 1/2
    const double weight =
        s.gamma0 * (1.0 - s.params.zeta) * (1.0 - std::pow(r, k)) / (1.0 - r);
    return s.x0 + weight * (s.u0 - s.x0);
}

double limit_opinion_fixed(const ScenarioParams& s) {
    const double r = opinion_recursion_rate(s);
    const double weight = s.gamma0 * (1.0 - s.params.zeta) / (1.0 - r);
    return s.x0 + weight * (s.u0 - s.x0);
}

AdaptiveLimit limit_opinion_adaptive(const ScenarioParams& s) {
    const ReachabilityReport rep = reachability(s);
    if (rep.threshold_reachable) return {true, s.x0};
    // the band is never left, so no reduction ever happens and the adaptive
    // policy is indistinguishable from the fixed one
    return {false, limit_opinion_fixed(s)};
}

LimitUtilities limit_utilities(const ScenarioParams& s, const RewardSpec& r) {
    validate(s);
    validate(r);
    if (r.d != 0.0)
        throw applicability_error("limit utilities require a constant per-click reward "
                                  "(d = 0); a decaying reward has no long-run average");
    const double rate = opinion_recursion_rate(s);
    const double limit_drift =
        s.gamma0 * (1.0 - s.params.zeta) / (1.0 - rate) * std::abs(s.u0 - s.x0);
    LimitUtilities out;
    out.fixed_policy = s.lambda * s.gamma0 - (1.0 - s.lambda) * limit_drift;
    out.adaptive_policy = reachability(s).threshold_reachable ? 0.0 : out.fixed_policy;
    return out;
}

double longrun_lambda_threshold(const ScenarioParams& s) {
    validate(s);
    if (s.u0 == s.x0)
        throw applicability_error("lambda threshold undefined when u0 equals x0: "
                                  "no drift to trade against");
    const double r = opinion_recursion_rate(s);
    const double gap = std::abs(s.u0 - s.x0);
    return 1.0 / (1.0 + (1.0 - r) / ((1.0 - s.params.zeta) * gap));
}

std::optional<int> min_clicks_to_deviate(const ScenarioParams& s) {
    validate(s);
    const double gap = std::abs(s.u0 - s.x0);
    const double denom = 1.0 - s.params.beta;  // beta <= 1/2
    const double sup_excursion = (1.0 - s.params.zeta) * gap / denom;
    if (sup_excursion < s.delta) return std::nullopt;
    double betapow = 1.0;
    for (int m = 1; m <= kSearchCap; ++m) {
        betapow *= s.params.beta;
        const double excursion = (1.0 - s.params.zeta) * gap * (1.0 - betapow) / denom;
        if (excursion >= s.delta) return m;
    }
    // the supremum equals delta but no finite m attains it
    return std::nullopt;
}

int min_skips_to_return(const ScenarioParams& s) {
    validate(s);
    const double gap = std::abs(s.u0 - s.x0);
    const double denom = 1.0 - s.params.beta;
    const double deepest = (1.0 - s.params.zeta) * gap *
                           (1.0 - std::pow(s.params.beta, s.horizon)) / denom;
    double bpow = 1.0;
    for (int n = 1; n <= kSearchCap; ++n) {
        bpow *= s.params.b;
        if (deepest * bpow < s.delta) return n;
    }
    throw std::runtime_error("min_skips_to_return: search cap exceeded");
}

ReachabilityReport reachability(const ScenarioParams& s) {
    validate(s);
    const double gap = std::abs(s.u0 - s.x0);
    ReachabilityReport rep;
    rep.max_allclick_drift = (1.0 - s.params.zeta) * gap / (1.0 - s.params.beta);
    rep.threshold_reachable = rep.max_allclick_drift >= s.delta;
    rep.one_skip_reentry = s.params.b * gap < s.delta;
    rep.conditions_agree = rep.threshold_reachable == rep.one_skip_reentry;
    rep.degenerate_zeta = s.params.zeta == 1.0;
    return rep;
}

AdaptiveAdvantageBound adaptive_advantage_bound(const ScenarioParams& s) {
    validate(s);
    if (!(s.kappa > 1.0))
        throw applicability_error("advantage bound requires kappa > 1: "
                                  "with kappa = 1 no reduction changes anything");
    if (!(s.gamma0 > 0.0))
        throw applicability_error("advantage bound requires gamma0 > 0: "
                                  "the agent never clicks, so no reduction can occur");
    const std::optional<int> m = min_clicks_to_deviate(s);
    if (!m)
        throw applicability_error("advantage bound inapplicable: the tolerance band "
                                  "cannot be escaped, so the adaptive policy never reduces");
    const int big_k = s.horizon;
    if (big_k <= *m)
        throw applicability_error("advantage bound inapplicable: horizon " +
                                  std::to_string(big_k) + " leaves no room for a " +
                                  "reduction (needs more than " + std::to_string(*m) +
                                  " steps)");
    const int n = min_skips_to_return(s);

    AdaptiveAdvantageBound out;
    out.min_deviation_clicks = *m;
    out.min_return_skips = n;

    const double kinv = 1.0 / s.kappa;
    out.click_rate_lower_bound =
        (static_cast<double>(*m) +
         (1.0 - std::pow(kinv, big_k - *m)) / (s.kappa - 1.0)) /
        static_cast<double>(big_k);

    out.fixed_policy_drift = std::abs(expected_opinion_fixed(big_k, s) - s.x0);

    // expected final opinion when exactly one reduction happens at the last
    // possible moment: the final step runs at the reduced click probability
    const double gk = s.gamma0 * kinv;
    const double prev = expected_opinion_fixed(big_k - 1, s);
    const auto& p = s.params;
    out.one_reduction_opinion =
        (p.alpha * gk + (1.0 - p.b) * (1.0 - gk)) * s.x0 +
        (1.0 - p.zeta) * gk * s.u0 + (p.beta * gk + p.b * (1.0 - gk)) * prev;

    out.single_deviation_prob =
        std::pow(s.gamma0, *m) * std::pow(1.0 - gk, big_k - *m);

    const double reduced_drift = std::abs(out.one_reduction_opinion - s.x0);
    out.drift_upper_bound =
        (*m >= 2 && n == 1)
            ? s.delta * out.single_deviation_prob +
                  reduced_drift * (1.0 - out.single_deviation_prob)
            : reduced_drift;

    if (!(out.fixed_policy_drift > out.drift_upper_bound))
        throw applicability_error("advantage bound vacuous: the no-reduction drift does "
                                  "not exceed the reduced-policy drift bound");

    out.lambda_threshold =
        1.0 / (1.0 + s.gamma0 * (1.0 - out.click_rate_lower_bound) /
                         (out.fixed_policy_drift - out.drift_upper_bound));
    return out;
}

}  // namespace drift
