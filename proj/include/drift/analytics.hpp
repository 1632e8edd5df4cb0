#pragma once
// Closed-form quantities for the fixed-recommendation scenario: expected
// opinions under the never-reducing click policy, long-run limits, utility
// limits, and the finite-horizon sufficient condition for the adaptive
// policy to beat the fixed one.

#include <optional>
#include <stdexcept>

#include "drift/dynamics.hpp"

namespace drift {

// Thrown when a requested closed form does not apply to the given scenario
// (as opposed to the scenario itself being malformed).
class applicability_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One agent facing a constant recommendation u0 over K steps, with initial
// click probability gamma0, reduction factor kappa, tolerance band delta and
// utility weight lambda.
struct ScenarioParams {
    DynamicsParams params;
    double x0 = -1.0;
    double u0 = 1.0;
    double gamma0 = 1.0;
    double kappa = 1.0;
    double delta = 0.1;
    double lambda = 0.5;
    int horizon = 1;
};

void validate(const ScenarioParams& s);

// Contraction rate of the expected-opinion recursion under the fixed policy:
// r = b * (gamma0 * zeta + 1 - gamma0), always in [0, 1/2].
double opinion_recursion_rate(const ScenarioParams& s);

// E[X_k] under the fixed click policy:
// x0 + gamma0 * (1 - zeta) * (1 - r^k) / (1 - r) * (u0 - x0).
double expected_opinion_fixed(int k, const ScenarioParams& s);

// k -> infinity limit of the above.
double limit_opinion_fixed(const ScenarioParams& s);

// Long-run expected opinion under the adaptive policy. When the tolerance
// band can be escaped the opinion returns to x0 (reductions drive gamma to
// zero); otherwise the adaptive policy never reduces and the limit coincides
// with the fixed one.
struct AdaptiveLimit {
    bool threshold_reachable = false;
    double value = 0.0;
};

AdaptiveLimit limit_opinion_adaptive(const ScenarioParams& s);

// Long-run expected utilities with constant per-click reward (requires
// d = 0; the time-decaying reward has no constant long-run average).
struct LimitUtilities {
    double fixed_policy = 0.0;
    double adaptive_policy = 0.0;  // identically 0 in the long run
};

LimitUtilities limit_utilities(const ScenarioParams& s, const RewardSpec& r);

// The lambda below which the adaptive policy wins in long-run utility:
// 1 / (1 + (1 - r) / ((1 - zeta) * |u0 - x0|)). Requires u0 != x0.
double longrun_lambda_threshold(const ScenarioParams& s);

// Smallest number of consecutive clicks (from x0) that pushes the opinion
// out of the tolerance band, or nullopt when even infinitely many cannot.
std::optional<int> min_clicks_to_deviate(const ScenarioParams& s);

// Smallest number of consecutive skips that brings the expected opinion
// back inside the band from the deepest excursion reachable in K steps.
int min_skips_to_return(const ScenarioParams& s);

// Whether the tolerance band can be escaped at all, and whether one skip
// re-enters it from the farthest point. The two conditions agree for most
// parameters; both are exposed because they bracket the adaptive policy's
// qualitative behavior.
struct ReachabilityReport {
    double max_allclick_drift = 0.0;  // sup over m of the m-click excursion
    bool threshold_reachable = false;    // max_allclick_drift >= delta
    bool one_skip_reentry = false;       // b * |u0 - x0| < delta
    bool conditions_agree = false;
    bool degenerate_zeta = false;        // zeta == 1: clicks never move opinion
};

ReachabilityReport reachability(const ScenarioParams& s);

// Sufficient condition for the adaptive policy to beat the fixed policy in
// expected utility at horizon K, with the intermediate bounds it is built
// from. Throws applicability_error when the construction does not apply
// (no reduction possible, band unreachable, horizon too short, or the drift
// bound comes out vacuous).
struct AdaptiveAdvantageBound {
    int min_deviation_clicks = 0;      // consecutive clicks to leave the band
    int min_return_skips = 0;          // consecutive skips to re-enter it
    double click_rate_lower_bound = 0; // expected click rate under maximal reductions
    double fixed_policy_drift = 0;     // |E[X_K] - x0| with no reductions
    double one_reduction_opinion = 0;  // E[X_K] when a single late reduction occurs
    double single_deviation_prob = 0;  // chance of the deviate-once-then-withdraw path
    double drift_upper_bound = 0;      // drift bound given at least one reduction
    double lambda_threshold = 0;       // adaptive wins in expectation below this
};

AdaptiveAdvantageBound adaptive_advantage_bound(const ScenarioParams& s);

}  // namespace drift
