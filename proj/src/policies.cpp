#include "drift/policies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace drift {

void validate(const AgentPolicyConfig& c, int horizon) {
    if (!(c.gamma0 >= 0.0) || !(c.gamma0 <= 1.0))
        throw std::invalid_argument("agent policy: gamma0 must lie in [0,1]");
    switch (c.kind) {
    case AgentPolicyKind::fixed:
        return;
    case AgentPolicyKind::adaptive:
        if (!(c.kappa > 1.0))
            throw std::invalid_argument("agent policy: adaptive kappa must exceed 1");
        if (!(c.delta > 0.0))
            throw std::invalid_argument("agent policy: adaptive delta must be positive");
        return;
    case AgentPolicyKind::forced: {
        if (!(c.kappa > 1.0))
            throw std::invalid_argument("agent policy: forced kappa must exceed 1");
        int prev = 0;
        for (int k : c.schedule) {
            if (k <= prev)
                throw std::invalid_argument("agent policy: schedule must be strictly "
                                            "increasing step indices >= 1");
            if (k > horizon)
                throw std::invalid_argument("agent policy: schedule entry " +
                                            std::to_string(k) + " exceeds horizon " +
                                            std::to_string(horizon));
            prev = k;
        }
        return;
    }
    }
    throw std::invalid_argument("agent policy: unknown kind");
}

AgentPolicyState make_agent_state(const AgentPolicyConfig& c) {
    return AgentPolicyState{c.gamma0, 0};
}

double agent_click_probability(const AgentPolicyState& s) { return s.gamma; }

void agent_policy_advance(AgentPolicyState& s, const AgentPolicyConfig& c,
                          double x_next, double x0, int k_next) {
    switch (c.kind) {
    case AgentPolicyKind::fixed:
        return;
    case AgentPolicyKind::adaptive:
        if (std::abs(x_next - x0) >= c.delta) {
            s.gamma /= c.kappa;
            ++s.reductions;
        }
        return;
    case AgentPolicyKind::forced:
        if (std::binary_search(c.schedule.begin(), c.schedule.end(), k_next)) {
            s.gamma /= c.kappa;
            ++s.reductions;
        }
        return;
    }
}

void validate(const PlatformPolicyConfig& c) {
    if (!(c.u0 >= -1.0) || !(c.u0 <= 1.0))
        throw std::invalid_argument("platform policy: u0 must lie in [-1,1]");
    if (c.kind == PlatformPolicyKind::explore) {
        if (c.period < 1)
            throw std::invalid_argument("platform policy: explore period must be >= 1");
        validate(c.exploration);
    }
}

double platform_recommend(const PlatformPolicyState& s,
                          const PlatformPolicyConfig& c, int k,
                          UniformStream& exploration) {
    if (c.kind == PlatformPolicyKind::fixed) return c.u0;
    if (k % c.period == 0) return sample(c.exploration, exploration);
    if (s.best) return s.history[*s.best].recommendation;
    // nothing clicked yet: replay the latest attempt
    if (!s.history.empty()) return s.history.back().recommendation;
    return c.u0;
}

void platform_observe(PlatformPolicyState& s, double recommendation,
                      bool clicked, double reward) {
    PlatformObservation obs;
    obs.recommendation = recommendation;
    obs.clicked = clicked;
    obs.reward = clicked ? reward : 0.0;
    s.history.push_back(obs);
    if (clicked) {
        const std::size_t idx = s.history.size() - 1;
        if (!s.best || obs.reward > s.history[*s.best].reward) s.best = idx;
    }
}

}  // namespace drift
