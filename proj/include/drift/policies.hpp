#pragma once
// Clicking policies for the agent and recommendation policies for the
// platform. Policy state is owned per trajectory and mutated in place as the
// simulation advances.

#include <optional>
#include <vector>

#include "drift/dynamics.hpp"
#include "drift/sampling.hpp"

namespace drift {

// fixed: click probability stays at gamma0 forever.
// adaptive: gamma is divided by kappa each time the *next* opinion leaves the
//   tolerance band |x - x0| >= delta; the reduced value governs the next
//   click draw, not the one that caused the excursion.
// forced: gamma is divided by kappa at the listed steps regardless of the
//   opinion path (used for coupling experiments).
enum class AgentPolicyKind { fixed, adaptive, forced };

struct AgentPolicyConfig {
    AgentPolicyKind kind = AgentPolicyKind::fixed;
    double gamma0 = 1.0;
    double kappa = 1.0;          // reduction factor, > 1 for adaptive/forced
    double delta = 0.0;          // tolerance band half-width, adaptive only
    std::vector<int> schedule;   // strictly increasing step indices, forced only
};

void validate(const AgentPolicyConfig& c, int horizon);

struct AgentPolicyState {
    double gamma = 1.0;
    int reductions = 0;
};

AgentPolicyState make_agent_state(const AgentPolicyConfig& c);

// Probability that the agent clicks at the current step.
double agent_click_probability(const AgentPolicyState& s);

// Advances policy state after the dynamics produced x_{k_next}. For the
// adaptive kind the comparison uses the freshly updated opinion, so a click
// at step k that pushes x_{k+1} out of the band reduces the probability
// governing the click at step k+1.
void agent_policy_advance(AgentPolicyState& s, const AgentPolicyConfig& c,
                          double x_next, double x0, int k_next);

// fixed: always recommend u0.
// explore: steps with k % period == 0 (including k = 0) draw a fresh
//   recommendation from the exploration distribution; other steps replay the
//   clicked recommendation with the highest observed reward, breaking ties
//   toward the earliest, falling back to the most recent recommendation when
//   nothing was clicked yet.
enum class PlatformPolicyKind { fixed, explore };

struct PlatformPolicyConfig {
    PlatformPolicyKind kind = PlatformPolicyKind::fixed;
    double u0 = 0.0;
    int period = 1;  // explore only, >= 1
    SamplingSpec exploration = SamplingSpec::uniform_on(-1.0, 1.0);
};

void validate(const PlatformPolicyConfig& c);

struct PlatformObservation {
    double recommendation = 0.0;
    bool clicked = false;
    double reward = 0.0;  // 0 when not clicked
};

struct PlatformPolicyState {
    std::vector<PlatformObservation> history;
    std::optional<std::size_t> best = {};  // index of highest-reward click
};

double platform_recommend(const PlatformPolicyState& s,
                          const PlatformPolicyConfig& c, int k,
                          UniformStream& exploration);

void platform_observe(PlatformPolicyState& s, double recommendation,
                      bool clicked, double reward);

}  // namespace drift
