#pragma once
// Command implementations behind the CLI: each writes CSV/JSON outputs plus
// a manifest into an output directory and returns a process exit code
// (0 success, 3 when --strict analytics hit an inapplicable closed form;
// config errors throw and are mapped to exit code 2 by the front end).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "drift/montecarlo.hpp"
#include "drift/population.hpp"

namespace drift {

struct CommandOptions {
    std::filesystem::path out_dir = "out";
    int workers = 1;
};

// Flag carrier for CLI overrides applied on top of config files or canned
// figure parameters.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<int> horizon;
};

ExperimentConfig apply(const Overrides& o, ExperimentConfig c);
PopulationConfig apply(const Overrides& o, PopulationConfig c);

// Closed-form report for one scenario, with applicability flags instead of
// exceptions. probe_ks selects where the expected-opinion curve is tabulated.
nlohmann::json analytic_report(const ScenarioParams& s, const RewardSpec& r,
                               const std::vector<int>& probe_ks);

// Steps 1, 10, 100, ... up to and including the horizon.
std::vector<int> default_probe_steps(int horizon);

int cmd_analytic(const ScenarioParams& s, const RewardSpec& r,
                 const std::vector<int>& probe_ks, bool strict,
                 const CommandOptions& opt);
int cmd_simulate(const ExperimentConfig& c, const CommandOptions& opt);
int cmd_enumerate(const ExperimentConfig& c, const CommandOptions& opt);
int cmd_population(const PopulationConfig& c, const CommandOptions& opt);
int cmd_couple(const ExperimentConfig& c, const std::vector<int>& schedule_a,
               const std::vector<int>& schedule_b, const CommandOptions& opt);
int cmd_reproduce(const std::string& figure, const Overrides& o,
                  const CommandOptions& opt);

// Canned experiment setups used by `reproduce` and the test suite.
PopulationConfig fig1_config(int horizon);
ExperimentConfig fig2_config(AgentPolicyKind kind);
ScenarioParams fig3_scenario(double alpha, double x0);
ExperimentConfig fig3_experiment(const ScenarioParams& s, double lambda,
                                 long trials, std::uint64_t seed);
ExperimentConfig fig4_config(AgentPolicyKind kind);

// One row of the fig3 sweep: the computed threshold at this grid point and
// the paired Monte Carlo utility difference probed just below it.
struct SweepPoint {
    std::string param;
    double value = 0.0;
    double lambda_star = 0.0;
    double mean_utility_diff = 0.0;
    double se_utility_diff = 0.0;
};

// Grid points whose threshold construction is inapplicable are skipped.
std::vector<SweepPoint> fig3_sweep(const std::string& param, long trials,
                                   std::uint64_t seed, int workers);

}  // namespace drift
