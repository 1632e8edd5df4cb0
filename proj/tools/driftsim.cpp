// Command-line front end. Exit codes: 0 success, 2 configuration error,
// 3 a requested closed form is inapplicable (analytic --strict).

#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "drift/analytics.hpp"
#include "drift/commands.hpp"
#include "drift/io.hpp"

namespace {

std::vector<int> int_array(const nlohmann::json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end())
        throw std::invalid_argument(std::string("config: missing field '") + name + "'");
    if (!it->is_array())
        throw std::invalid_argument(std::string("config: field '") + name +
                                    "' must be an array of integers");
    std::vector<int> out;
    for (const auto& v : *it) {
        if (!v.is_number_integer())
            throw std::invalid_argument(std::string("config: field '") + name +
                                        "' must contain only integers");
        out.push_back(v.get<int>());
    }
    return out;
}

struct CommonArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<int> horizon;
    int workers = 1;
    std::string out = "out";
};

void add_common(CLI::App* cmd, CommonArgs& a, bool config_required) {
    auto* cfg = cmd->add_option("--config", a.config,
                                "JSON config file (a manifest also works)");
    cfg->check(CLI::ExistingFile);
    if (config_required) cfg->required();
    cmd->add_option("--seed", a.seed, "master seed override");
    cmd->add_option("--trials", a.trials, "trial count override (agents for population)");
    cmd->add_option("--horizon", a.horizon, "horizon override");
    cmd->add_option("--workers", a.workers, "worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", a.out, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulator and analytic toolkit for the feedback loop between a "
                 "recommendation platform and a reactive user"};
    app.require_subcommand(1);

    CommonArgs args;
    std::vector<int> probe_steps;
    bool strict = false;
    std::string figure;

    auto* ana = app.add_subcommand("analytic", "closed-form report for a scenario");
    add_common(ana, args, true);
    ana->add_option("--at", probe_steps,
                    "steps at which to tabulate the expected opinion")
        ->delimiter(',');
    ana->add_flag("--strict", strict, "exit 3 when any closed form is inapplicable");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo experiment -> series CSV");
    add_common(sim, args, true);

    auto* enu = app.add_subcommand("enumerate",
                                   "exact expectations over all click paths (K <= 16)");
    add_common(enu, args, true);

    auto* pop = app.add_subcommand("population",
                                   "many-agent comparison of fixed vs adaptive policies");
    add_common(pop, args, true);

    auto* cpl = app.add_subcommand("couple",
                                   "coupled forced-reduction pairs on shared draws");
    add_common(cpl, args, true);

    auto* rep = app.add_subcommand("reproduce", "canned experiment for fig1..fig4");
    rep->add_option("figure", figure, "one of fig1, fig2, fig3, fig4")->required();
    add_common(rep, args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const drift::CommandOptions opt{std::filesystem::path(args.out), args.workers};
        const drift::Overrides overrides{args.seed, args.trials, args.horizon};

        if (*ana) {
            const auto j = drift::unwrap_config(drift::load_json_file(args.config));
            const auto cfg = apply(overrides, drift::experiment_from_json(j));
            const auto ks = probe_steps.empty()
                                ? drift::default_probe_steps(cfg.scenario.horizon)
                                : probe_steps;
            return drift::cmd_analytic(cfg.scenario, cfg.reward, ks, strict, opt);
        }
        if (*sim) {
            const auto j = drift::unwrap_config(drift::load_json_file(args.config));
            return drift::cmd_simulate(apply(overrides, drift::experiment_from_json(j)),
                                       opt);
        }
        if (*enu) {
            const auto j = drift::unwrap_config(drift::load_json_file(args.config));
            return drift::cmd_enumerate(apply(overrides, drift::experiment_from_json(j)),
                                        opt);
        }
        if (*pop) {
            const auto j = drift::unwrap_config(drift::load_json_file(args.config));
            return drift::cmd_population(apply(overrides, drift::population_from_json(j)),
                                         opt);
        }
        if (*cpl) {
            auto j = drift::unwrap_config(drift::load_json_file(args.config));
            const auto sched_a = int_array(j, "schedule_a");
            const auto sched_b = int_array(j, "schedule_b");
            // the base agent policy is replaced by the two forced schedules,
            // so a coupling config does not need its own "schedule"
            if (j.value("agent_policy", "forced") == "forced" && !j.contains("schedule"))
                j["schedule"] = sched_a;
            const auto cfg = apply(overrides, drift::experiment_from_json(j));
            return drift::cmd_couple(cfg, sched_a, sched_b, opt);
        }
        if (*rep) return drift::cmd_reproduce(figure, overrides, opt);
        return 2;  // unreachable: require_subcommand(1)
    } catch (const drift::applicability_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
