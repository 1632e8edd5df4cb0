#include "drift/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "drift/analytics.hpp"
#include "drift/io.hpp"
#include "drift/parallel.hpp"

namespace drift {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 1;
constexpr double kFig3Epsilon = 0.02;
constexpr int kHistogramBins = 50;

const char* policy_name(AgentPolicyKind k) {
    switch (k) {
    case AgentPolicyKind::fixed: return "fixed";
    case AgentPolicyKind::adaptive: return "adaptive";
    case AgentPolicyKind::forced: return "forced";
    }
    return "?";
}

void append_row(std::string& out, std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first) out += ',';
        out += c;
        first = false;
    }
    out += '\n';
}

std::string series_csv(
    const std::vector<std::pair<std::string, const SeriesEstimate*>>& blocks) {
    std::string out =
        "k,policy,mean_opinion,se_opinion,mean_utility,se_utility,"
        "mean_payoff,se_payoff,mean_gamma,se_gamma\n";
    for (const auto& [name, est] : blocks) {
        for (int k = 0; k <= est->horizon; ++k) {
            const auto i = static_cast<std::size_t>(k);
            append_row(out, {std::to_string(k), name,
                             format_number(est->mean_opinion[i]),
                             format_number(est->se_opinion[i]),
                             format_number(est->mean_utility[i]),
                             format_number(est->se_utility[i]),
                             format_number(est->mean_payoff[i]),
                             format_number(est->se_payoff[i]),
                             format_number(est->mean_gamma[i]),
                             format_number(est->se_gamma[i])});
        }
    }
    return out;
}

std::string exact_csv(const ExactSeries& ex) {
    std::string out = "k,exact_opinion,exact_utility,exact_payoff,exact_click_prob\n";
    for (int k = 0; k <= ex.horizon; ++k) {
        const auto i = static_cast<std::size_t>(k);
        append_row(out, {std::to_string(k), format_number(ex.opinion[i]),
                         format_number(ex.utility[i]), format_number(ex.payoff[i]),
                         format_number(ex.gamma[i])});
    }
    return out;
}

std::string population_csv(const PopulationResult& res) {
    std::string out = "agent_index,x0,u0,final_fixed,final_adaptive\n";
    for (std::size_t i = 0; i < res.innate.size(); ++i) {
        append_row(out, {std::to_string(i), format_number(res.innate[i]),
                         format_number(res.recommendation[i]),
                         format_number(res.final_fixed[i]),
                         format_number(res.final_adaptive[i])});
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
    std::string out = "sweep_param,sweep_value,lambda_star,mean_utility_diff,"
                      "se_utility_diff\n";
    for (const auto& p : points) {
        append_row(out, {p.param, format_number(p.value), format_number(p.lambda_star),
                         format_number(p.mean_utility_diff),
                         format_number(p.se_utility_diff)});
    }
    return out;
}

json histogram_json(const std::vector<double>& samples) {
    json a = json::array();
    for (long c : histogram(samples, kHistogramBins)) a.push_back(c);
    return a;
}

}  // namespace

ExperimentConfig apply(const Overrides& o, ExperimentConfig c) {
    if (o.seed) c.master_seed = *o.seed;
    if (o.trials) c.trials = *o.trials;
    if (o.horizon) c.scenario.horizon = *o.horizon;
    return c;
}

PopulationConfig apply(const Overrides& o, PopulationConfig c) {
    if (o.seed) c.master_seed = *o.seed;
    if (o.trials) c.num_agents = *o.trials;
    if (o.horizon) c.horizon = *o.horizon;
    return c;
}

std::vector<int> default_probe_steps(int horizon) {
    std::vector<int> ks;
    for (long k = 1; k < horizon; k *= 10) ks.push_back(static_cast<int>(k));
    ks.push_back(horizon);
    return ks;
}

json analytic_report(const ScenarioParams& s, const RewardSpec& r,
                     const std::vector<int>& probe_ks) {
    validate(s);
    validate(r);
    json rep;
    {
        json curve = json::array();
        for (int k : probe_ks) {
            if (k < 0 || k > s.horizon)
                throw std::invalid_argument("analytic: probe step " + std::to_string(k) +
                                            " outside [0," + std::to_string(s.horizon) +
                                            "]");
            curve.push_back({{"k", k}, {"value", expected_opinion_fixed(k, s)}});
        }
        rep["expected_opinion_fixed"] = curve;
    }
    rep["opinion_recursion_rate"] = opinion_recursion_rate(s);
    rep["limit_opinion_fixed"] = limit_opinion_fixed(s);

    const AdaptiveLimit al = limit_opinion_adaptive(s);
    rep["limit_opinion_adaptive"] = {{"threshold_reachable", al.threshold_reachable},
                                     {"coincides_with_fixed", !al.threshold_reachable},
                                     {"value", al.value}};

    try {
        const LimitUtilities lu = limit_utilities(s, r);
        rep["limit_utilities"] = {{"applicable", true},
                                  {"fixed", lu.fixed_policy},
                                  {"adaptive", lu.adaptive_policy}};
    } catch (const applicability_error& e) {
        rep["limit_utilities"] = {{"applicable", false}, {"reason", e.what()}};
    }

    try {
        rep["longrun_lambda_threshold"] = {{"applicable", true},
                                           {"value", longrun_lambda_threshold(s)}};
    } catch (const applicability_error& e) {
        rep["longrun_lambda_threshold"] = {{"applicable", false}, {"reason", e.what()}};
    }

    if (const auto m = min_clicks_to_deviate(s))
        rep["min_clicks_to_deviate"] = *m;
    else
        rep["min_clicks_to_deviate"] = "unreachable";
    rep["min_skips_to_return"] = min_skips_to_return(s);

    const ReachabilityReport reach = reachability(s);
    rep["reachability"] = {{"max_allclick_drift", reach.max_allclick_drift},
                           {"threshold_reachable", reach.threshold_reachable},
                           {"one_skip_reentry", reach.one_skip_reentry},
                           {"conditions_agree", reach.conditions_agree},
                           {"degenerate_zeta", reach.degenerate_zeta}};

    try {
        const AdaptiveAdvantageBound b = adaptive_advantage_bound(s);
        rep["advantage_bound"] = {{"applicable", true},
                                  {"min_deviation_clicks", b.min_deviation_clicks},
                                  {"min_return_skips", b.min_return_skips},
                                  {"click_rate_lower_bound", b.click_rate_lower_bound},
                                  {"fixed_policy_drift", b.fixed_policy_drift},
                                  {"one_reduction_opinion", b.one_reduction_opinion},
                                  {"single_deviation_prob", b.single_deviation_prob},
                                  {"drift_upper_bound", b.drift_upper_bound},
                                  {"lambda_threshold", b.lambda_threshold}};
    } catch (const applicability_error& e) {
        rep["advantage_bound"] = {{"applicable", false}, {"reason", e.what()}};
    }
    return rep;
}

namespace {

bool section_applicable(const json& rep, const char* key) {
    return rep.at(key).value("applicable", true);
}

void print_analytic(const json& rep) {
    std::cout << "expected opinion under the fixed policy:\n";
    for (const auto& pt : rep.at("expected_opinion_fixed"))
        std::cout << "  k=" << pt.at("k").get<int>() << "  "
                  << format_number(pt.at("value").get<double>()) << "\n";
    std::cout << "limit opinion (fixed): "
              << format_number(rep.at("limit_opinion_fixed").get<double>()) << "\n";
    const auto& al = rep.at("limit_opinion_adaptive");
    std::cout << "limit opinion (adaptive): "
              << format_number(al.at("value").get<double>())
              << (al.at("coincides_with_fixed").get<bool>()
                      ? "  [band unreachable: coincides with fixed]"
                      : "")
              << "\n";
    const auto& lu = rep.at("limit_utilities");
    if (lu.at("applicable").get<bool>())
        std::cout << "limit utilities: fixed "
                  << format_number(lu.at("fixed").get<double>()) << ", adaptive "
                  << format_number(lu.at("adaptive").get<double>()) << "\n";
    else
        std::cout << "limit utilities: inapplicable (" << lu.at("reason").get<std::string>()
                  << ")\n";
    const auto& lt = rep.at("longrun_lambda_threshold");
    if (lt.at("applicable").get<bool>())
        std::cout << "long-run lambda threshold: "
                  << format_number(lt.at("value").get<double>()) << "\n";
    else
        std::cout << "long-run lambda threshold: inapplicable ("
                  << lt.at("reason").get<std::string>() << ")\n";
    std::cout << "min clicks to deviate: ";
    if (rep.at("min_clicks_to_deviate").is_string())
        std::cout << "unreachable\n";
    else
        std::cout << rep.at("min_clicks_to_deviate").get<int>() << "\n";
    std::cout << "min skips to return: " << rep.at("min_skips_to_return").get<int>()
              << "\n";
    const auto& b = rep.at("advantage_bound");
    if (b.at("applicable").get<bool>())
        std::cout << "finite-horizon advantage bound: lambda below "
                  << format_number(b.at("lambda_threshold").get<double>())
                  << " favors the adaptive policy\n";
    else
        std::cout << "finite-horizon advantage bound: inapplicable ("
                  << b.at("reason").get<std::string>() << ")\n";
}

}  // namespace

int cmd_analytic(const ScenarioParams& s, const RewardSpec& r,
                 const std::vector<int>& probe_ks, bool strict,
                 const CommandOptions& opt) {
    const json rep = analytic_report(s, r, probe_ks);
    fs::create_directories(opt.out_dir);
    write_json_file(opt.out_dir / "report.json", rep);
    print_analytic(rep);
    std::cout << "wrote " << (opt.out_dir / "report.json").string() << "\n";
    const bool all_ok = section_applicable(rep, "limit_utilities") &&
                        section_applicable(rep, "longrun_lambda_threshold") &&
                        section_applicable(rep, "advantage_bound");
    if (strict && !all_ok) {
        std::cerr << "analytic: at least one requested closed form is inapplicable "
                     "(see report.json)\n";
        return 3;
    }
    return 0;
}

int cmd_simulate(const ExperimentConfig& c, const CommandOptions& opt) {
    const SeriesEstimate est = run_experiment(c, opt.workers);
    fs::create_directories(opt.out_dir);
    write_text_file(opt.out_dir / "series.csv",
                    series_csv({{policy_name(c.agent.kind), &est}}));
    write_json_file(opt.out_dir / "manifest.json",
                    make_manifest("simulate", to_json(c), c.master_seed, opt.workers,
                                  {"series.csv"}));
    std::cout << "wrote " << (opt.out_dir / "series.csv").string() << " (" << c.trials
              << " trials, horizon " << c.scenario.horizon << ")\n";
    return 0;
}

int cmd_enumerate(const ExperimentConfig& c, const CommandOptions& opt) {
    const ExactSeries ex = enumerate_exact(c);
    fs::create_directories(opt.out_dir);
    write_text_file(opt.out_dir / "enumerate.csv", exact_csv(ex));
    json manifest = make_manifest("enumerate", to_json(c), c.master_seed, opt.workers,
                                  {"enumerate.csv"});
    if (c.agent.kind == AgentPolicyKind::fixed) {
        double worst = 0.0;
        for (int k = 0; k <= ex.horizon; ++k)
            worst = std::max(worst,
                             std::abs(ex.opinion[static_cast<std::size_t>(k)] -
                                      expected_opinion_fixed(k, c.scenario)));
        manifest["summary"]["max_abs_opinion_discrepancy"] = worst;
        std::cout << "max |exact - closed form| over k: " << format_number(worst)
                  << "\n";
    }
    write_json_file(opt.out_dir / "manifest.json", manifest);
    std::cout << "wrote " << (opt.out_dir / "enumerate.csv").string() << "\n";
    return 0;
}

int cmd_population(const PopulationConfig& c, const CommandOptions& opt) {
    const PopulationResult res = run_population(c, opt.workers);
    fs::create_directories(opt.out_dir);
    write_text_file(opt.out_dir / "population.csv", population_csv(res));

    const double w_fixed = wasserstein1(res.final_fixed, res.innate);
    const double w_adaptive = wasserstein1(res.final_adaptive, res.innate);
    json summary;
    summary["num_agents"] = c.num_agents;
    summary["wasserstein_fixed_vs_innate"] = w_fixed;
    summary["wasserstein_adaptive_vs_innate"] = w_adaptive;
    summary["histogram_bins"] = kHistogramBins;
    summary["histogram_range"] = {-1.0, 1.0};
    summary["histogram_innate"] = histogram_json(res.innate);
    summary["histogram_final_fixed"] = histogram_json(res.final_fixed);
    summary["histogram_final_adaptive"] = histogram_json(res.final_adaptive);
    write_json_file(opt.out_dir / "summary.json", summary);

    json manifest = make_manifest("population", to_json(c), c.master_seed, opt.workers,
                                  {"population.csv", "summary.json"});
    manifest["summary"] = {{"wasserstein_fixed_vs_innate", w_fixed},
                           {"wasserstein_adaptive_vs_innate", w_adaptive}};
    write_json_file(opt.out_dir / "manifest.json", manifest);
    std::cout << "wasserstein to innates: fixed " << format_number(w_fixed)
              << ", adaptive " << format_number(w_adaptive) << "\n";
    std::cout << "wrote " << (opt.out_dir / "population.csv").string() << "\n";
    return 0;
}

int cmd_couple(const ExperimentConfig& c, const std::vector<int>& schedule_a,
               const std::vector<int>& schedule_b, const CommandOptions& opt) {
    const long n = c.trials;
    const int big_k = c.scenario.horizon;
    struct Row {
        double rate_a, rate_b, drift_a, drift_b;
        bool click_dom, drift_dom;
    };
    std::vector<Row> rows(static_cast<std::size_t>(n));
    parallel_for(n, opt.workers, [&](long i) {
        const auto [ta, tb] =
            run_coupled_pair(c, schedule_a, schedule_b, static_cast<std::uint64_t>(i));
        Row row{};
        long clicks_a = 0, clicks_b = 0;
        bool click_dom = true;
        for (int k = 0; k < big_k; ++k) {
            const auto idx = static_cast<std::size_t>(k);
            clicks_a += ta.clicks[idx];
            clicks_b += tb.clicks[idx];
            if (tb.clicks[idx] > ta.clicks[idx]) click_dom = false;
        }
        row.rate_a = static_cast<double>(clicks_a) / big_k;
        row.rate_b = static_cast<double>(clicks_b) / big_k;
        row.drift_a = std::abs(ta.opinions.back() - c.scenario.x0);
        row.drift_b = std::abs(tb.opinions.back() - c.scenario.x0);
        row.click_dom = click_dom;
        row.drift_dom = row.drift_b <= row.drift_a;
        rows[static_cast<std::size_t>(i)] = row;
    });

    std::string csv = "trial,click_rate_a,click_rate_b,final_drift_a,final_drift_b,"
                      "click_dominance,drift_dominance\n";
    double sum_rate_a = 0, sum_rate_b = 0, sum_drift_a = 0, sum_drift_b = 0;
    long click_violations = 0, drift_violations = 0;
    for (long i = 0; i < n; ++i) {
        const Row& row = rows[static_cast<std::size_t>(i)];
        sum_rate_a += row.rate_a;
        sum_rate_b += row.rate_b;
        sum_drift_a += row.drift_a;
        sum_drift_b += row.drift_b;
        if (!row.click_dom) ++click_violations;
        if (!row.drift_dom) ++drift_violations;
        append_row(csv, {std::to_string(i), format_number(row.rate_a),
                         format_number(row.rate_b), format_number(row.drift_a),
                         format_number(row.drift_b), row.click_dom ? "1" : "0",
                         row.drift_dom ? "1" : "0"});
    }

    fs::create_directories(opt.out_dir);
    write_text_file(opt.out_dir / "couple.csv", csv);
    json cfg = to_json(c);
    cfg["schedule_a"] = schedule_a;
    cfg["schedule_b"] = schedule_b;
    json manifest = make_manifest("couple", cfg, c.master_seed, opt.workers,
                                  {"couple.csv"});
    manifest["summary"] = {{"mean_click_rate_a", sum_rate_a / n},
                           {"mean_click_rate_b", sum_rate_b / n},
                           {"mean_drift_a", sum_drift_a / n},
                           {"mean_drift_b", sum_drift_b / n},
                           {"click_dominance_violations", click_violations},
                           {"drift_dominance_violations", drift_violations}};
    write_json_file(opt.out_dir / "manifest.json", manifest);
    std::cout << "dominance violations: clicks " << click_violations << ", drift "
              << drift_violations << " (over " << n << " coupled trials)\n";
    std::cout << "wrote " << (opt.out_dir / "couple.csv").string() << "\n";
    return 0;
}

PopulationConfig fig1_config(int horizon) {
    PopulationConfig c;
    c.params = make_dynamics(0.3, 0.2);
    c.gamma0 = 0.6;
    c.kappa = 1.2;
    c.delta = 0.2;
    c.horizon = horizon;
    c.num_agents = 10000;
    c.innate = SamplingSpec::uniform_on(-1.0, 1.0);
    c.recommendation = SamplingSpec::gaussian_of(0.0, 0.5, Truncation::clip);
    c.master_seed = kDefaultSeed;
    return c;
}

ExperimentConfig fig2_config(AgentPolicyKind kind) {
    ExperimentConfig c;
    c.scenario.params = make_dynamics(0.4, 0.2);
    c.scenario.x0 = -1.0;
    c.scenario.u0 = 1.0;
    c.scenario.gamma0 = 0.9;
    c.scenario.kappa = 1.2;
    c.scenario.delta = 0.3;
    c.scenario.lambda = 0.5;
    c.scenario.horizon = 1000;
    c.reward.d = 0.1;
    c.agent.kind = kind;
    c.agent.gamma0 = c.scenario.gamma0;
    c.agent.kappa = c.scenario.kappa;
    c.agent.delta = c.scenario.delta;
    c.platform.kind = PlatformPolicyKind::fixed;
    c.platform.u0 = c.scenario.u0;
    c.trials = 1000;
    c.master_seed = kDefaultSeed;
    return c;
}

ScenarioParams fig3_scenario(double alpha, double x0) {
    ScenarioParams s;
    s.params = make_dynamics(alpha, 0.2);
    s.x0 = x0;
    s.u0 = 1.0;
    s.gamma0 = 0.9;
    s.kappa = 1.2;
    s.delta = 0.3;
    s.lambda = 0.5;  // placeholder; the sweep probes just below the threshold
    s.horizon = 5;
    return s;
}

ExperimentConfig fig3_experiment(const ScenarioParams& s, double lambda, long trials,
                                 std::uint64_t seed) {
    ExperimentConfig c;
    c.scenario = s;
    c.scenario.lambda = lambda;
    c.reward.d = 0.0;
    c.agent.kind = AgentPolicyKind::adaptive;
    c.agent.gamma0 = s.gamma0;
    c.agent.kappa = s.kappa;
    c.agent.delta = s.delta;
    c.platform.kind = PlatformPolicyKind::fixed;
    c.platform.u0 = s.u0;
    c.trials = trials;
    c.master_seed = seed;
    return c;
}

ExperimentConfig fig4_config(AgentPolicyKind kind) {
    ExperimentConfig c;
    c.scenario.params = make_dynamics(0.4, 0.2);
    c.scenario.x0 = -1.0;
    c.scenario.u0 = 1.0;
    c.scenario.gamma0 = 0.9;
    c.scenario.kappa = 1.05;
    c.scenario.delta = 0.3;
    c.scenario.lambda = 0.2;
    c.scenario.horizon = 40;
    c.reward.d = 0.1;
    c.agent.kind = kind;
    c.agent.gamma0 = c.scenario.gamma0;
    c.agent.kappa = c.scenario.kappa;
    c.agent.delta = c.scenario.delta;
    c.platform.kind = PlatformPolicyKind::explore;
    c.platform.u0 = c.scenario.u0;
    c.platform.period = 5;
    c.platform.exploration = SamplingSpec::uniform_on(-1.0, 1.0);
    c.trials = 1000;
    c.master_seed = kDefaultSeed;
    return c;
}

std::vector<SweepPoint> fig3_sweep(const std::string& param, long trials,
                                   std::uint64_t seed, int workers) {
    std::vector<SweepPoint> out;
    auto add_point = [&](double value, double alpha, double x0) {
        const ScenarioParams s = fig3_scenario(alpha, x0);
        AdaptiveAdvantageBound bound;
        try {
            bound = adaptive_advantage_bound(s);
        } catch (const applicability_error&) {
            return;  // grid point skipped: the threshold construction fails here
        }
        const double lambda = bound.lambda_threshold - kFig3Epsilon;
        if (lambda < 0.0 || lambda > 1.0) return;
        const ExperimentConfig cfg = fig3_experiment(s, lambda, trials, seed);
        const PairedDiff diff = adaptive_vs_fixed_utility(cfg, s.horizon, workers);
        out.push_back({param, value, bound.lambda_threshold, diff.mean, diff.se});
    };
    if (param == "alpha") {
        for (int i = 0; i <= 12; ++i) {
            const double alpha = 0.2 + 0.05 * i;  // spans [beta, 1 - beta]
            add_point(alpha, alpha, -1.0);
        }
    } else if (param == "x0") {
        for (int i = 0; i <= 20; ++i) {
            const double x0 = -1.0 + 0.1 * i;
            add_point(x0, 0.3, x0);
        }
    } else {
        throw std::invalid_argument("fig3 sweep: parameter must be 'alpha' or 'x0'");
    }
    return out;
}

int cmd_reproduce(const std::string& figure, const Overrides& o,
                  const CommandOptions& opt) {
    fs::create_directories(opt.out_dir);
    if (figure == "fig1") {
        if (o.horizon)
            throw std::invalid_argument("reproduce fig1: --horizon unsupported "
                                        "(the figure runs K=10 and K=100)");
        json cfg_echo;
        std::vector<std::string> outputs;
        for (int horizon : {10, 100}) {
            const PopulationConfig c = apply(o, fig1_config(horizon));
            const PopulationResult res = run_population(c, opt.workers);
            const std::string tag = "fig1_k" + std::to_string(horizon);
            write_text_file(opt.out_dir / (tag + "_population.csv"),
                            population_csv(res));
            json summary;
            summary["num_agents"] = c.num_agents;
            summary["wasserstein_fixed_vs_innate"] =
                wasserstein1(res.final_fixed, res.innate);
            summary["wasserstein_adaptive_vs_innate"] =
                wasserstein1(res.final_adaptive, res.innate);
            summary["histogram_bins"] = kHistogramBins;
            summary["histogram_range"] = {-1.0, 1.0};
            summary["histogram_innate"] = histogram_json(res.innate);
            summary["histogram_final_fixed"] = histogram_json(res.final_fixed);
            summary["histogram_final_adaptive"] = histogram_json(res.final_adaptive);
            write_json_file(opt.out_dir / (tag + "_summary.json"), summary);
            outputs.push_back(tag + "_population.csv");
            outputs.push_back(tag + "_summary.json");
            cfg_echo["k" + std::to_string(horizon)] = to_json(c);
            std::cout << tag << ": wasserstein fixed "
                      << format_number(summary["wasserstein_fixed_vs_innate"].get<double>())
                      << ", adaptive "
                      << format_number(
                             summary["wasserstein_adaptive_vs_innate"].get<double>())
                      << "\n";
        }
        const std::uint64_t seed = o.seed.value_or(kDefaultSeed);
        write_json_file(opt.out_dir / "manifest.json",
                        make_manifest("reproduce fig1", cfg_echo, seed, opt.workers,
                                      outputs));
        return 0;
    }
    if (figure == "fig2" || figure == "fig4") {
        const bool is_fig2 = figure == "fig2";
        const ExperimentConfig base = is_fig2 ? fig2_config(AgentPolicyKind::fixed)
                                              : fig4_config(AgentPolicyKind::fixed);
        const ExperimentConfig cf = apply(o, base);
        ExperimentConfig ca = cf;
        ca.agent.kind = AgentPolicyKind::adaptive;
        const SeriesEstimate ef = run_experiment(cf, opt.workers);
        const SeriesEstimate ea = run_experiment(ca, opt.workers);
        const std::string name = figure + "_series.csv";
        write_text_file(opt.out_dir / name,
                        series_csv({{"fixed", &ef}, {"adaptive", &ea}}));
        json cfg_echo;
        cfg_echo["fixed"] = to_json(cf);
        cfg_echo["adaptive"] = to_json(ca);
        write_json_file(opt.out_dir / "manifest.json",
                        make_manifest("reproduce " + figure, cfg_echo, cf.master_seed,
                                      opt.workers, {name}));
        std::cout << "wrote " << (opt.out_dir / name).string() << "\n";
        return 0;
    }
    if (figure == "fig3") {
        if (o.horizon)
            throw std::invalid_argument("reproduce fig3: --horizon unsupported "
                                        "(the sweep is defined at K=5)");
        const long trials = o.trials.value_or(5000);
        const std::uint64_t seed = o.seed.value_or(kDefaultSeed);
        std::vector<SweepPoint> points = fig3_sweep("alpha", trials, seed, opt.workers);
        const std::vector<SweepPoint> x0_points =
            fig3_sweep("x0", trials, seed, opt.workers);
        points.insert(points.end(), x0_points.begin(), x0_points.end());
        write_text_file(opt.out_dir / "fig3_sweep.csv", sweep_csv(points));
        json cfg_echo;
        cfg_echo["trials"] = trials;
        cfg_echo["seed"] = seed;
        cfg_echo["epsilon_below_threshold"] = kFig3Epsilon;
        cfg_echo["grids"] = {{"alpha", "0.2..0.8 step 0.05, x0=-1"},
                             {"x0", "-1..1 step 0.1, alpha=0.3"}};
        json manifest = make_manifest("reproduce fig3", cfg_echo, seed, opt.workers,
                                      {"fig3_sweep.csv"});
        manifest["summary"]["points"] = points.size();
        write_json_file(opt.out_dir / "manifest.json", manifest);
        std::cout << "wrote " << (opt.out_dir / "fig3_sweep.csv").string() << " ("
                  << points.size() << " sweep points)\n";
        return 0;
    }
    throw std::invalid_argument("reproduce: unknown figure '" + figure +
                                "' (expected fig1, fig2, fig3 or fig4)");
}

}  // namespace drift
