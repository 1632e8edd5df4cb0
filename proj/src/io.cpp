#include "drift/io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace drift {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

const json& need(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) fail(std::string("config: missing field '") + name + "'");
    return *it;
}

double num_field(const json& j, const char* name) {
    const json& v = need(j, name);
    if (!v.is_number()) fail(std::string("config: field '") + name + "' must be a number");
    return v.get<double>();
}

double num_field(const json& j, const char* name, double fallback) {
    auto it = j.find(name);
    if (it == j.end()) return fallback;
    if (!it->is_number()) fail(std::string("config: field '") + name + "' must be a number");
    return it->get<double>();
}

long int_field(const json& j, const char* name, long fallback) {
    auto it = j.find(name);
    if (it == j.end()) return fallback;
    if (!it->is_number_integer())
        fail(std::string("config: field '") + name + "' must be an integer");
    return it->get<long>();
}

long int_field(const json& j, const char* name) {
    const json& v = need(j, name);
    if (!v.is_number_integer())
        fail(std::string("config: field '") + name + "' must be an integer");
    return v.get<long>();
}

std::uint64_t seed_field(const json& j, const char* name, std::uint64_t fallback) {
    auto it = j.find(name);
    if (it == j.end()) return fallback;
    if (!it->is_number_integer())
        fail(std::string("config: field '") + name + "' must be a non-negative integer");
    if (!it->is_number_unsigned() && it->get<long long>() < 0)
        fail(std::string("config: field '") + name + "' must be a non-negative integer");
    return it->get<std::uint64_t>();
}

std::string str_field(const json& j, const char* name, const std::string& fallback) {
    auto it = j.find(name);
    if (it == j.end()) return fallback;
    if (!it->is_string()) fail(std::string("config: field '") + name + "' must be a string");
    return it->get<std::string>();
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // normalizes -0
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v,
                                   std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("config: cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // translate the byte offset into line:column
        std::size_t line = 1, col = 1;
        const std::size_t stop = e.byte > 0 ? e.byte - 1 : 0;
        for (std::size_t i = 0; i < stop && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
             ": " + e.what());
    }
}

json unwrap_config(const json& j) {
    if (j.is_object() && j.contains("tool") && j.contains("config") &&
        j["config"].is_object())
        return j["config"];
    return j;
}

json to_json(const SamplingSpec& s) {
    json j;
    switch (s.kind) {
    case SampleKind::point:
        j["kind"] = "point";
        j["value"] = s.value;
        break;
    case SampleKind::uniform:
        j["kind"] = "uniform";
        j["lo"] = s.lo;
        j["hi"] = s.hi;
        break;
    case SampleKind::gaussian:
        j["kind"] = "gaussian";
        j["mean"] = s.mean;
        j["stddev"] = s.stddev;
        j["truncation"] = s.truncation == Truncation::clip ? "clip" : "reject";
        break;
    }
    return j;
}

SamplingSpec sampling_from_json(const json& j) {
    if (!j.is_object()) fail("config: sampling spec must be an object");
    const std::string kind = str_field(j, "kind", "");
    if (kind == "point") return SamplingSpec::point_at(num_field(j, "value"));
    if (kind == "uniform")
        return SamplingSpec::uniform_on(num_field(j, "lo", -1.0), num_field(j, "hi", 1.0));
    if (kind == "gaussian") {
        const std::string trunc = str_field(j, "truncation", "clip");
        if (trunc != "clip" && trunc != "reject")
            fail("config: sampling truncation must be 'clip' or 'reject'");
        return SamplingSpec::gaussian_of(num_field(j, "mean", 0.0),
                                         num_field(j, "stddev", 0.5),
                                         trunc == "clip" ? Truncation::clip
                                                         : Truncation::reject);
    }
    fail("config: sampling kind must be 'point', 'uniform' or 'gaussian'");
}

ExperimentConfig experiment_from_json(const json& j) {
    if (!j.is_object()) fail("config: expected a JSON object");
    ExperimentConfig c;
    c.scenario.params = make_dynamics(num_field(j, "alpha"), num_field(j, "beta"));
    c.scenario.x0 = num_field(j, "x0");
    c.scenario.u0 = num_field(j, "u0");
    c.scenario.gamma0 = num_field(j, "gamma0");
    c.scenario.kappa = num_field(j, "kappa", 1.0);
    c.scenario.delta = num_field(j, "delta", 0.1);
    c.scenario.lambda = num_field(j, "lambda", 0.5);
    c.scenario.horizon = static_cast<int>(int_field(j, "horizon"));
    c.reward.d = num_field(j, "reward_slope", 0.0);

    const std::string agent = str_field(j, "agent_policy", "fixed");
    if (agent == "fixed") {
        c.agent.kind = AgentPolicyKind::fixed;
    } else if (agent == "adaptive") {
        c.agent.kind = AgentPolicyKind::adaptive;
    } else if (agent == "forced") {
        c.agent.kind = AgentPolicyKind::forced;
        const json& sched = need(j, "schedule");
        if (!sched.is_array()) fail("config: field 'schedule' must be an array");
        for (const auto& v : sched) {
            if (!v.is_number_integer())
                fail("config: schedule entries must be integers");
            c.agent.schedule.push_back(v.get<int>());
        }
    } else {
        fail("config: agent_policy must be 'fixed', 'adaptive' or 'forced'");
    }
    c.agent.gamma0 = c.scenario.gamma0;
    c.agent.kappa = c.scenario.kappa;
    c.agent.delta = c.scenario.delta;

    const std::string platform = str_field(j, "platform_policy", "fixed");
    if (platform == "fixed") {
        c.platform.kind = PlatformPolicyKind::fixed;
        c.platform.u0 = c.scenario.u0;
    } else if (platform == "explore") {
        c.platform.kind = PlatformPolicyKind::explore;
        c.platform.u0 = c.scenario.u0;
        c.platform.period = static_cast<int>(int_field(j, "period", 1));
        if (j.contains("exploration"))
            c.platform.exploration = sampling_from_json(j["exploration"]);
    } else {
        fail("config: platform_policy must be 'fixed' or 'explore'");
    }

    c.trials = int_field(j, "trials", 1);
    c.master_seed = seed_field(j, "seed", 0);
    validate(c);
    return c;
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["alpha"] = c.scenario.params.alpha;
    j["beta"] = c.scenario.params.beta;
    j["x0"] = c.scenario.x0;
    j["u0"] = c.scenario.u0;
    j["gamma0"] = c.scenario.gamma0;
    j["kappa"] = c.scenario.kappa;
    j["delta"] = c.scenario.delta;
    j["lambda"] = c.scenario.lambda;
    j["horizon"] = c.scenario.horizon;
    j["reward_slope"] = c.reward.d;
    switch (c.agent.kind) {
    case AgentPolicyKind::fixed:
        j["agent_policy"] = "fixed";
        break;
    case AgentPolicyKind::adaptive:
        j["agent_policy"] = "adaptive";
        break;
    case AgentPolicyKind::forced:
        j["agent_policy"] = "forced";
        j["schedule"] = c.agent.schedule;
        break;
    }
    if (c.platform.kind == PlatformPolicyKind::fixed) {
        j["platform_policy"] = "fixed";
    } else {
        j["platform_policy"] = "explore";
        j["period"] = c.platform.period;
        j["exploration"] = to_json(c.platform.exploration);
    }
    j["trials"] = c.trials;
    j["seed"] = c.master_seed;
    return j;
}

PopulationConfig population_from_json(const json& j) {
    if (!j.is_object()) fail("config: expected a JSON object");
    PopulationConfig c;
    c.params = make_dynamics(num_field(j, "alpha"), num_field(j, "beta"));
    c.gamma0 = num_field(j, "gamma0");
    c.kappa = num_field(j, "kappa");
    c.delta = num_field(j, "delta");
    c.horizon = static_cast<int>(int_field(j, "horizon"));
    c.num_agents = int_field(j, "num_agents");
    if (j.contains("innate")) c.innate = sampling_from_json(j["innate"]);
    if (j.contains("recommendation"))
        c.recommendation = sampling_from_json(j["recommendation"]);
    c.master_seed = seed_field(j, "seed", 0);
    validate(c);
    return c;
}

json to_json(const PopulationConfig& c) {
    json j;
    j["alpha"] = c.params.alpha;
    j["beta"] = c.params.beta;
    j["gamma0"] = c.gamma0;
    j["kappa"] = c.kappa;
    j["delta"] = c.delta;
    j["horizon"] = c.horizon;
    j["num_agents"] = c.num_agents;
    j["innate"] = to_json(c.innate);
    j["recommendation"] = to_json(c.recommendation);
    j["seed"] = c.master_seed;
    return j;
}

json make_manifest(const std::string& command, const json& resolved_config,
                   std::uint64_t seed, int workers,
                   const std::vector<std::string>& outputs) {
    json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["generator"] = kGeneratorId;
    m["timestamp"] = timestamp_utc();
    m["command"] = command;
    m["seed"] = seed;
    m["workers"] = workers;
    m["config"] = resolved_config;
    m["outputs"] = outputs;
    return m;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write '" + path.string() + "'");
    out << text;
}

}  // namespace drift
