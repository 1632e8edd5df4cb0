#pragma once
// Config files, manifests, and numeric formatting. Configs are flat JSON
// mirroring ExperimentConfig / PopulationConfig; a manifest echoes the fully
// resolved config, so feeding a manifest back through --config reproduces
// the run byte-for-byte.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "drift/montecarlo.hpp"
#include "drift/population.hpp"

namespace drift {

inline constexpr char kToolName[] = "driftsim";
inline constexpr char kToolVersion[] = "1.0.0";

// 12 significant digits, '.' separator, locale-independent, no trailing
// zero padding.
std::string format_number(double v);

// Parses a JSON file; parse failures surface as invalid_argument with
// file:line:column diagnostics.
nlohmann::json load_json_file(const std::filesystem::path& path);

// Accepts either a bare config object or a manifest (detected by its "tool"
// and "config" members), returning the config object in both cases.
nlohmann::json unwrap_config(const nlohmann::json& j);

ExperimentConfig experiment_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

PopulationConfig population_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PopulationConfig& c);

nlohmann::json to_json(const SamplingSpec& s);
SamplingSpec sampling_from_json(const nlohmann::json& j);

nlohmann::json make_manifest(const std::string& command,
                             const nlohmann::json& resolved_config,
                             std::uint64_t seed, int workers,
                             const std::vector<std::string>& outputs);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace drift
