#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "scatterlab/experiments.hpp"

namespace scatterlab {

inline constexpr const char* kVersion = "0.1.0";

nlohmann::json to_json(const FilterbankSpec& spec);
nlohmann::json to_json(const MaskingConfig& config);
nlohmann::json to_json(const DepthConfig& config);
nlohmann::json to_json(const DatasetConfig& config);
nlohmann::json to_json(const MfccConfig& config);
nlohmann::json to_json(const EmbeddingConfig& config);

// Library and backend versions for run manifests.
nlohmann::json version_info();

// manifest.json: command, config, seed, versions, wall time, files written.
void write_manifest(const std::filesystem::path& dir, const std::string& command, const nlohmann::json& config,
                    double seconds, const std::vector<std::string>& files);

// Each writer returns the file names it created inside `dir`.
std::vector<std::string> write_masking_outputs(const std::filesystem::path& dir, const MaskingGridResult& result);
std::vector<std::string> write_depth_outputs(const std::filesystem::path& dir, const DepthDecayResult& result);
std::vector<std::string> write_theorem_outputs(const std::filesystem::path& dir, const TheoremReport& report);
std::vector<std::string> write_embedding_outputs(const std::filesystem::path& dir, const EmbeddingReport& report);

// Panels for the masking figure: per octave of λ2 below λ1, the slice with the
// largest peak value.
std::vector<std::size_t> masking_panel_indices(const MaskingGridResult& result);

}  // namespace scatterlab
