#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "somor/system.hpp"

namespace somor {

inline constexpr std::string_view kManifestSchema = "somor-manifest-v1";
inline constexpr std::string_view kManifestFileName = "manifest.json";

/// On-disk description of a model directory: six Matrix Market files plus
/// dimensions and whatever the generator recorded about itself.
struct ModelManifest {
  std::string schema{kManifestSchema};
  Index n1 = 0;
  Index n2 = 0;
  Index m = 0;
  Index q = 0;
  std::map<std::string, std::string> files;  // keys M, D, K, G, F, L
  nlohmann::json generator = nlohmann::json::object();
};

nlohmann::json to_json(const ModelManifest& manifest);
ModelManifest manifest_from_json(const nlohmann::json& j);

/// Writes M.mtx ... L.mtx and manifest.json into `dir` (created if missing).
ModelManifest save_system(const std::filesystem::path& dir,
                          const SecondOrderIndex3System& sys,
                          const nlohmann::json& generator = nlohmann::json::object());

/// Loads a model directory. Dimensions in the manifest must match the files.
SecondOrderIndex3System load_system(const std::filesystem::path& dir,
                                    ModelManifest* manifest = nullptr);

/// 64-bit FNV-1a of a file's bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

}  // namespace somor
