#include "run_manifest.hpp"

#include <fstream>

#include "somor/error.hpp"
#include "somor/version.hpp"

namespace somor::cli {

nlohmann::json RunManifest::to_json() const {
  nlohmann::json t = nlohmann::json::object();
  for (const auto& [phase, seconds] : timings) t[phase] = seconds;
  return {{"schema", "somor-run-v1"},
          {"command", command},
          {"version", std::string(kVersion)},
          {"config", config},
          {"seed", seed},
          {"inputs", inputs},
          {"outputs", outputs},
          {"timings_seconds", t},
          {"results", results},
          {"exit_code", exit_code}};
}

std::filesystem::path RunManifest::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  const auto path = dir / ("run-" + command + ".json");
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << to_json().dump(2) << '\n';
  return path;
}

}  // namespace somor::cli
