#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace somor::cli {

/// One per CLI invocation: what ran, with which settings, where the results
/// went and how long each phase took.
struct RunManifest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::pair<std::string, double>> timings;
  nlohmann::json results = nlohmann::json::object();
  int exit_code = 0;

  nlohmann::json to_json() const;
  /// Writes run-<command>.json into `dir`.
  std::filesystem::path write(const std::filesystem::path& dir) const;
};

/// Wall-clock stopwatch for named phases.
class PhaseTimer {
 public:
  explicit PhaseTimer(RunManifest& manifest) : manifest_(manifest) {}

  template <typename Fn>
  auto time(const std::string& phase, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    struct Record {
      RunManifest& m;
      const std::string& phase;
      std::chrono::steady_clock::time_point start;
      ~Record() {
        m.timings.emplace_back(
            phase, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      }
    } record{manifest_, phase, start};
    return fn();
  }

 private:
  RunManifest& manifest_;
};

}  // namespace somor::cli
