#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "run_manifest.hpp"
#include "somor/shifts.hpp"
#include "somor/types.hpp"

namespace somor::cli {

struct GenerateOptions {
  std::string model = "dsms";
  Index n1 = 0;  // 0: model default
  Index n2 = 0;
  Index g = 0;
  Index m = 2;  // random model only
  Index q = 2;
  std::uint64_t seed = 0;
  std::string out;
};

struct ReduceOptions {
  std::string model_dir;
  std::string method = "irka";
  Index r = 30;
  double tol = 1e-4;
  int max_iter = 50;
  std::string band;  // "LO:HI"; empty picks the model default
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out;
};

struct FreqrespOptions {
  std::string model_dir;
  std::string rom;
  std::string band;
  std::size_t grid = 200;
  std::string plot;
  int workers = 0;
  std::string out;
};

struct VerifyOptions {
  std::string tier = "small";
  std::string model_dir;
  std::uint64_t seed = 0;
  std::string out = ".";
};

struct CompareOptions {
  std::string model_dir;
  Index r = 30;
  double tol = 1e-4;
  int max_iter = 50;
  std::string band;
  std::size_t grid = 200;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string plot;
  std::string out;
};

// Each returns the process exit code and fills `manifest`.
int cmd_generate(const GenerateOptions& o, RunManifest& manifest);
int cmd_reduce(const ReduceOptions& o, RunManifest& manifest);
int cmd_freqresp(const FreqrespOptions& o, RunManifest& manifest);
int cmd_verify(const VerifyOptions& o, RunManifest& manifest);
int cmd_compare(const CompareOptions& o, RunManifest& manifest);

/// Parses "LO:HI" with 0 < LO < HI. Throws Error(kParameter).
Band parse_band(const std::string& text);

/// The frequency interval the model's generator suggests: [1e-3, 1] for tcom,
/// [1e-2, 1] otherwise.
Band default_band(const std::string& model_dir);

}  // namespace somor::cli
