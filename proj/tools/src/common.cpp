#include <charconv>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "somor/error.hpp"
#include "somor/manifest.hpp"

namespace somor::cli {

Band parse_band(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw Error(ErrorCode::kParameter, "band must look like LO:HI, got '" + text + "'");
  Band band;
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
    band.lo = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    band.hi = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParameter, "band must look like LO:HI, got '" + text + "'");
  }
  if (!(band.lo > 0.0) || !(band.lo < band.hi))
    throw Error(ErrorCode::kParameter, "band needs 0 < LO < HI");
  return band;
}

Band default_band(const std::string& model_dir) {
  Band band{1e-2, 1.0};
  if (model_dir.empty()) return band;
  std::ifstream in(std::filesystem::path(model_dir) / kManifestFileName);
  if (!in) return band;
  const auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_object() && j.contains("generator") && j["generator"].value("model", "") == "tcom")
    band.lo = 1e-3;
  return band;
}

}  // namespace somor::cli
