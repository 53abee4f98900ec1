#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "somor/system.hpp"

namespace somor {

inline constexpr std::string_view kRomSchema = "somor-rom-v1";

/// A reduced model as written by `somor reduce`: a second-order model from
/// IRKA or a first-order one from balanced truncation.
struct ReducedModelFile {
  std::variant<ReducedSecondOrderModel, FirstOrderRealization> model;
  std::string method;          // "irka" or "bt"
  std::string source_digest;   // digest of the source manifest
  nlohmann::json metadata = nlohmann::json::object();

  bool is_second_order() const {
    return std::holds_alternative<ReducedSecondOrderModel>(model);
  }
};

/// Dense blocks are stored as row-major arrays with explicit shapes.
nlohmann::json to_json(const ReducedModelFile& file);
ReducedModelFile rom_from_json(const nlohmann::json& j);

void save_reduced_model(const std::filesystem::path& path,
                        const ReducedModelFile& file);
ReducedModelFile load_reduced_model(const std::filesystem::path& path);

}  // namespace somor
