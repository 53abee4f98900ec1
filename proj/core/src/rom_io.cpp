#include "somor/rom_io.hpp"

#include <fstream>

#include "somor/error.hpp"

namespace somor {

namespace {

nlohmann::json dense_to_json(const Matrix& a) {
  nlohmann::json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(a.size()));
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) data.push_back(a(i, k));
  j["data"] = std::move(data);
  return j;
}

Matrix dense_from_json(const nlohmann::json& j) {
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Index>(data.size()) != rows * cols)
    throw Error(ErrorCode::kIo, "dense block has wrong number of entries");
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) a(i, k) = data[static_cast<std::size_t>(i * cols + k)];
  return a;
}

}  // namespace

nlohmann::json to_json(const ReducedModelFile& file) {
  nlohmann::json j;
  j["schema"] = kRomSchema;
  j["method"] = file.method;
  j["source_digest"] = file.source_digest;
  j["metadata"] = file.metadata;
  if (const auto* rom = std::get_if<ReducedSecondOrderModel>(&file.model)) {
    j["form"] = "second_order";
    j["r"] = rom->order();
    j["m"] = rom->inputs();
    j["q"] = rom->outputs();
    j["blocks"] = {{"M", dense_to_json(rom->Mr)}, {"D", dense_to_json(rom->Dr)},
                   {"K", dense_to_json(rom->Kr)}, {"F", dense_to_json(rom->Fr)},
                   {"L", dense_to_json(rom->Lr)}};
  } else {
    const auto& fo = std::get<FirstOrderRealization>(file.model);
    j["form"] = "first_order";
    j["r"] = fo.order();
    j["m"] = fo.B.cols();
    j["q"] = fo.C.rows();
    j["blocks"] = {{"E", dense_to_json(fo.E)}, {"A", dense_to_json(fo.A)},
                   {"B", dense_to_json(fo.B)}, {"C", dense_to_json(fo.C)}};
  }
  return j;
}

ReducedModelFile rom_from_json(const nlohmann::json& j) {
  ReducedModelFile file;
  try {
    if (j.at("schema").get<std::string>() != kRomSchema)
      throw Error(ErrorCode::kIo, "unknown reduced-model schema");
    file.method = j.value("method", "");
    file.source_digest = j.value("source_digest", "");
    if (j.contains("metadata")) file.metadata = j.at("metadata");
    const auto& b = j.at("blocks");
    const std::string form = j.at("form").get<std::string>();
    if (form == "second_order") {
      ReducedSecondOrderModel rom;
      rom.Mr = dense_from_json(b.at("M"));
      rom.Dr = dense_from_json(b.at("D"));
      rom.Kr = dense_from_json(b.at("K"));
      rom.Fr = dense_from_json(b.at("F"));
      rom.Lr = dense_from_json(b.at("L"));
      file.model = std::move(rom);
    } else if (form == "first_order") {
      FirstOrderRealization fo;
      fo.E = dense_from_json(b.at("E"));
      fo.A = dense_from_json(b.at("A"));
      fo.B = dense_from_json(b.at("B"));
      fo.C = dense_from_json(b.at("C"));
      file.model = std::move(fo);
    } else {
      throw Error(ErrorCode::kIo, "unknown reduced-model form: " + form);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("malformed reduced model: ") + e.what());
  }
  return file;
}

void save_reduced_model(const std::filesystem::path& path,
                        const ReducedModelFile& file) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << to_json(file).dump(1) << '\n';
}

ReducedModelFile load_reduced_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIo, "cannot parse " + path.string() + ": " + e.what());
  }
  return rom_from_json(j);
}

}  // namespace somor
