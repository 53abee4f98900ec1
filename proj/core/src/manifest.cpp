#include "somor/manifest.hpp"

#include <array>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "somor/error.hpp"
#include "somor/matrix_market.hpp"

namespace somor {

namespace {

constexpr std::array<const char*, 6> kBlocks = {"M", "D", "K", "G", "F", "L"};

}  // namespace

nlohmann::json to_json(const ModelManifest& manifest) {
  nlohmann::json j;
  j["schema"] = manifest.schema;
  j["n1"] = manifest.n1;
  j["n2"] = manifest.n2;
  j["m"] = manifest.m;
  j["q"] = manifest.q;
  j["files"] = manifest.files;
  j["generator"] = manifest.generator;
  return j;
}

ModelManifest manifest_from_json(const nlohmann::json& j) {
  ModelManifest manifest;
  try {
    manifest.schema = j.at("schema").get<std::string>();
    if (manifest.schema != kManifestSchema)
      throw Error(ErrorCode::kIo, "unknown manifest schema: " + manifest.schema);
    manifest.n1 = j.at("n1").get<Index>();
    manifest.n2 = j.at("n2").get<Index>();
    manifest.m = j.at("m").get<Index>();
    manifest.q = j.at("q").get<Index>();
    manifest.files = j.at("files").get<std::map<std::string, std::string>>();
    if (j.contains("generator")) manifest.generator = j.at("generator");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("malformed manifest: ") + e.what());
  }
  for (const char* block : kBlocks)
    if (!manifest.files.count(block))
      throw Error(ErrorCode::kIo, std::string("manifest lacks file for ") + block);
  return manifest;
}

ModelManifest save_system(const std::filesystem::path& dir,
                          const SecondOrderIndex3System& sys,
                          const nlohmann::json& generator) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());

  ModelManifest manifest;
  manifest.n1 = sys.n1();
  manifest.n2 = sys.n2();
  manifest.m = sys.inputs();
  manifest.q = sys.outputs();
  manifest.generator = generator;
  const std::array<const SparseMatrix*, 6> mats = {&sys.M, &sys.D, &sys.K,
                                                   &sys.G, &sys.F, &sys.L};
  for (std::size_t k = 0; k < kBlocks.size(); ++k) {
    const std::string name = std::string(kBlocks[k]) + ".mtx";
    write_matrix_market(dir / name, *mats[k]);
    manifest.files[kBlocks[k]] = name;
  }
  std::ofstream out(dir / kManifestFileName);
  if (!out) throw Error(ErrorCode::kIo, "cannot write manifest in " + dir.string());
  out << to_json(manifest).dump(2) << '\n';
  return manifest;
}

SecondOrderIndex3System load_system(const std::filesystem::path& dir,
                                    ModelManifest* manifest_out) {
  const auto manifest_path = dir / kManifestFileName;
  std::ifstream in(manifest_path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + manifest_path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIo, "cannot parse " + manifest_path.string() + ": " + e.what());
  }
  ModelManifest manifest = manifest_from_json(j);

  auto load = [&](const char* block) {
    std::filesystem::path p = manifest.files.at(block);
    if (p.is_relative()) p = dir / p;
    return read_matrix_market(p);
  };
  SecondOrderIndex3System sys;
  sys.M = load("M");
  sys.D = load("D");
  sys.K = load("K");
  sys.G = load("G");
  sys.F = load("F");
  sys.L = load("L");
  if (sys.n1() != manifest.n1 || sys.n2() != manifest.n2 ||
      sys.inputs() != manifest.m || sys.outputs() != manifest.q)
    throw Error(ErrorCode::kIo, "matrix sizes disagree with " + manifest_path.string());
  if (manifest_out) *manifest_out = std::move(manifest);
  return sys;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::uint64_t h = 1469598103934665603ull;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize k = 0; k < in.gcount(); ++k) {
      h ^= static_cast<unsigned char>(buf[k]);
      h *= 1099511628211ull;
    }
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << h;
  return hex.str();
}

}  // namespace somor
