#include <filesystem>

#include "commands.hpp"
#include "somor/benchmark_models.hpp"
#include "somor/error.hpp"
#include "somor/manifest.hpp"

namespace somor::cli {

int cmd_generate(const GenerateOptions& o, RunManifest& manifest) {
  if (o.out.empty()) throw Error(ErrorCode::kParameter, "--out is required");
  PhaseTimer timer(manifest);
  SecondOrderIndex3System sys;
  nlohmann::json generator;
  timer.time("generate", [&] {
    if (o.model == "dsms") {
      DsmsParams p;
      if (o.n1 > 0) p.n1 = o.n1;
      if (o.n2 > 0) p.n2 = o.n2;
      p.seed = o.seed;
      if (p.n2 >= p.n1) throw Error(ErrorCode::kParameter, "dsms needs n2 < n1");
      sys = gen_dsms(p);
      generator = to_json(p);
    } else if (o.model == "tcom") {
      TcomParams p;
      if (o.g > 0) {
        p.g = o.g;
      } else if (o.n1 > 0) {
        if (o.n1 < 4 || (o.n1 - 1) % 3 != 0)
          throw Error(ErrorCode::kParameter, "tcom needs n1 = 3g + 1");
        p.g = (o.n1 - 1) / 3;
      }
      p.n2 = o.n2 > 0 ? o.n2 : p.g;
      p.seed = o.seed;
      sys = gen_tcom(p);
      generator = to_json(p);
    } else if (o.model == "random") {
      RandomSystemParams p;
      if (o.n1 > 0) p.n1 = o.n1;
      p.n2 = o.n2 > 0 ? o.n2 : std::max<Index>(1, p.n1 / 10);
      p.m = o.m;
      p.q = o.q;
      p.seed = o.seed;
      sys = gen_random(p);
      generator = to_json(p);
    } else {
      throw Error(ErrorCode::kParameter, "unknown model '" + o.model + "'");
    }
  });
  const ModelManifest written =
      timer.time("write", [&] { return save_system(o.out, sys, generator); });
  for (const auto& [key, file] : written.files)
    manifest.outputs.push_back((std::filesystem::path(o.out) / file).string());
  manifest.outputs.push_back((std::filesystem::path(o.out) / kManifestFileName).string());
  manifest.results = {{"n1", written.n1}, {"n2", written.n2}, {"m", written.m},
                      {"q", written.q},   {"generator", generator}};
  return 0;
}

}  // namespace somor::cli
