#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "checks.hpp"
#include "commands.hpp"
#include "somor/benchmark_models.hpp"
#include "somor/error.hpp"
#include "somor/manifest.hpp"
#include "somor/projection.hpp"

namespace somor::cli {

namespace {

struct Tier {
  std::vector<Index> sizes;
  int instances;
  std::vector<Index> orders;  // interpolation check
  Index interpolation_n1;
  int bt_instances;
  Index bt_n;
  Index bt_k;
};

Tier tier_for(const std::string& name) {
  if (name == "tiny") return {{10}, 2, {4}, 10, 1, 8, 3};
  if (name == "small") return {{10, 50, 200}, 3, {4, 10}, 50, 3, 20, 5};
  throw Error(ErrorCode::kParameter, "--tier must be tiny or small");
}

void check_model_dir(const std::string& dir, CheckList& out) {
  const SecondOrderIndex3System sys = load_system(dir);
  const ValidationReport report = validate_system(sys);
  out.push_back({"model/validates", report.accepted(), report.accepted() ? 0.0 : 1.0, 0.0,
                 report.summary()});
  if (!report.accepted() || sys.n1() > kDefaultDenseCap) return;
  check_projector(sys, "model", out);
  check_realizations(sys, "model", 5, out);
}

}  // namespace

int cmd_verify(const VerifyOptions& o, RunManifest& manifest) {
  const Tier tier = tier_for(o.tier);
  PhaseTimer timer(manifest);
  CheckList checks;

  if (!o.model_dir.empty()) {
    manifest.inputs.push_back(o.model_dir);
    timer.time("model", [&] { check_model_dir(o.model_dir, checks); });
  }
  timer.time("oracles", [&] {
    for (Index n1 : tier.sizes)
      for (int i = 0; i < tier.instances; ++i) {
        const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
        const SecondOrderIndex3System sys =
            gen_random({n1, std::max<Index>(1, n1 / 10), 2, 2, seed});
        const std::string label = "random_n" + std::to_string(n1) + "_s" + std::to_string(seed);
        check_projector(sys, label, checks);
        check_saddle_equivalence(sys, label, checks);
        check_realizations(sys, label, 20, checks);
      }
  });
  timer.time("interpolation", [&] {
    const Index n1 = tier.interpolation_n1;
    const SecondOrderIndex3System sys = gen_random({n1, std::max<Index>(1, n1 / 10), 2, 2, o.seed});
    for (Index r : tier.orders)
      check_interpolation(sys, r, 2, "random_n" + std::to_string(n1), checks);
  });
  timer.time("balanced_truncation", [&] {
    for (int i = 0; i < tier.bt_instances; ++i) {
      const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
      check_balanced_truncation(tier.bt_n, tier.bt_k, seed,
                                "bt_n" + std::to_string(tier.bt_n) + "_s" + std::to_string(seed),
                                checks);
    }
  });

  std::size_t failed = 0;
  nlohmann::json report = nlohmann::json::array();
  std::cout << std::scientific << std::setprecision(3);
  for (const auto& c : checks) {
    failed += c.passed ? 0 : 1;
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  value=" << c.value
              << "  threshold=" << c.threshold;
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << '\n';
    report.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"value", std::isfinite(c.value) ? nlohmann::json(c.value) : nlohmann::json()},
                      {"threshold", c.threshold},
                      {"detail", c.detail}});
  }
  std::cout << checks.size() - failed << '/' << checks.size() << " checks passed\n";

  const auto path = std::filesystem::path(o.out) / "verify.json";
  std::filesystem::create_directories(o.out);
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << nlohmann::json{{"tier", o.tier}, {"checks", report}}.dump(2) << '\n';
  manifest.outputs.push_back(path.string());
  manifest.results = {{"tier", o.tier}, {"checks", checks.size()}, {"failed", failed}};
  return failed == 0 ? 0 : 3;
}

}  // namespace somor::cli
