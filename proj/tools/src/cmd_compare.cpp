#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "commands.hpp"
#include "somor/balanced_truncation.hpp"
#include "somor/error.hpp"
#include "somor/frequency_response.hpp"
#include "somor/irka.hpp"
#include "somor/manifest.hpp"
#include "svg_plot.hpp"

namespace somor::cli {

namespace {

namespace fs = std::filesystem;

struct Arm {
  std::string name;
  std::optional<FrequencyResponseTable> response;
  std::optional<ErrorCurves> errors;
  std::string failure;
  double reduce_seconds = 0.0;
  double response_seconds = 0.0;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void put(std::ostream& out, const std::optional<double>& v) {
  if (v && std::isfinite(*v)) out << *v;
}

}  // namespace

int cmd_compare(const CompareOptions& o, RunManifest& manifest) {
  if (o.model_dir.empty()) throw Error(ErrorCode::kParameter, "--model-dir is required");
  if (o.out.empty()) throw Error(ErrorCode::kParameter, "--out is required");
  if (o.r < 1) throw Error(ErrorCode::kParameter, "--r must be positive");
  if (o.grid < 2) throw Error(ErrorCode::kParameter, "--grid needs at least 2 points");
  if (!o.plot.empty() && o.plot != "svg") throw Error(ErrorCode::kParameter, "--plot takes svg");

  PhaseTimer timer(manifest);
  const SecondOrderIndex3System sys = timer.time("load", [&] { return load_system(o.model_dir); });
  manifest.inputs.push_back(o.model_dir);
  const Band band = o.band.empty() ? default_band(o.model_dir) : parse_band(o.band);
  const FrequencyGrid grid = FrequencyGrid::logspace(band.lo, band.hi, o.grid);
  const FrequencyResponseTable full =
      timer.time("full_response", [&] { return full_response(sys, grid, o.workers); });

  Arm irka, bt;
  irka.name = "irka";
  bt.name = "bt";
  std::string irka_status;
  try {
    auto start = std::chrono::steady_clock::now();
    IrkaOptions opts;
    opts.r = o.r;
    opts.tol = o.tol;
    opts.max_iter = o.max_iter;
    opts.band = band;
    opts.seed = o.seed;
    opts.workers = o.workers;
    const IrkaResult result = irka_reduce(sys, opts);
    irka.reduce_seconds = seconds_since(start);
    irka_status = to_string(result.trace.status);
    start = std::chrono::steady_clock::now();
    irka.response = reduced_response(result.rom, grid);
    irka.response_seconds = seconds_since(start);
    irka.errors = error_curves(full, *irka.response);
  } catch (const Error& e) {
    irka.failure = e.what();
  }
  try {
    auto start = std::chrono::steady_clock::now();
    const BalancedReduction red = projected_balanced_truncation(sys, o.r);
    bt.reduce_seconds = seconds_since(start);
    start = std::chrono::steady_clock::now();
    bt.response = first_order_response(red.reduced, grid);
    bt.response_seconds = seconds_since(start);
    bt.errors = error_curves(full, *bt.response);
  } catch (const Error& e) {
    bt.failure = e.what();
  }
  manifest.timings.emplace_back("irka_reduce", irka.reduce_seconds);
  manifest.timings.emplace_back("irka_response", irka.response_seconds);
  manifest.timings.emplace_back("bt_reduce", bt.reduce_seconds);
  manifest.timings.emplace_back("bt_response", bt.response_seconds);

  const fs::path dir(o.out);
  fs::create_directories(dir);
  {
    std::ofstream csv(dir / "compare.csv");
    if (!csv) throw Error(ErrorCode::kIo, "cannot write " + (dir / "compare.csv").string());
    csv << std::setprecision(17);
    csv << "omega,sigma_full,sigma_irka,sigma_bt,abs_err_irka,abs_err_bt,rel_err_irka,rel_err_bt\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      auto sigma = [&](const FrequencyResponseTable* t) -> std::optional<double> {
        if (!t || !t->valid[i]) return std::nullopt;
        return t->sigma_max[i];
      };
      auto abs_err = [&](const Arm& a) -> std::optional<double> {
        if (!a.errors) return std::nullopt;
        return a.errors->absolute[i];
      };
      auto rel_err = [&](const Arm& a) -> std::optional<double> {
        if (!a.errors || !a.errors->relative_defined[i]) return std::nullopt;
        return a.errors->relative[i];
      };
      csv << grid.omegas[i] << ',';
      put(csv, sigma(&full));
      csv << ',';
      put(csv, sigma(irka.response ? &*irka.response : nullptr));
      csv << ',';
      put(csv, sigma(bt.response ? &*bt.response : nullptr));
      csv << ',';
      put(csv, abs_err(irka));
      csv << ',';
      put(csv, abs_err(bt));
      csv << ',';
      put(csv, rel_err(irka));
      csv << ',';
      put(csv, rel_err(bt));
      csv << '\n';
    }
    manifest.outputs.push_back((dir / "compare.csv").string());

    std::ofstream timings(dir / "timings.csv");
    timings << std::setprecision(6);
    timings << "method,phase,seconds\n";
    for (const Arm* a : {&irka, &bt}) {
      timings << a->name << ",reduce," << a->reduce_seconds << '\n';
      timings << a->name << ",response," << a->response_seconds << '\n';
    }
    manifest.outputs.push_back((dir / "timings.csv").string());
  }

  if (o.plot == "svg") {
    std::vector<Series> rel;
    for (const Arm* a : {&irka, &bt}) {
      if (!a->errors) continue;
      std::vector<double> y = a->errors->relative;
      for (std::size_t i = 0; i < y.size(); ++i)
        if (!a->errors->relative_defined[i]) y[i] = std::nan("");
      rel.push_back({a->name, grid.omegas, y});
    }
    std::ofstream svg(dir / "compare_rel_err.svg");
    write_loglog_svg(svg, "Relative error, r = " + std::to_string(o.r), "omega [rad/s]",
                     "relative error", rel);
    manifest.outputs.push_back((dir / "compare_rel_err.svg").string());
  }

  nlohmann::json res = {{"r", o.r}, {"band", {band.lo, band.hi}}};
  for (const Arm* a : {&irka, &bt}) {
    nlohmann::json arm = {{"reduce_seconds", a->reduce_seconds}};
    if (a->errors) arm["max_relative_error"] = a->errors->max_relative();
    if (!a->failure.empty()) arm["failure"] = a->failure;
    res[a->name] = arm;
  }
  res["irka"]["status"] = irka_status;
  if (irka.errors && bt.errors)
    res["irka_better"] = irka.errors->max_relative() < bt.errors->max_relative();
  manifest.results = res;

  for (const Arm* a : {&irka, &bt})
    if (!a->failure.empty()) std::cerr << "somor compare: " << a->name << " failed: " << a->failure << '\n';
  if (!irka.failure.empty() || !bt.failure.empty()) return 3;
  return irka_status == "converged" ? 0 : 4;
}

}  // namespace somor::cli
