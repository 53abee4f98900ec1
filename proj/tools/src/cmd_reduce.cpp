#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>

#include "commands.hpp"
#include "somor/balanced_truncation.hpp"
#include "somor/error.hpp"
#include "somor/irka.hpp"
#include "somor/manifest.hpp"
#include "somor/rom_io.hpp"

namespace somor::cli {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path, RunManifest& manifest) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << std::setprecision(17);
  manifest.outputs.push_back(path.string());
  return out;
}

void write_trace(const fs::path& dir, const ConvergenceTrace& trace, RunManifest& manifest) {
  auto csv = open_out(dir / "trace.csv", manifest);
  csv << "iteration,shift_change,elapsed_seconds\n";
  for (const auto& it : trace.iterations)
    csv << it.iteration << ',' << it.shift_change << ',' << it.elapsed_seconds << '\n';
  auto shifts = open_out(dir / "shifts.csv", manifest);
  shifts << "iteration,index,re,im\n";
  for (const auto& it : trace.iterations)
    for (std::size_t i = 0; i < it.sorted_shifts.size(); ++i)
      shifts << it.iteration << ',' << i << ',' << it.sorted_shifts[i].real() << ','
             << it.sorted_shifts[i].imag() << '\n';
}

int reduce_irka(const ReduceOptions& o, const SecondOrderIndex3System& sys,
                const std::string& digest, RunManifest& manifest) {
  PhaseTimer timer(manifest);
  IrkaOptions opts;
  opts.r = o.r;
  opts.tol = o.tol;
  opts.max_iter = o.max_iter;
  opts.band = o.band.empty() ? default_band(o.model_dir) : parse_band(o.band);
  opts.seed = o.seed;
  opts.workers = o.workers;
  const IrkaResult result = timer.time("irka", [&] { return irka_reduce(sys, opts); });

  const fs::path dir(o.out);
  timer.time("write", [&] {
    ReducedModelFile file{result.rom, "irka", digest,
                          {{"status", to_string(result.trace.status)},
                           {"iterations", result.trace.iterations.size()},
                           {"tol", o.tol},
                           {"seed", o.seed}}};
    save_reduced_model(dir / "rom.json", file);
    manifest.outputs.push_back((dir / "rom.json").string());
    write_trace(dir, result.trace, manifest);
  });

  const auto& its = result.trace.iterations;
  manifest.results = {{"method", "irka"},
                      {"r", o.r},
                      {"status", to_string(result.trace.status)},
                      {"iterations", its.size()},
                      {"final_shift_change", its.empty() ? 0.0 : its.back().shift_change},
                      {"band", {opts.band.lo, opts.band.hi}}};
  if (!result.trace.note.empty()) manifest.results["note"] = result.trace.note;
  return result.trace.status == IrkaStatus::kConverged ? 0 : 4;
}

int reduce_bt(const ReduceOptions& o, const SecondOrderIndex3System& sys,
              const std::string& digest, RunManifest& manifest) {
  PhaseTimer timer(manifest);
  const BalancedReduction bt =
      timer.time("bt", [&] { return projected_balanced_truncation(sys, o.r); });
  const Index k = bt.reduced.order();
  double discarded = 0.0;
  for (Index i = k; i < bt.hankel.size(); ++i) discarded += bt.hankel(i);

  const fs::path dir(o.out);
  timer.time("write", [&] {
    ReducedModelFile file{bt.reduced, "bt", digest,
                          {{"requested_order", o.r}, {"order_clipped", bt.order_clipped}}};
    save_reduced_model(dir / "rom.json", file);
    manifest.outputs.push_back((dir / "rom.json").string());
    auto csv = open_out(dir / "hankel.csv", manifest);
    csv << "index,hankel_singular_value\n";
    for (Index i = 0; i < bt.hankel.size(); ++i) csv << i + 1 << ',' << bt.hankel(i) << '\n';
  });
  manifest.results = {{"method", "bt"},
                      {"r", k},
                      {"requested_order", o.r},
                      {"order_clipped", bt.order_clipped},
                      {"discarded_hankel_sum", discarded},
                      {"error_bound", 2.0 * discarded}};
  return 0;
}

}  // namespace

int cmd_reduce(const ReduceOptions& o, RunManifest& manifest) {
  if (o.model_dir.empty()) throw Error(ErrorCode::kParameter, "--model-dir is required");
  if (o.out.empty()) throw Error(ErrorCode::kParameter, "--out is required");
  if (o.r < 1) throw Error(ErrorCode::kParameter, "--r must be positive");
  if (!(o.tol > 0.0)) throw Error(ErrorCode::kParameter, "--tol must be positive");
  if (o.max_iter < 1) throw Error(ErrorCode::kParameter, "--max-iter must be positive");
  if (o.method != "irka" && o.method != "bt")
    throw Error(ErrorCode::kParameter, "--method must be irka or bt");

  const SecondOrderIndex3System sys = load_system(o.model_dir);
  const std::string digest = file_digest(fs::path(o.model_dir) / kManifestFileName);
  manifest.inputs.push_back(o.model_dir);
  fs::create_directories(o.out);
  return o.method == "irka" ? reduce_irka(o, sys, digest, manifest)
                            : reduce_bt(o, sys, digest, manifest);
}

}  // namespace somor::cli
