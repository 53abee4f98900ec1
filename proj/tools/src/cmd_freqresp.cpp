#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>

#include "commands.hpp"
#include "somor/error.hpp"
#include "somor/frequency_response.hpp"
#include "somor/manifest.hpp"
#include "somor/rom_io.hpp"
#include "svg_plot.hpp"

namespace somor::cli {

namespace {

namespace fs = std::filesystem;

FrequencyResponseTable rom_response(const ReducedModelFile& file, const FrequencyGrid& grid) {
  if (file.is_second_order())
    return reduced_response(std::get<ReducedSecondOrderModel>(file.model), grid);
  return first_order_response(std::get<FirstOrderRealization>(file.model), grid);
}

std::vector<double> masked(const std::vector<double>& v, const std::vector<bool>& ok) {
  std::vector<double> out(v);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!ok[i]) out[i] = std::numeric_limits<double>::quiet_NaN();
  return out;
}

void write_svg(const fs::path& path, const std::string& title, const std::string& y_label,
               const std::vector<Series>& series, RunManifest& manifest) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write_loglog_svg(out, title, "omega [rad/s]", y_label, series);
  manifest.outputs.push_back(path.string());
}

}  // namespace

int cmd_freqresp(const FreqrespOptions& o, RunManifest& manifest) {
  if (o.model_dir.empty() && o.rom.empty())
    throw Error(ErrorCode::kParameter, "give --model-dir, --rom or both");
  if (o.out.empty()) throw Error(ErrorCode::kParameter, "--out is required");
  if (o.grid < 2) throw Error(ErrorCode::kParameter, "--grid needs at least 2 points");
  if (!o.plot.empty() && o.plot != "svg") throw Error(ErrorCode::kParameter, "--plot takes svg");

  PhaseTimer timer(manifest);
  const Band band = o.band.empty() ? default_band(o.model_dir) : parse_band(o.band);
  const FrequencyGrid grid = FrequencyGrid::logspace(band.lo, band.hi, o.grid);

  std::optional<FrequencyResponseTable> full, reduced;
  if (!o.model_dir.empty()) {
    const SecondOrderIndex3System sys = timer.time("load", [&] { return load_system(o.model_dir); });
    manifest.inputs.push_back(o.model_dir);
    full = timer.time("full_response", [&] { return full_response(sys, grid, o.workers); });
  }
  if (!o.rom.empty()) {
    const ReducedModelFile file = load_reduced_model(o.rom);
    manifest.inputs.push_back(o.rom);
    reduced = timer.time("reduced_response", [&] { return rom_response(file, grid); });
  }

  const fs::path dir(o.out);
  fs::create_directories(dir);
  const FrequencyResponseTable* fp = full ? &*full : nullptr;
  const FrequencyResponseTable* rp = reduced ? &*reduced : nullptr;
  {
    std::ofstream csv(dir / "response.csv");
    if (!csv) throw Error(ErrorCode::kIo, "cannot write " + (dir / "response.csv").string());
    write_response_csv(csv, fp, rp);
    manifest.outputs.push_back((dir / "response.csv").string());
    std::ofstream ch(dir / "channels.csv");
    write_channel_csv(ch, fp, rp);
    manifest.outputs.push_back((dir / "channels.csv").string());
  }

  std::size_t invalid = 0;
  for (const auto* t : {fp, rp})
    if (t)
      for (bool ok : t->valid) invalid += ok ? 0 : 1;
  manifest.results = {{"band", {band.lo, band.hi}}, {"grid", o.grid}, {"invalid_points", invalid}};

  std::optional<ErrorCurves> errors;
  if (full && reduced) {
    errors = error_curves(*full, *reduced);
    manifest.results["max_relative_error"] = errors->max_relative();
    double max_abs = 0.0;
    for (double a : errors->absolute)
      if (std::isfinite(a)) max_abs = std::max(max_abs, a);
    manifest.results["max_absolute_error"] = max_abs;
  }

  if (o.plot == "svg") {
    std::vector<Series> sigma;
    if (full) sigma.push_back({"full", grid.omegas, masked(full->sigma_max, full->valid)});
    if (reduced)
      sigma.push_back({"reduced", grid.omegas, masked(reduced->sigma_max, reduced->valid)});
    write_svg(dir / "sigma.svg", "Frequency response", "sigma_max", sigma, manifest);
    if (errors) {
      write_svg(dir / "abs_err.svg", "Absolute error", "sigma_max(T - Tr)",
                {{"absolute", grid.omegas, errors->absolute}}, manifest);
      write_svg(dir / "rel_err.svg", "Relative error", "relative error",
                {{"relative", grid.omegas, masked(errors->relative, errors->relative_defined)}},
                manifest);
    }
  }
  return 0;
}

}  // namespace somor::cli
