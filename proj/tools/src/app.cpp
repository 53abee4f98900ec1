#include "somor/cli/app.hpp"

#include <algorithm>
#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "somor/error.hpp"

namespace somor::cli {

namespace {

/// Appends `--key value` for every config-file entry whose flag is not
/// already on the command line, so explicit flags win.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;

  const std::vector<CLI::ConfigItem> items = CLI::ConfigINI().from_file(path);
  for (const auto& item : items) {
    std::string key = item.fullname();
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty() || key == "config") continue;
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    args.push_back(flag);
    for (const auto& v : item.inputs) args.push_back(v);
  }
  return args;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kParameter:
    case ErrorCode::kIo: return kExitUsage;
    default: return kExitNumerical;
  }
}

void add_common(CLI::App* sub, std::string& out, std::string& config) {
  sub->add_option("--out", out, "Output directory");
  sub->add_option("--config", config, "key=value file; flags override its entries");
}

}  // namespace

int run(const std::vector<std::string>& raw_args) {
  CLI::App app{"Structure-preserving model reduction of constrained second-order systems",
               "somor"};
  app.require_subcommand(1);
  std::string config;

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Write a benchmark model directory");
  generate->add_option("--model", gen.model, "dsms, tcom or random")
      ->check(CLI::IsMember({"dsms", "tcom", "random"}));
  generate->add_option("--n1", gen.n1, "Number of coordinates");
  generate->add_option("--n2", gen.n2, "Number of constraints");
  generate->add_option("--g", gen.g, "Chain length (tcom)");
  generate->add_option("--inputs", gen.m, "Inputs (random)");
  generate->add_option("--outputs", gen.q, "Outputs (random)");
  generate->add_option("--seed", gen.seed);
  add_common(generate, gen.out, config);

  ReduceOptions red;
  auto* reduce = app.add_subcommand("reduce", "Reduce a model with IRKA or balanced truncation");
  reduce->add_option("--model-dir", red.model_dir)->required();
  reduce->add_option("--method", red.method, "irka or bt");
  reduce->add_option("--r", red.r, "Reduced order");
  reduce->add_option("--tol", red.tol, "Shift change tolerance");
  reduce->add_option("--max-iter", red.max_iter);
  reduce->add_option("--band", red.band, "Initial shift band LO:HI [rad/s]");
  reduce->add_option("--seed", red.seed);
  reduce->add_option("--workers", red.workers);
  add_common(reduce, red.out, config);

  FreqrespOptions fr;
  auto* freqresp = app.add_subcommand("freqresp", "Frequency response and error curves");
  freqresp->add_option("--model-dir", fr.model_dir, "Full model directory");
  freqresp->add_option("--rom", fr.rom, "Reduced model file (rom.json)");
  freqresp->add_option("--band", fr.band, "Frequency interval LO:HI [rad/s]");
  freqresp->add_option("--grid", fr.grid, "Number of log-spaced points");
  freqresp->add_option("--plot", fr.plot, "svg");
  freqresp->add_option("--workers", fr.workers);
  add_common(freqresp, fr.out, config);

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Run the invariant and oracle checks");
  verify->add_option("--tier", ver.tier, "tiny or small");
  verify->add_option("--model-dir", ver.model_dir, "Also validate this model");
  verify->add_option("--seed", ver.seed);
  add_common(verify, ver.out, config);

  CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "IRKA against balanced truncation");
  compare->add_option("--model-dir", cmp.model_dir)->required();
  compare->add_option("--r", cmp.r);
  compare->add_option("--tol", cmp.tol);
  compare->add_option("--max-iter", cmp.max_iter);
  compare->add_option("--band", cmp.band);
  compare->add_option("--grid", cmp.grid);
  compare->add_option("--seed", cmp.seed);
  compare->add_option("--workers", cmp.workers);
  compare->add_option("--plot", cmp.plot, "svg");
  add_common(compare, cmp.out, config);

  std::vector<std::string> args;
  try {
    args = merge_config(raw_args);
  } catch (const CLI::Error& e) {
    std::cerr << "somor: cannot read config: " << e.what() << '\n';
    return kExitUsage;
  }
  // CLI11 consumes arguments from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunManifest manifest;
  manifest.command = app.get_subcommands().front()->get_name();
  for (const auto* opt : app.get_subcommands().front()->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    const auto values = opt->results();
    manifest.config[opt->get_lnames().front()] =
        values.size() == 1 ? nlohmann::json(values.front()) : nlohmann::json(values);
  }

  std::string out_dir;
  int code = kExitOk;
  try {
    if (generate->parsed()) {
      manifest.seed = gen.seed;
      out_dir = gen.out;
      code = cmd_generate(gen, manifest);
    } else if (reduce->parsed()) {
      manifest.seed = red.seed;
      out_dir = red.out;
      code = cmd_reduce(red, manifest);
    } else if (freqresp->parsed()) {
      out_dir = fr.out;
      code = cmd_freqresp(fr, manifest);
    } else if (verify->parsed()) {
      manifest.seed = ver.seed;
      out_dir = ver.out;
      code = cmd_verify(ver, manifest);
    } else if (compare->parsed()) {
      manifest.seed = cmp.seed;
      out_dir = cmp.out;
      code = cmd_compare(cmp, manifest);
    }
  } catch (const Error& e) {
    std::cerr << "somor " << manifest.command << ": " << to_string(e.code()) << ": " << e.what()
              << '\n';
    manifest.results["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    code = exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "somor " << manifest.command << ": " << e.what() << '\n';
    manifest.results["error"] = {{"message", e.what()}};
    code = kExitNumerical;
  }

  manifest.exit_code = code;
  if (!out_dir.empty()) {
    try {
      manifest.write(out_dir);
    } catch (const std::exception& e) {
      std::cerr << "somor " << manifest.command << ": cannot write run manifest: " << e.what()
                << '\n';
      if (code == kExitOk) code = kExitUsage;
    }
  }
  if (code == kExitNotConverged)
    std::cerr << "somor " << manifest.command << ": did not converge; results written\n";
  return code;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace somor::cli
