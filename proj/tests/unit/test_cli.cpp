#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "somor/cli/app.hpp"
#include "somor/rom_io.hpp"
#include "support.hpp"

namespace somor {
namespace {

namespace fs = std::filesystem;
using cli::run;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

class Cli : public ::testing::Test {
 protected:
  test::TempDir dir{"cli"};
  std::string at(const std::string& child) const { return dir.str(child); }
};

TEST_F(Cli, HelpExitsCleanly) { EXPECT_EQ(run({"--help"}), cli::kExitOk); }

TEST_F(Cli, UnknownSubcommandIsUsageError) { EXPECT_EQ(run({"shrink"}), cli::kExitUsage); }

TEST_F(Cli, GeneratePublishedDsms) {
  ASSERT_EQ(run({"generate", "--model", "dsms", "--n1", "2000", "--n2", "200", "--out", at("m")}),
            cli::kExitOk);
  for (const char* f : {"M.mtx", "D.mtx", "K.mtx", "G.mtx", "F.mtx", "L.mtx", "manifest.json"})
    EXPECT_TRUE(fs::exists(fs::path(at("m")) / f)) << f;
  const auto manifest = read_json(fs::path(at("m")) / "run-generate.json");
  EXPECT_EQ(manifest.at("command"), "generate");
  EXPECT_EQ(manifest.at("exit_code"), 0);
}

TEST_F(Cli, GenerateRejectsTooManyConstraints) {
  EXPECT_NE(run({"generate", "--model", "dsms", "--n1", "10", "--n2", "20", "--out", at("m")}),
            cli::kExitOk);
}

TEST_F(Cli, GenerateIsByteIdentical) {
  for (const char* d : {"a", "b"})
    ASSERT_EQ(run({"generate", "--model", "tcom", "--g", "20", "--seed", "4", "--out", at(d)}), 0);
  for (const char* f : {"M.mtx", "D.mtx", "K.mtx", "G.mtx", "F.mtx", "L.mtx"})
    EXPECT_EQ(slurp(fs::path(at("a")) / f), slurp(fs::path(at("b")) / f)) << f;
}

TEST_F(Cli, ReduceIrkaWritesModelAndTrace) {
  ASSERT_EQ(run({"generate", "--model", "dsms", "--n1", "300", "--n2", "30", "--out", at("m")}), 0);
  const int code = run({"reduce", "--model-dir", at("m"), "--method", "irka", "--r", "8",
                        "--max-iter", "3", "--out", at("r")});
  EXPECT_TRUE(code == cli::kExitOk || code == cli::kExitNotConverged) << code;
  const auto rom = load_reduced_model(fs::path(at("r")) / "rom.json");
  ASSERT_TRUE(rom.is_second_order());
  EXPECT_EQ(std::get<ReducedSecondOrderModel>(rom.model).order(), 8);
  const auto trace = lines(fs::path(at("r")) / "trace.csv");
  ASSERT_GE(trace.size(), 2u);
  EXPECT_EQ(trace.front(), "iteration,shift_change,elapsed_seconds");
  EXPECT_TRUE(fs::exists(fs::path(at("r")) / "shifts.csv"));
  EXPECT_EQ(read_json(fs::path(at("r")) / "run-reduce.json").at("exit_code"), code);
}

TEST_F(Cli, ReduceRejectsZeroOrder) {
  ASSERT_EQ(run({"generate", "--model", "dsms", "--n1", "50", "--n2", "5", "--out", at("m")}), 0);
  EXPECT_EQ(run({"reduce", "--model-dir", at("m"), "--r", "0", "--out", at("r")}),
            cli::kExitUsage);
  EXPECT_EQ(run({"reduce", "--model-dir", at("m"), "--method", "pod", "--out", at("r")}),
            cli::kExitUsage);
}

TEST_F(Cli, ReduceBalancedTruncationOnTcom) {
  ASSERT_EQ(run({"generate", "--model", "tcom", "--g", "50", "--out", at("m")}), 0);
  ASSERT_EQ(run({"reduce", "--model-dir", at("m"), "--method", "bt", "--r", "30", "--out",
                 at("r")}),
            cli::kExitOk);
  const auto rom = load_reduced_model(fs::path(at("r")) / "rom.json");
  ASSERT_FALSE(rom.is_second_order());
  EXPECT_EQ(std::get<FirstOrderRealization>(rom.model).order(), 30);
  const auto hankel = lines(fs::path(at("r")) / "hankel.csv");
  EXPECT_EQ(hankel.front(), "index,hankel_singular_value");
  EXPECT_GT(hankel.size(), 31u);
}

TEST_F(Cli, FreqrespFullAndReduced) {
  ASSERT_EQ(run({"generate", "--model", "dsms", "--n1", "200", "--n2", "20", "--out", at("m")}), 0);
  run({"reduce", "--model-dir", at("m"), "--r", "6", "--max-iter", "2", "--out", at("r")});
  ASSERT_EQ(run({"freqresp", "--model-dir", at("m"), "--rom", at("r/rom.json"), "--band",
                 "1e-2:1", "--plot", "svg", "--out", at("f")}),
            cli::kExitOk);
  const auto rows = lines(fs::path(at("f")) / "response.csv");
  ASSERT_EQ(rows.size(), 201u);
  EXPECT_EQ(rows.front(), "omega,sigma_full,sigma_reduced,abs_err,rel_err");
  for (const char* svg : {"sigma.svg", "abs_err.svg", "rel_err.svg"}) {
    const auto text = slurp(fs::path(at("f")) / svg);
    EXPECT_NE(text.find("<svg"), std::string::npos) << svg;
  }
  const auto run_json = read_json(fs::path(at("f")) / "run-freqresp.json");
  EXPECT_TRUE(run_json.at("results").contains("max_relative_error"));
}

TEST_F(Cli, FreqrespReducedOnly) {
  ASSERT_EQ(run({"generate", "--model", "dsms", "--n1", "100", "--n2", "10", "--out", at("m")}), 0);
  run({"reduce", "--model-dir", at("m"), "--r", "4", "--max-iter", "1", "--out", at("r")});
  ASSERT_EQ(run({"freqresp", "--rom", at("r/rom.json"), "--grid", "20", "--out", at("f")}), 0);
  const auto rows = lines(fs::path(at("f")) / "response.csv");
  ASSERT_EQ(rows.size(), 21u);
  EXPECT_EQ(rows[1].substr(rows[1].find(','), 2), ",,");
}

TEST_F(Cli, VerifyTinyPasses) {
  EXPECT_EQ(run({"verify", "--tier", "tiny", "--out", at("v")}), cli::kExitOk);
  const auto report = read_json(fs::path(at("v")) / "verify.json");
  EXPECT_FALSE(report.empty());
}

TEST_F(Cli, VerifyCorruptModelIsError) {
  ASSERT_EQ(run({"generate", "--model", "dsms", "--n1", "50", "--n2", "5", "--out", at("m")}), 0);
  std::ofstream(fs::path(at("m")) / "G.mtx") << "garbage\n";
  EXPECT_NE(run({"verify", "--tier", "tiny", "--model-dir", at("m"), "--out", at("v")}),
            cli::kExitOk);
}

TEST_F(Cli, CompareMissingModelDir) {
  EXPECT_NE(run({"compare", "--model-dir", at("absent"), "--out", at("c")}), cli::kExitOk);
}

TEST_F(Cli, ConfigFileValuesYieldToFlags) {
  ASSERT_EQ(run({"generate", "--model", "dsms", "--n1", "100", "--n2", "10", "--out", at("m")}), 0);
  std::ofstream(at("run.ini")) << "r = 6\nmax_iter = 2\ntol = 1e-3\n";
  run({"reduce", "--model-dir", at("m"), "--config", at("run.ini"), "--r", "4", "--out", at("r")});
  const auto rom = load_reduced_model(fs::path(at("r")) / "rom.json");
  EXPECT_EQ(std::get<ReducedSecondOrderModel>(rom.model).order(), 4);
  const auto cfg = read_json(fs::path(at("r")) / "run-reduce.json").at("config");
  EXPECT_EQ(cfg.at("max-iter"), "2");
  EXPECT_EQ(cfg.at("tol"), "1e-3");
}

}  // namespace
}  // namespace somor
