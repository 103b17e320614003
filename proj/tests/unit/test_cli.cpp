#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include "resolvent/phase_map.hpp"
#include "resolvent_cli/cli.hpp"

using namespace resolvent;
using namespace resolvent::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;

  json parsed() const { return json::parse(out); }
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("resolvent_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                    ::testing::UnitTest::GetInstance()->current_test_info()->name());
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST(CliRates, UnitInterval) {
  const Outcome r = invoke({"rates", "--z", "2", "--interval", "0", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.parsed();
  EXPECT_NEAR(j["mu2"].get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(j["mu4"].get<double>(), 3.0 - 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(j["cg_rate"].get<double>(), j["mu4"].get<double>(), 1e-12);
  for (const char* key : {"mu0", "mu1", "mu1_refined", "mu3", "v", "sigma", "sigma_underline"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(CliRates, NarrowInterval) {
  const Outcome r = invoke({"rates", "--z", "2", "--interval", "0.25", "0.75"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.parsed();
  EXPECT_NEAR(j["mu2"].get<double>(), 1.0 / 6.0, 1e-12);
  // Exact value 0.08392022; the published reference rounds it to 0.083921.
  EXPECT_NEAR(j["mu4"].get<double>(), 0.083921, 2e-6);
}

TEST(CliRates, OnCutIsUsageError) {
  const Outcome r = invoke({"rates", "--z", "0.5", "--interval", "0", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("z on spectral cut"), std::string::npos);
}

TEST(CliRates, ComplexZAndTextMode) {
  const Outcome r = invoke({"rates", "--z-re", "1.5", "--z-im", "0.5", "--text"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("mu4 "), std::string::npos);
  EXPECT_EQ(r.out.find("cg_rate"), std::string::npos);
}

TEST(CliRates, RealAndComplexZFlagsExclude) {
  EXPECT_EQ(invoke({"rates", "--z", "2", "--z-im", "1"}).code, 2);
}

TEST(CliRates, NumbersCarryFifteenDigits) {
  const Outcome r = invoke({"rates", "--z", "2", "--interval", "0", "1"});
  const double mu4 = r.parsed()["mu4"].get<double>();
  std::ostringstream want;
  want.precision(15);
  want << mu4;
  EXPECT_NE(r.out.find(want.str()), std::string::npos);
}

TEST(CliSolveDense, PowerSeriesFarFromCut) {
  const Outcome r = invoke({"solve-dense", "--n", "32", "--z", "100", "--scheme", "power", "--tol", "1e-10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.parsed();
  EXPECT_EQ(j["status"], "Converged");
  EXPECT_LE(j["iters"].get<int>(), 6);
  EXPECT_LE(j["final_error"].get<double>(), 1e-10);
}

TEST(CliSolveDense, LiftedConvergesWithExactBounds) {
  const Outcome r = invoke({"solve-dense", "--n", "32", "--z", "2", "--scheme", "lifted", "--tol", "1e-13"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.parsed();
  EXPECT_EQ(j["status"], "Converged");
  EXPECT_LE(j["final_error"].get<double>(), 1e-11);
  // Endpoint eigenvalues add an n |v|^n transient on top of the rate |v|.
  const double slope = j["fitted_slope"].get<double>();
  const double log_mu = j["log_mu_bound"].get<double>();
  EXPECT_LE(slope, log_mu + std::max(0.05, 3.0 / (0.75 * j["iters"].get<double>())));
  EXPECT_GT(slope, log_mu - 0.05);
}

TEST(CliSolveDense, ZeroDimensionIsUsageError) { EXPECT_EQ(invoke({"solve-dense", "--n", "0"}).code, 2); }

TEST(CliSolveDense, RankAboveDimensionIsUsageError) {
  EXPECT_EQ(invoke({"solve-dense", "--n", "4", "--rank-q", "5"}).code, 2);
}

TEST(CliSolveDense, DivergenceIsReportedNotFatal) {
  // z = 0.6 + 0.05i sits just off a cut that covers most of [0,1]: the power series diverges.
  const Outcome r = invoke({"solve-dense", "--n", "32", "--z-re", "0.6", "--z-im", "0.05", "--scheme", "power",
                            "--interval", "0", "1", "--max-iter", "500"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.parsed()["status"], "Diverged");
}

TEST(CliSolveDense, TraceCsvAndBitReproducible) {
  const auto dir = scratch_dir();
  const auto run_once = [&dir](const std::string& name) {
    const Outcome r = invoke({"solve-dense", "--n", "16", "--rank-q", "4", "--rank-gamma", "6", "--seed", "5", "--z",
                              "-1", "--scheme", "accelerated", "--trace", (dir / name).string()});
    EXPECT_EQ(r.code, 0) << r.err;
    return r.out;
  };
  const std::string a = run_once("a.csv");
  const std::string b = run_once("b.csv");
  EXPECT_EQ(a, b);
  const std::string csv = slurp(dir / "a.csv");
  EXPECT_EQ(csv, slurp(dir / "b.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "iter,residual,error_vs_oracle");
  std::filesystem::remove_all(dir);
}

TEST(CliSolveDense, UnknownSchemeIsUsageError) {
  EXPECT_EQ(invoke({"solve-dense", "--scheme", "chebyshev"}).code, 2);
}

TEST(CliSolveConduct, LaminateNormalDirection) {
  const Outcome r = invoke({"solve-conduct", "--grid", "64", "64", "--generator", "laminate:0.5", "--sigma", "3",
                            "--e-bar", "1", "0", "--tol", "1e-12"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.parsed();
  EXPECT_NEAR(j["effective_column"][0]["re"].get<double>(), 1.5, 1e-6);
  EXPECT_EQ(j["status"], "Converged");
}

TEST(CliSolveConduct, LaminateInPlane) {
  const Outcome r = invoke({"solve-conduct", "--grid", "64", "64", "--generator", "laminate:0.5", "--sigma", "3",
                            "--e-bar", "0", "1", "--tol", "1e-12"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.parsed()["effective_column"][1]["re"].get<double>(), 2.0, 1e-6);
}

TEST(CliSolveConduct, PurePhaseTwoIsOneInOneIteration) {
  const Outcome r =
      invoke({"solve-conduct", "--grid", "16", "16", "--generator", "uniform:0", "--sigma", "3", "--e-bar", "1", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.parsed();
  EXPECT_NEAR(j["effective_column"][0]["re"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(j["iters"].get<int>(), 1);
}

TEST(CliSolveConduct, FullTensorOfLaminate) {
  const Outcome r = invoke({"solve-conduct", "--grid", "32", "32", "--generator", "laminate:0.5", "--sigma", "3",
                            "--full-tensor", "--scheme", "accelerated", "--tol", "1e-12"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json t = r.parsed()["effective_tensor"];
  EXPECT_NEAR(t[0][0]["re"].get<double>(), 1.5, 1e-6);
  EXPECT_NEAR(t[1][1]["re"].get<double>(), 2.0, 1e-6);
  EXPECT_NEAR(t[0][1]["re"].get<double>(), 0.0, 1e-9);
}

TEST(CliSolveConduct, PhaseFile) {
  const auto dir = scratch_dir();
  std::ofstream(dir / "map.txt") << format_phase_map(make_laminate(GridSpec({8, 8}), 0.5));
  const Outcome r = invoke({"solve-conduct", "--phase-file", (dir / "map.txt").string(), "--sigma", "3", "--e-bar",
                            "1", "0", "--tol", "1e-12"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.parsed()["effective_column"][0]["re"].get<double>(), 1.5, 1e-6);
  std::filesystem::remove_all(dir);
}

TEST(CliSolveConduct, UnreadablePhaseFileIsUsageError) {
  EXPECT_EQ(invoke({"solve-conduct", "--phase-file", "/nonexistent/map.txt"}).code, 2);
}

TEST(CliSolveConduct, WrongAppliedFieldSizeIsUsageError) {
  EXPECT_EQ(invoke({"solve-conduct", "--grid", "8", "8", "--e-bar", "1", "0", "0"}).code, 2);
}

TEST(CliEstimate, KnownSpectrum) {
  const Outcome r = invoke({"estimate", "--n", "32", "--spectrum", "0.2,0.5,0.8", "--iters", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.parsed();
  EXPECT_NEAR(j["z_minus_e"].get<double>(), 0.2, 1e-6);
  EXPECT_NEAR(j["z_plus_e"].get<double>(), 0.8, 1e-6);
  EXPECT_EQ(j["iterations_used"].get<int>(), 100);
}

TEST(CliEstimate, QEqualsGamma) {
  const Outcome r = invoke({"estimate", "--n", "16", "--spectrum", "1,1,1", "--iters", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.parsed()["z_minus_e"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(r.parsed()["z_plus_e"].get<double>(), 1.0, 1e-12);
}

TEST(CliEstimate, WidensWithIterations) {
  const auto bounds = [](int iters) {
    const json j = invoke({"estimate", "--n", "48", "--rank-q", "12", "--rank-gamma", "20", "--iters",
                           std::to_string(iters), "--seed", "3"})
                       .parsed();
    return std::pair{j["z_minus_e"].get<double>(), j["z_plus_e"].get<double>()};
  };
  const auto one = bounds(1);
  const auto many = bounds(100);
  EXPECT_LE(many.first, one.first);
  EXPECT_GE(many.second, one.second);
}

TEST(CliEstimate, TrivialGammaIsUsageError) {
  EXPECT_EQ(invoke({"estimate", "--n", "8", "--rank-gamma", "0", "--rank-q", "2"}).code, 2);
}

TEST(CliEstimate, GridInstance) {
  const Outcome r = invoke({"estimate", "--instance", "grid", "--grid", "16", "16", "--generator", "laminate:0.5",
                            "--iters", "30"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.parsed();
  EXPECT_GE(j["z_minus_e"].get<double>(), 0.0);
  EXPECT_LE(j["z_plus_e"].get<double>(), 1.0);
  EXPECT_LE(j["z_minus_e"].get<double>(), j["z_plus_e"].get<double>());
}

TEST(CliConfig, JsonRoundTripIsLossless) {
  RunConfig cfg;
  cfg.command = "solve-dense";
  cfg.z_re = 0.1 + 0.2;
  cfg.z_im = -1.0 / 3.0;
  cfg.interval = std::array<double, 2>{0.125, 0.875};
  cfg.scheme = "richardson-optimal";
  cfg.tol = 3.3e-13;
  cfg.seed = 18446744073709551557ULL;
  cfg.spectrum = {0.2, 0.5, 0.8};
  cfg.grid = {8, 16, 4};
  cfg.phase_file = "maps/a b.txt";
  cfg.e_bar = {0.6, -0.8, 1e-300};
  cfg.full_tensor = true;
  cfg.text = true;
  EXPECT_EQ(apply_config_json(config_to_json(cfg), RunConfig{}), cfg);
  EXPECT_EQ(apply_config_json(config_to_json(RunConfig{}), cfg), RunConfig{});
}

TEST(CliConfig, FileOverridesFlags) {
  const auto dir = scratch_dir();
  std::ofstream(dir / "cfg.json") << R"({"z_re": 2.0, "interval": [0.25, 0.75]})";
  const Outcome r =
      invoke({"rates", "--z", "5", "--interval", "0", "1", "--config", (dir / "cfg.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.parsed()["mu2"].get<double>(), 1.0 / 6.0, 1e-12);
  std::filesystem::remove_all(dir);
}

TEST(CliConfig, SaveThenReplay) {
  const auto dir = scratch_dir();
  const std::string saved = (dir / "saved.json").string();
  const Outcome first = invoke({"rates", "--z-re", "1.5", "--z-im", "0.5", "--interval", "0.1", "0.9",
                                "--save-config", saved});
  ASSERT_EQ(first.code, 0) << first.err;
  const Outcome replay = invoke({"rates", "--config", saved});
  EXPECT_EQ(replay.out, first.out);
  std::filesystem::remove_all(dir);
}

TEST(CliConfig, MalformedConfigIsUsageError) {
  const auto dir = scratch_dir();
  std::ofstream(dir / "bad.json") << "{not json";
  EXPECT_EQ(invoke({"rates", "--config", (dir / "bad.json").string()}).code, 2);
  std::filesystem::remove_all(dir);
}

TEST(Cli, MissingSubcommandIsUsageError) { EXPECT_EQ(invoke({}).code, 2); }

TEST(Cli, HelpExitsZero) { EXPECT_EQ(invoke({"--help"}).code, 0); }
