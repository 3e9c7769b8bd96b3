#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <string>

#include "zsl/errors.hpp"
#include "zsl/experiment.hpp"
#include "zsl/log.hpp"

namespace zsl {
namespace {

namespace fs = std::filesystem;

std::string usage_message(const std::string& text) {
  try {
    parse_config(text);
  } catch (const UsageError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

TEST(Config, ErrorsNameTheKeyPath) {
  EXPECT_TRUE(contains(usage_message(R"({"experiment":"evolve","grid":{"nz":3}})"),
                       "grid.nz: unknown key"));
  EXPECT_TRUE(contains(usage_message(R"({"experiment":"evolve","grid":{"nx":4}})"),
                       "grid.nx = 4 is out of range"));
  EXPECT_TRUE(contains(usage_message(R"({"experiment":"evolve","sim":{"dt":-1}})"), "sim.dt"));
  EXPECT_TRUE(contains(usage_message(R"({"experiment":"evolve","sim":{"integrator":"euler"}})"),
                       "split-duhamel"));
  EXPECT_TRUE(contains(usage_message(R"({"experiment":"evolve","bogus":1})"), "bogus: unknown key"));
  EXPECT_TRUE(contains(usage_message(R"({"grid":{}})"), "experiment"));
  EXPECT_TRUE(contains(usage_message(R"({"experiment":"fly"})"), "hyperbolic-check"));
  EXPECT_TRUE(contains(usage_message("{"), "not valid JSON"));
  EXPECT_TRUE(contains(usage_message(R"({"experiment":"lambda-sweep","sweep":{"lambdas":[1,-2]}})"),
                       "sweep.lambdas[1]"));
  EXPECT_TRUE(contains(usage_message(R"({"experiment":"symbol-scan","scan":{"ranges":{"tau":[1]}}})"),
                       "scan.ranges.tau"));
  EXPECT_TRUE(contains(
      usage_message(R"({"experiment":"hyperbolic-check","sim":{"t_final":0.5},"hyperbolic":{"probes":[1.0]}})"),
      "hyperbolic.probes"));
  EXPECT_TRUE(contains(
      usage_message(R"({"experiment":"evolve","output":{"record_stride":3,"checkpoint_stride":4}})"),
      "checkpoint_stride"));
}

TEST(Config, OverridesApplyOnTopOfDefaults) {
  const ExperimentConfig c = parse_config(
      R"({"experiment":"energy-drift","grid":{"nx":64},"initial":{"center":[1,2],"k":[2,-1]},"seed":5})");
  EXPECT_EQ(c.experiment, ExperimentId::energy_drift);
  EXPECT_EQ(c.grid.nx, 64);
  EXPECT_EQ(c.grid.ny, 256);
  EXPECT_EQ(c.sim.dt, 5e-4);
  EXPECT_EQ(c.initial.profile, Profile::gaussian);
  EXPECT_EQ(c.initial.center[1], 2.0);
  EXPECT_EQ(c.initial.k[1], -1);
  EXPECT_EQ(c.seed, 5u);
}

TEST(Config, SerializeRoundTripsEveryDefault) {
  for (auto id : {ExperimentId::soliton_check, ExperimentId::evolve, ExperimentId::energy_drift,
                  ExperimentId::lambda_sweep, ExperimentId::symbol_scan,
                  ExperimentId::hyperbolic_check}) {
    const ExperimentConfig c = default_config(id);
    EXPECT_NO_THROW(c.validate()) << to_string(id);
    const std::string text = serialize(c);
    EXPECT_EQ(serialize(parse_config(text)), text);
    EXPECT_EQ(experiment_from_string(to_string(id)), id);
  }
}

TEST(Config, HashIsFnv1aOfSerializedConfig) {
  ExperimentConfig c = default_config(ExperimentId::evolve);
  ExperimentConfig bare = c;
  bare.output.dir.clear();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : serialize(bare)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  EXPECT_EQ(config_hash(c), buf);

  ExperimentConfig other = c;
  other.output.dir = "elsewhere";
  other.threads = 4;
  EXPECT_EQ(config_hash(other), config_hash(c));
  other.sim.dt *= 0.5;
  EXPECT_NE(config_hash(other), config_hash(c));
}

TEST(Checks, Relations) {
  EXPECT_TRUE(make_check("a", 1.0, "<", 2.0).passed);
  EXPECT_FALSE(make_check("a", 2.0, "<", 2.0).passed);
  EXPECT_TRUE(make_check("a", 2.0, "<=", 2.0).passed);
  EXPECT_TRUE(make_check("a", 2.0, ">=", 2.0).passed);
  EXPECT_FALSE(make_check("a", std::nan(""), ">=", 2.0).passed);
  EXPECT_TRUE(make_check("a", 0.0, "==", 0.0).passed);
  EXPECT_THROW(make_check("a", 0.0, "!=", 0.0), UsageError);
}

class RunTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("zsl_run_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    previous_ = set_warning_handler([](std::string_view) {});
  }
  void TearDown() override {
    set_warning_handler(previous_);
    fs::remove_all(dir_);
  }

  ExperimentConfig small(ExperimentId id, const std::string& sub) const {
    ExperimentConfig c = default_config(id);
    c.grid = {32, 32, 20.0, 20.0};
    c.sim.t_final = 0.05;
    c.sim.dt = 5e-3;
    c.output.dir = (dir_ / sub).string();
    c.output.record_stride = 2;
    return c;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), {}};
  }
  static nlohmann::json summary(const ExperimentConfig& c) {
    return nlohmann::json::parse(slurp(fs::path(c.output.dir) / "summary.json"));
  }

  fs::path dir_;
  WarningHandler previous_;
};

TEST_F(RunTest, EvolveWritesArtifactsDeterministically) {
  ExperimentConfig a = small(ExperimentId::evolve, "a");
  a.output.checkpoint_stride = 4;
  ExperimentConfig b = a;
  b.output.dir = (dir_ / "b").string();
  ASSERT_EQ(run(a), kOk);
  ASSERT_EQ(run(b), kOk);
  const fs::path pa(a.output.dir), pb(b.output.dir);
  for (const char* f : {"config.json", "summary.json", "diagnostics.csv", "energy.svg",
                        "checkpoint_00000004.bin", "checkpoint_00000008.bin",
                        "checkpoint_final.bin", "run_info.json"}) {
    EXPECT_TRUE(fs::exists(pa / f)) << f;
  }
  EXPECT_FALSE(fs::exists(pa / "checkpoint_00000002.bin"));
  EXPECT_EQ(slurp(pa / "diagnostics.csv"), slurp(pb / "diagnostics.csv"));
  EXPECT_EQ(slurp(pa / "summary.json"), slurp(pb / "summary.json"));
  EXPECT_EQ(slurp(pa / "checkpoint_final.bin"), slurp(pb / "checkpoint_final.bin"));
  const auto s = summary(a);
  EXPECT_EQ(s["experiment"], "evolve");
  EXPECT_EQ(s["config_hash"], config_hash(a));
  EXPECT_EQ(s["steps"], 10);
  EXPECT_TRUE(s["passed"]);
  EXPECT_EQ(serialize(parse_config(slurp(pa / "config.json"))), serialize(a));
}

TEST_F(RunTest, PlotsCanBeDisabled) {
  ExperimentConfig c = small(ExperimentId::evolve, "c");
  c.output.plots = false;
  ASSERT_EQ(run(c), kOk);
  EXPECT_FALSE(fs::exists(fs::path(c.output.dir) / "energy.svg"));
}

TEST_F(RunTest, ZeroDataStaysZero) {
  ExperimentConfig c = small(ExperimentId::evolve, "z");
  c.initial.profile = Profile::zero;
  ASSERT_EQ(run(c), kOk);
  EXPECT_EQ(summary(c)["max_norm"], 0.0);
}

TEST_F(RunTest, GatingFailureExitsWithOne) {
  // Q is far from zero at the edge of a 10-wide box.
  ExperimentConfig c = small(ExperimentId::soliton_check, "s");
  c.grid = {32, 32, 10.0, 10.0};
  EXPECT_EQ(run(c), kGatingFailed);
  const auto s = summary(c);
  EXPECT_FALSE(s["passed"]);
  EXPECT_GT(s["ode_residual"].get<double>(), 1e-8);
}

TEST_F(RunTest, BlowUpExitsWithThree) {
  ExperimentConfig c = small(ExperimentId::evolve, "n");
  c.initial.amplitude = 50.0;
  c.sim.dt = 0.05;
  c.sim.t_final = 2.0;
  c.sim.dealias = false;
  EXPECT_EQ(run(c), kNumericAbort);
  const auto s = summary(c);
  EXPECT_FALSE(s["passed"]);
  EXPECT_TRUE(s.contains("error"));
}

TEST_F(RunTest, UnwritableOutputExitsWithTwo) {
  std::ofstream(dir_ / "file") << "x";
  ExperimentConfig c = small(ExperimentId::evolve, "file/sub");
  EXPECT_EQ(run(c), kIoFailure);
}

TEST_F(RunTest, SymbolScanWritesReports) {
  ExperimentConfig c = small(ExperimentId::symbol_scan, "scan");
  c.scan.points = 12;
  c.scan.points_3d = 12;
  c.scan.samples = 300;
  const int code = run(c);
  EXPECT_TRUE(code == kOk || code == kGatingFailed);
  for (const char* id : {"symbol1", "symbol2", "symbol3", "z_inequality", "symbol5"}) {
    EXPECT_TRUE(fs::exists(fs::path(c.output.dir) / ("scan_" + std::string(id) + ".json"))) << id;
  }
  EXPECT_EQ(summary(c)["scans"].size(), 5u);
}

TEST_F(RunTest, SweepWritesTable) {
  ExperimentConfig c = small(ExperimentId::lambda_sweep, "sweep");
  c.sweep.lambdas = {1.0, 2.0};
  c.sweep.dt0 = 1e-2;
  c.sim.t_final = 0.05;
  run(c);
  const std::string csv = slurp(fs::path(c.output.dir) / "sweep.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "lambda,dt,ok,e_constraint,e_u,ratio");
  EXPECT_TRUE(fs::exists(fs::path(c.output.dir) / "sweep.svg"));
  EXPECT_EQ(summary(c)["sweep"]["members"].size(), 2u);
}

TEST(Hyperbolic, StructuralChecksOnSmallGrid) {
  ExperimentConfig c = default_config(ExperimentId::hyperbolic_check);
  c.grid = {32, 32, 20.0, 20.0};
  c.sim.t_final = 0.1;
  c.sim.dt = 1e-2;
  c.hyperbolic.probes = {0.05, 0.1};
  c.hyperbolic.nodes = 100;
  const HyperbolicCheck r = hyperbolic_check(c);
  EXPECT_EQ(r.symmetry_defect, 0.0);
  EXPECT_LT(r.form_mismatch, 1e-10);
  EXPECT_LT(r.max_w, 1e-7);
  ASSERT_EQ(r.probes.size(), 2u);
  EXPECT_EQ(r.checks.size(), 4u);
}

}  // namespace
}  // namespace zsl
