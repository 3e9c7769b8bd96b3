#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "zsl/diagnostics.hpp"
#include "zsl/errors.hpp"
#include "zsl/evolve.hpp"
#include "zsl/limit.hpp"
#include "zsl/spectral.hpp"

namespace zsl {
namespace {

SweepConfig small_sweep() {
  SweepConfig c;
  c.lambdas = {1.0, 4.0, 16.0};
  c.t_final = 0.3;
  c.dt0 = 1e-2;
  return c;
}

GridPtr small_grid() { return make_grid(32, 32, 20.0, 20.0); }

TEST(Sweep, Validation) {
  SweepConfig c = small_sweep();
  c.lambdas = {2.0, 1.0};
  EXPECT_THROW(c.validate(), UsageError);
  c.lambdas = {};
  EXPECT_THROW(c.validate(), UsageError);
  c.lambdas = {0.0, 1.0};
  EXPECT_THROW(c.validate(), UsageError);
  c = small_sweep();
  c.dt0 = -1.0;
  EXPECT_THROW(c.validate(), UsageError);
}

TEST(Sweep, MembersMatchIndependentRuns) {
  const GridPtr g = small_grid();
  const SweepConfig c = small_sweep();
  const SweepReport r = run_sweep(g, c);
  ASSERT_EQ(r.members.size(), 3u);
  ASSERT_TRUE(r.all_ok());
  auto bg = std::make_shared<const Background>(g);
  SimParams p;
  p.t_final = c.t_final;
  SimParams q = p;
  q.dt = c.dt0 / 16.0;
  const ComplexField ref = evolve_pnls(make_initial(c.initial, *bg).u, bg, q);
  for (const auto& m : r.members) {
    p.lambda = m.lambda;
    p.dt = c.dt0 / m.lambda;
    EXPECT_DOUBLE_EQ(m.dt, p.dt);
    const ZakharovState s = evolve(make_initial(c.initial, *bg), bg, p).state;
    EXPECT_DOUBLE_EQ(m.e_constraint, constraint_error(s, *bg));
    EXPECT_NEAR(m.e_u, sobolev_norm(s.u - ref, SobolevIndex(1.0)), 1e-14);
  }
}

TEST(Sweep, ConstraintShrinksWithSoundSpeed) {
  const SweepReport r = run_sweep(small_grid(), small_sweep());
  EXPECT_TRUE(r.constraint_decreasing());
  for (double x : r.constraint_ratios()) EXPECT_GT(x, 1.0);
  ASSERT_TRUE(r.control.has_value());
  EXPECT_TRUE(r.control->ok);
  EXPECT_LT(r.control->scheme_fraction, 0.1);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  SweepConfig a = small_sweep();
  SweepConfig b = a;
  b.threads = 3;
  EXPECT_EQ(to_json(run_sweep(small_grid(), a)), to_json(run_sweep(small_grid(), b)));
}

TEST(Sweep, ReportHelpers) {
  SweepReport r;
  r.reference_ok = true;
  r.members = {{1.0, 0.1, true, "", 4.0, 3.0}, {2.0, 0.05, true, "", 1.0, 2.0}};
  ASSERT_EQ(r.constraint_ratios().size(), 1u);
  EXPECT_EQ(r.constraint_ratios()[0], 4.0);
  EXPECT_TRUE(r.constraint_decreasing());
  EXPECT_TRUE(r.e_u_decreasing());
  EXPECT_TRUE(r.all_ok());
  r.members[1].e_u = 3.0;
  EXPECT_FALSE(r.e_u_decreasing());
  r.members[1].ok = false;
  EXPECT_FALSE(r.all_ok());
}

TEST(Sweep, FailedMemberSerializesAsNull) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  SweepReport r;
  r.reference_ok = true;
  r.members = {{1.0, 0.1, true, "", 2.0, 1.0}, {2.0, 0.05, false, "blew up", nan, nan}};
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_TRUE(j["members"][1]["e_u"].is_null());
  EXPECT_EQ(j["members"][1]["error"], "blew up");
  EXPECT_TRUE(j["constraint_ratios"][0].is_null());
  EXPECT_FALSE(j["constraint_decreasing"]);

  std::ostringstream os;
  write_sweep_csv(os, r);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "lambda,dt,ok,e_constraint,e_u,ratio");
  std::getline(is, line);
  EXPECT_EQ(line, "1,0.10000000000000001,1,2,1,");
}

}  // namespace
}  // namespace zsl
