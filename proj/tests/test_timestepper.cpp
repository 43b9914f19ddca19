#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "qg3d/error.hpp"
#include "qg3d/initcond.hpp"
#include "qg3d/spectral.hpp"
#include "qg3d/timestepper.hpp"

using namespace qg3d;

namespace {

GridSpec cube(std::size_t n) {
  GridSpec g;
  g.nx = g.ny = g.nz = n;
  return g;
}

StepControl fixed(double dt) {
  StepControl c;
  c.mode = StepControl::Mode::fixed;
  c.dt_fixed = dt;
  return c;
}

double rel_error(const SpectralField& a, const SpectralField& b) {
  return std::sqrt(mean_square(a - b) / mean_square(b));
}

// omega = -10: the phase error is well above roundoff at these steps.
RossbyWave fast_wave() {
  PhysicsParams p;
  p.beta = 10.0;
  return make_rossby(cube(8), p, {1, 0, 0}, 1.0);
}

}  // namespace

TEST(Rk4, LocalErrorIsFifthOrder) {
  const RossbyWave w = fast_wave();
  auto err = [&](double h) { return rel_error(rk4_step(w.state, h, Forcing::none()).q, w.exact_q(h)); };
  const double r = err(0.02) / err(0.01);
  EXPECT_GT(r, 28.0);
  EXPECT_LT(r, 36.0);
}

TEST(Rk4, GlobalErrorIsFourthOrder) {
  const RossbyWave w = fast_wave();
  auto err = [&](double h) { return rel_error(run(w.state, 0.5, fixed(h), Forcing::none()).q, w.exact_q(0.5)); };
  const double e1 = err(0.01), e2 = err(0.005), e3 = err(0.0025);
  EXPECT_NEAR(e1 / e2, 16.0, 1.0);
  EXPECT_NEAR(e2 / e3, 16.0, 1.0);
}

TEST(Rk4, IntegratingFactorIsExactForViscousDecay) {
  PhysicsParams p;
  p.beta = 0.0;
  p.nu = 0.1;
  const RossbyWave w = make_rossby(cube(8), p, {1, 1, 1}, 1.0);
  const State end = run(w.state, 1.0, fixed(0.1), Forcing::none());
  const std::size_t m = cube(8).mode_index(1, 1, 1);
  EXPECT_NEAR(std::abs(end.q.coeffs[m]) / std::abs(w.state.q.coeffs[m]), std::exp(-0.3), 1e-14);
}

TEST(Rk4, ZeroModeStaysZero) {
  const State s = make_random(cube(8), PhysicsParams{}, -2.0, 1.0, 3, {1, 2});
  EXPECT_EQ(rk4_step(s, 0.01, Forcing::none()).q.zero_mode(), Complex{});
}

TEST(Rk4, NonFiniteIsReported) {
  State s = make_random(cube(8), PhysicsParams{}, -2.0, 1.0, 3, {1, 2});
  s.t = 0.25;
  s.q(1, 1, 0) = {std::numeric_limits<double>::quiet_NaN(), 0.0};
  try {
    rk4_step(s, 0.01, Forcing::none());
    FAIL() << "expected NonFinite";
  } catch (const NonFinite& e) {
    EXPECT_DOUBLE_EQ(e.time(), 0.25);
  }
}

TEST(Cfl, Arithmetic) {
  StepControl c;
  c.cfl_number = 0.5;
  EXPECT_DOUBLE_EQ(cfl_dt_from_speeds(2.0, 1.0, 0.1, 0.1, c), 0.025);
  EXPECT_DOUBLE_EQ(cfl_dt_from_speeds(0.0, 0.0, 0.1, 0.1, c), c.dt_max);
  EXPECT_DOUBLE_EQ(cfl_dt_from_speeds(1e12, 0.0, 0.1, 0.1, c), c.dt_min);
}

TEST(Cfl, FromStateUsesGridMaxSpeeds) {
  // psi = sin(x): v = (0, cos x, 0), max|v2| = 1.
  PhysicsParams p;
  p.beta = 0.0;
  const RossbyWave w = make_rossby(cube(16), p, {1, 0, 0}, 1.0);
  StepControl c;
  c.cfl_number = 0.5;
  c.dt_max = 1.0;
  EXPECT_NEAR(cfl_dt(w.state, c), 0.5 * cube(16).dy(), 1e-14);
}

TEST(StepControl, Validation) {
  StepControl c;
  EXPECT_NO_THROW(c.validate());
  c.cfl_number = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.dt_min = 1.0;
  c.dt_max = 0.1;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(Run, ObserversLandOnAbsoluteTimes) {
  const RossbyWave w = fast_wave();
  std::vector<double> tenths, ends;
  const Observer a{0.1, [&](const State& s) { tenths.push_back(s.t); }};
  const Observer b{10.0, [&](const State& s) { ends.push_back(s.t); }};
  const State end = run(w.state, 0.55, fixed(0.03), Forcing::none(), {a, b});
  EXPECT_EQ(end.t, 0.55);
  ASSERT_EQ(tenths.size(), 7u);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(tenths[k], 0.1 * k, 1e-15);
  EXPECT_EQ(tenths.back(), 0.55);
  ASSERT_EQ(ends.size(), 2u);
  EXPECT_EQ(ends.front(), 0.0);
}
