#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "qg3d/error.hpp"
#include "qg3d/initcond.hpp"
#include "qg3d/spectral.hpp"

using namespace qg3d;

namespace {

constexpr double pi = std::numbers::pi;
const double V = 8 * pi * pi * pi;

GridSpec cube(std::size_t n) {
  GridSpec g;
  g.nx = g.ny = g.nz = n;
  return g;
}

double l2(const SpectralField& f) { return std::sqrt(f.grid.volume() * mean_square(f)); }

}  // namespace

TEST(RandomSpectrum, BitwiseReproducible) {
  const State a = make_random(cube(16), PhysicsParams{}, -2.0, 1.0, 42, {2, 5});
  const State b = make_random(cube(16), PhysicsParams{}, -2.0, 1.0, 42, {2, 5});
  const State c = make_random(cube(16), PhysicsParams{}, -2.0, 1.0, 43, {2, 5});
  EXPECT_EQ(a.q.coeffs, b.q.coeffs);
  EXPECT_NE(a.q.coeffs, c.q.coeffs);
}

TEST(RandomSpectrum, NormBandAndSlope) {
  const GridSpec g = cube(32);
  const double slope = -3.0;
  const State s = make_random(g, PhysicsParams{}, slope, 2.5, 1, {2, 8});
  EXPECT_NEAR(l2(s.q), 2.5, 1e-13);
  EXPECT_EQ(s.q.zero_mode(), Complex{});
  const Wavenumbers w(g);
  std::map<long, double> shell;
  for (std::size_t iz = 0; iz < g.nz; ++iz)
    for (std::size_t iy = 0; iy < g.ny; ++iy)
      for (std::size_t ix = 0; ix < g.nx_half(); ++ix) {
        const double a = std::norm(s.q(ix, iy, iz));
        if (a == 0.0) continue;
        const double r = std::sqrt(double(w.sx[ix] * w.sx[ix] + w.sy[iy] * w.sy[iy] + w.sz[iz] * w.sz[iz]));
        const long sh = std::lround(r);
        ASSERT_GE(sh, 2);
        ASSERT_LE(sh, 8);
        ASSERT_TRUE(is_retained(w.sx[ix], g.nx) && is_retained(w.sy[iy], g.ny) && is_retained(w.sz[iz], g.nz));
        shell[sh] += hermitian_weight(ix, g.nx) * a;
      }
  ASSERT_EQ(shell.size(), 7u);
  for (const auto& [sh, e] : shell) EXPECT_NEAR(e / shell[2], std::pow(sh / 2.0, slope), 1e-10) << sh;
}

TEST(RandomSpectrum, EmptyBand) {
  EXPECT_THROW(make_random(cube(16), PhysicsParams{}, -2.0, 1.0, 1, {50, 60}), EmptyBand);
}

TEST(RandomSpectrum, TwoDimensionalGrid) {
  GridSpec g = cube(32);
  g.nz = 1;
  const State s = make_random(g, PhysicsParams{}, -2.0, 1.0, 1, {2, 8});
  EXPECT_NEAR(l2(s.q), 1.0, 1e-13);
}

TEST(Rossby, FrequencyAndShape) {
  PhysicsParams p;
  p.beta = 1.0;
  p.F = 2.0;
  const RossbyWave w = make_rossby(cube(16), p, {2, 1, 1}, 0.5);
  const double K2 = 4 + 1 + 4;
  EXPECT_DOUBLE_EQ(w.omega, -2.0 / K2);
  // q = -K^2 A cos(2x + y + z) at the origin
  EXPECT_NEAR(inverse_transform(w.state.q)(0, 0, 0), -K2 * 0.5, 1e-13);
  EXPECT_THROW(make_rossby(cube(16), p, {0, 0, 0}, 1.0), ZeroMode);
}

TEST(Rossby, UnrepresentableModeRejected) {
  SpectralField f(cube(16));
  EXPECT_THROW(add_cosine_mode(f, {8, 0, 0}, 1.0, 0.0), ValidationError);
  EXPECT_NO_THROW(add_cosine_mode(f, {7, -7, 3}, 1.0, 0.0));
}

TEST(Blob, NormMatchesGaussianIntegral) {
  const double A = 2.0, w = 0.5;
  const State s = make_blob(cube(32), PhysicsParams{}, {pi, pi, pi}, w, A);
  const double mass = A * std::pow(2 * pi, 1.5) * w * w * w;
  const double sq = A * A * std::pow(pi, 1.5) * w * w * w;
  EXPECT_NEAR(l2(s.q), std::sqrt(sq - mass * mass / V), 1e-12);
  EXPECT_LT(std::abs(s.q.zero_mode()), 1e-16);
}

TEST(Blob, PeriodicAcrossBoundary) {
  const GridSpec g = cube(32);
  const State s = make_blob(g, PhysicsParams{}, {0.0, 0.0, 0.0}, 0.4, 1.0);
  const PhysicalField q = inverse_transform(s.q);
  EXPECT_NEAR(q(1, 0, 0), q(g.nx - 1, 0, 0), 1e-14);
  EXPECT_NEAR(q(0, 2, 0), q(0, g.ny - 2, 0), 1e-14);
}

TEST(Zonal, FromProfile) {
  const GridSpec g = cube(16);
  std::vector<double> prof(g.ny);
  for (std::size_t j = 0; j < g.ny; ++j) prof[j] = std::cos(2 * j * g.dy());
  const State s = make_zonal(g, PhysicsParams{}, prof);
  const PhysicalField q = inverse_transform(s.q);
  for (std::size_t j = 0; j < g.ny; ++j) EXPECT_NEAR(q(3, j, 5), -4 * prof[j], 1e-13);
  EXPECT_THROW(make_zonal(g, PhysicsParams{}, {1.0, 2.0}), ValidationError);
}

TEST(Mms, RossbyTargetNeedsNoForcing) {
  // psi = cos(x - omega t) with omega = -beta
  PhysicsParams p;
  p.beta = 1.0;
  MmsTerm a, b;
  a.fx = Trig::cos;
  a.sx = 1;
  a.ft = Trig::cos;
  a.omega = -1.0;
  b.fx = Trig::sin;
  b.sx = 1;
  b.ft = Trig::sin;
  b.omega = -1.0;
  const ManufacturedProblem mp = make_mms(cube(8), p, MmsTarget{{a, b}});
  for (double t : {0.0, 0.3, 1.7}) EXPECT_LT(max_abs(mp.forcing(t, cube(8))), 1e-15);
}

TEST(Mms, ForcingBalancesTendency) {
  PhysicsParams p;
  p.nu = 0.05;
  MmsTerm a;
  a.fx = Trig::sin;
  a.sx = 1;
  a.fy = Trig::sin;
  a.sy = 2;
  a.fz = Trig::cos;
  a.sz = 1;
  a.ft = Trig::cos;
  a.omega = 1.3;
  MmsTerm b = a;
  b.fx = Trig::cos;
  b.sx = 2;
  b.sy = 1;
  b.coeff = 0.4;
  const MmsTarget target{{a, b}};
  const ManufacturedProblem mp = make_mms(cube(16), p, target);
  const double t = 0.7;
  const SpectralField qt = apply_operator_F(target.psi_t(cube(16), t), p.F);
  const SpectralField rhs = tendency(mp.exact_q(t), t, p, mp.forcing);
  EXPECT_LT(max_abs(rhs - qt), 1e-13);
}
