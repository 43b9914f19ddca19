#include "qg3d/suites.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qg3d/driver.hpp"
#include "qg3d/error.hpp"
#include "qg3d/initcond.hpp"
#include "qg3d/spectral.hpp"

namespace qg3d {

NeutralityResidual neutrality_residual(const State& state) {
  PhysicsParams p = state.params;
  p.nu = 0.0;
  SpectralField psi;
  const SpectralField rhs = tendency(state.q, state.t, p, Forcing::none(), ViscousTerm::include, psi);
  const double nt = std::sqrt(mean_square(rhs));
  const double nq = std::sqrt(mean_square(state.q));
  const double np = std::sqrt(mean_square(psi));
  NeutralityResidual r;
  if (nt > 0.0 && nq > 0.0) r.enstrophy = std::abs(inner_product(rhs, state.q)) / (nt * nq);
  if (nt > 0.0 && np > 0.0) r.energy = std::abs(inner_product(rhs, psi)) / (nt * np);
  return r;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport run_verify(const RunConfig& config, std::ostream* log) {
  VerifyReport report;
  RunOptions opt;
  opt.write_outputs = false;
  opt.log = log;
  const RunOutcome run = run_simulation(config, opt);
  if (run.exit_code == exit_code::non_finite) {
    report.checks.push_back(CheckResult::make("run completes", 1.0, 0.0, 0.0, run.failure_time.value_or(0.0)));
    return report;
  }
  report.checks = run.checks;
  if (config.physics.nu == 0.0 && run.history.size() < 2 && config.checks.growth) {
    report.checks.push_back(CheckResult::make("growth bounds need >= 2 records", 1.0, 0.0, 0.0, 0.0));
  }
  report.checks.push_back(check_interpolation(run.history));

  // Identities on seeded random states at the configured resolution.
  const ShellBand band = effective_band(config);
  double worst_enstrophy = 0.0, worst_energy = 0.0, worst_inverse = 0.0, worst_parseval = 0.0, worst_div = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const State s = make_random(config.grid, config.physics, -2.0, 1.0, seed, band);
    const NeutralityResidual nr = neutrality_residual(s);
    worst_enstrophy = std::max(worst_enstrophy, nr.enstrophy);
    worst_energy = std::max(worst_energy, nr.energy);

    const SpectralField back = apply_operator_F(invert_operator_F(s.q, s.params.F), s.params.F);
    worst_inverse = std::max(worst_inverse, max_abs(back - s.q) / max_abs(s.q));

    const double l2 = lp_norm(inverse_transform(s.q), 2.0);
    worst_parseval = std::max(worst_parseval, std::abs(l2 - sobolev_norm(s.q, 0.0)) / l2);

    const SpectralField psi = invert_operator_F(s.q, s.params.F);
    const SpectralField v1 = -1.0 * derivative(psi, Axis::y);
    const SpectralField v2 = derivative(psi, Axis::x);
    const SpectralField div = derivative(v1, Axis::x) + derivative(v2, Axis::y);
    const double scale = std::max(max_abs(derivative(v1, Axis::x)), 1e-300);
    worst_div = std::max(worst_div, lp_norm(inverse_transform(div), INFINITY) / scale);
  }
  report.checks.push_back(CheckResult::make("enstrophy neutrality <T,q>", worst_enstrophy, 1e-12, 0.0, 0.0));
  report.checks.push_back(CheckResult::make("energy neutrality <T,psi>", worst_energy, 1e-12, 0.0, 0.0));
  report.checks.push_back(CheckResult::make("operator inversion identity", worst_inverse, 1e-12, 0.0, 0.0));
  report.checks.push_back(CheckResult::make("Parseval", worst_parseval, 1e-12, 0.0, 0.0));
  report.checks.push_back(CheckResult::make("horizontal divergence", worst_div, 1e-12, 0.0, 0.0));
  return report;
}

ConvergeReport run_converge(const RunConfig& config) {
  ConvergeReport rep;
  const ModeIndex s = config.ic.mode;
  const double amplitude = config.ic.amplitude != 0.0 ? config.ic.amplitude : 1.0;
  PhysicsParams p = config.physics;
  p.nu = 0.0;

  // Temporal error does not depend on n for a single mode, so a small grid
  // that still resolves the mode is used.
  GridSpec tg = config.grid;
  auto shrink = [](std::size_t n, long freq) {
    if (n == 1) return n;
    std::size_t m = 8;
    while (m < n && 3 * static_cast<std::size_t>(std::abs(freq)) > m) m *= 2;
    return std::min(n, m);
  };
  tg.nx = shrink(tg.nx, s.sx);
  tg.ny = shrink(tg.ny, s.sy);
  tg.nz = shrink(tg.nz, s.sz);

  const RossbyWave wave = make_rossby(tg, p, s, amplitude);
  rep.omega = wave.omega;
  if (wave.omega == 0.0) {
    rep.message = "mode has zero frequency (beta = 0 or kx = 0); temporal order is undefined";
  } else {
    rep.period = 2.0 * std::numbers::pi / std::abs(wave.omega);
    const SpectralField exact = wave.exact_q(rep.period);
    const double scale = max_abs(exact);
    for (int steps : {64, 128, 256}) {
      StepControl c;
      c.mode = StepControl::Mode::fixed;
      c.dt_fixed = rep.period / steps;
      c.dt_max = std::max(c.dt_max, c.dt_fixed);
      const State end = run(wave.state, rep.period, c, Forcing::none());
      rep.temporal.push_back({c.dt_fixed, max_abs(end.q - exact) / scale});
    }
    rep.temporal_ok = true;
    for (std::size_t i = 1; i < rep.temporal.size(); ++i) {
      const double order = std::log2(rep.temporal[i - 1].error / rep.temporal[i].error);
      rep.orders.push_back(order);
      if (!(order >= 3.8 && order <= 4.2)) rep.temporal_ok = false;
    }
  }

  rep.spatial_ok = true;
  for (std::size_t n : {4, 8, 16, 32}) {
    GridSpec g = config.grid;
    if (g.nx > 1) g.nx = n;
    if (g.ny > 1) g.ny = n;
    if (g.nz > 1) g.nz = n;
    ConvergeReport::SpatialPoint pt;
    pt.n = n;
    pt.resolved = (g.nx == 1 ? s.sx == 0 : is_retained(s.sx, g.nx) && 2 * std::abs(s.sx) < static_cast<long>(g.nx)) &&
                  (g.ny == 1 ? s.sy == 0 : is_retained(s.sy, g.ny) && 2 * std::abs(s.sy) < static_cast<long>(g.ny)) &&
                  (g.nz == 1 ? s.sz == 0 : is_retained(s.sz, g.nz) && 2 * std::abs(s.sz) < static_cast<long>(g.nz));
    if (!pt.resolved) {
      rep.spatial.push_back(pt);
      continue;
    }
    const RossbyWave w = make_rossby(g, p, s, amplitude);
    const double t = config.t_end;
    const SpectralField q = w.exact_q(t);
    // q = Q cos(k.x - omega t)  =>  dq/dt = Q omega cos(k.x - omega t - pi/2)
    SpectralField dq(g);
    add_cosine_mode(dq, s, -w.K2 * amplitude * w.omega, -w.omega * t - std::numbers::pi / 2.0);
    const SpectralField rhs = tendency(q, t, p, Forcing::none());
    pt.error = max_abs(rhs - dq) / max_abs(q);
    if (n >= 8 && !(pt.error <= 1e-10)) rep.spatial_ok = false;
    rep.spatial.push_back(pt);
  }
  return rep;
}

std::string format_checks(const std::vector<CheckResult>& checks) {
  std::ostringstream os;
  os << std::left << std::setw(34) << "check" << std::setw(7) << "result" << std::right << std::setw(14) << "lhs"
     << std::setw(14) << "rhs" << std::setw(14) << "slack" << std::setw(10) << "t" << '\n';
  os << std::scientific << std::setprecision(4);
  for (const auto& c : checks) {
    os << std::left << std::setw(34) << c.name << std::setw(7) << (c.passed ? "PASS" : "FAIL") << std::right
       << std::setw(14) << c.bound_lhs << std::setw(14) << c.bound_rhs << std::setw(14) << c.slack << std::setw(10)
       << std::defaultfloat << std::setprecision(4) << c.t << std::scientific << '\n';
  }
  return os.str();
}

}  // namespace qg3d
