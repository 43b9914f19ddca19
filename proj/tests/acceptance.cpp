// End-to-end acceptance runs. Prints one PASS/FAIL line per criterion and
// exits non-zero if any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qg3d/config.hpp"
#include "qg3d/diagnostics.hpp"
#include "qg3d/driver.hpp"
#include "qg3d/initcond.hpp"
#include "qg3d/lagrangian.hpp"
#include "qg3d/snapshot.hpp"
#include "qg3d/spectral.hpp"
#include "qg3d/suites.hpp"
#include "qg3d/timestepper.hpp"

using namespace qg3d;

namespace {

constexpr double pi = std::numbers::pi;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("criterion %2d  %-34s %s  %s\n", id, name, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

GridSpec cube(std::size_t n) {
  GridSpec g;
  g.nx = g.ny = g.nz = n;
  return g;
}

StepControl fixed_dt(double dt) {
  StepControl c;
  c.mode = StepControl::Mode::fixed;
  c.dt_fixed = dt;
  c.dt_max = std::max(c.dt_max, dt);
  return c;
}

RunConfig turbulence_config() {
  RunConfig c;
  c.grid = cube(64);
  c.physics = {};
  c.ic.kind = ICSpec::Kind::random_spectrum;
  c.ic.seed = 42;
  c.ic.band_lo = 2;
  c.ic.band_hi = 8;
  c.ic.energy = 1.0;
  c.time = fixed_dt(1e-3);
  c.t_end = 2.0;
  c.output.record_every = 0.1;
  c.checks.tol_conservation = 1e-6;
  c.checks.tol_growth = 1e-3;
  return c;
}

double max_abs_diff(const PhysicalField& a, const PhysicalField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

double max_abs(const PhysicalField& a) {
  double m = 0.0;
  for (double v : a.values) m = std::max(m, std::abs(v));
  return m;
}

// Criteria 1 and 4 share the 64^3 run.
void conservation_and_growth() {
  const RunConfig config = turbulence_config();
  RunOptions opts;
  opts.write_outputs = false;
  const RunOutcome out = run_simulation(config, opts);
  if (out.exit_code == exit_code::non_finite) {
    report(1, "conservation of ||v||, ||q||", false, "run blew up: " + out.message);
    report(4, "integral growth bounds", false, "run blew up");
    return;
  }
  const auto cons = check_conservation(out.history, 1e-6);
  double worst_v = 0.0, worst_q = 0.0;
  bool ok = true;
  for (const auto& c : cons) {
    ok = ok && c.passed;
    const double rel = c.bound_rhs > 0.0 ? c.bound_lhs * 1e-6 / c.bound_rhs : 0.0;
    if (c.name.rfind("v_", 0) == 0) worst_v = std::max(worst_v, rel);
    else worst_q = std::max(worst_q, rel);
  }
  report(1, "conservation of ||v||, ||q||", ok, fmt("drift_v=%.2e drift_q=%.2e (tol 1e-6)", worst_v, worst_q));

  const auto growth = check_growth_bounds(out.history, 1e-3, config.physics.beta);
  // The L^inf form with ||v2|| is the asserted one; the ||v|| form is weaker
  // and implied by it.
  bool gok = true;
  std::string detail;
  for (const auto& c : growth) {
    gok = gok && c.passed;
    detail += c.name + fmt(" rel_slack=%.3e; ", c.slack / c.bound_rhs);
  }
  report(4, "integral growth bounds", gok, detail + fmt("over %g records", double(out.history.size())));
}

void rossby_dispersion() {
  PhysicsParams p;
  const RossbyWave w = make_rossby(cube(32), p, {1, 1, 1}, 1.0);
  const State end = run(w.state, 5.0, fixed_dt(1e-3), Forcing::none());
  const std::size_t m = cube(32).mode_index(1, 1, 1);
  const Complex ratio = end.q.coeffs[m] / w.state.q.coeffs[m];
  const double measured = -std::arg(ratio) / end.t;
  const double rel = std::abs(measured - (-1.0 / 3.0)) / (1.0 / 3.0);

  // Semi-discrete floor: tendency error against the exact dq/dt.
  double floor = 0.0;
  for (std::size_t n : {8u, 16u, 32u}) {
    const RossbyWave r = make_rossby(cube(n), p, {1, 1, 1}, 1.0);
    const SpectralField dq = tendency(r.state.q, 0.0, p, Forcing::none());
    SpectralField exact = r.exact_q(0.0);
    for (auto& c : exact.coeffs) c *= Complex(0.0, -r.omega);
    const PhysicalField a = inverse_transform(dq);
    const PhysicalField b = inverse_transform(exact);
    floor = std::max(floor, max_abs_diff(a, b) / max_abs(b));
  }
  report(2, "Rossby dispersion", rel <= 1e-4 && floor <= 1e-10,
         fmt("omega=%.12f rel_err=%.2e spatial_floor=%.2e", measured, rel, floor));
}

void temporal_order() {
  // beta = 30 puts omega at -10 so the t = 1 error sits well above roundoff.
  PhysicsParams p;
  p.beta = 30.0;
  const GridSpec g = cube(16);
  const RossbyWave w = make_rossby(g, p, {1, 1, 1}, 1.0);
  const PhysicalField exact = inverse_transform(w.exact_q(1.0));
  std::vector<double> err;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    const State s = run(w.state, 1.0, fixed_dt(dt), Forcing::none());
    err.push_back(max_abs_diff(inverse_transform(s.q), exact) / max_abs(exact));
  }
  const double r1 = err[0] / err[1];
  const double r2 = err[1] / err[2];
  const bool ok = r1 >= 14.0 && r1 <= 18.0 && r2 >= 14.0 && r2 <= 18.0;
  report(3, "RK4 temporal order", ok,
         fmt("ratios %.3f %.3f", r1, r2) + fmt(" errors %.2e %.2e %.2e", err[0], err[1], err[2]));
}

void lagrangian_consistency() {
  RunConfig config = turbulence_config();
  config.t_end = 1.0;
  config.lagrangian.enabled = true;
  config.lagrangian.particles = 512;
  config.lagrangian.z_levels = {0.0, pi};
  RunOptions opts;
  opts.write_outputs = false;
  const TraceOutcome out = run_trace(config, opts);
  report(5, "Lagrangian-Eulerian consistency", out.max_residual <= 1e-5,
         fmt("max|residual|=%.2e over %g particles", out.max_residual, double(out.sets.size() * 256)));
}

// Supremum of |q| for the trigonometric interpolant on an n_z = 1 grid: the
// largest grid local maxima are refined by Newton iteration on grad q = 0.
double interpolant_sup(const SpectralField& q) {
  const GridSpec& g = q.grid;
  const PhysicalField f = inverse_transform(q);
  struct Cand {
    double v;
    std::size_t i, j;
  };
  std::vector<Cand> peaks;
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double v = std::abs(f(i, j, 0));
      bool peak = true;
      for (int dj = -1; dj <= 1 && peak; ++dj)
        for (int di = -1; di <= 1 && peak; ++di) {
          if (di == 0 && dj == 0) continue;
          const std::size_t ii = (i + g.nx + di) % g.nx, jj = (j + g.ny + dj) % g.ny;
          peak = std::abs(f(ii, jj, 0)) <= v;
        }
      if (peak) peaks.push_back({v, i, j});
    }
  }
  std::sort(peaks.begin(), peaks.end(), [](const Cand& a, const Cand& b) { return a.v > b.v; });
  if (peaks.size() > 8) peaks.resize(8);

  const PlaneSampler s(q, 0.0);
  const PlaneSampler sx(derivative(q, Axis::x), 0.0), sy(derivative(q, Axis::y), 0.0);
  const PlaneSampler sxx(second_derivative(q, Axis::x, Axis::x), 0.0);
  const PlaneSampler sxy(second_derivative(q, Axis::x, Axis::y), 0.0);
  const PlaneSampler syy(second_derivative(q, Axis::y, Axis::y), 0.0);
  double sup = peaks.empty() ? 0.0 : peaks.front().v;
  for (const Cand& c : peaks) {
    double x = c.i * g.dx(), y = c.j * g.dy();
    for (int it = 0; it < 20; ++it) {
      const double gx = sx(x, y), gy = sy(x, y);
      const double a = sxx(x, y), b = sxy(x, y), d = syy(x, y);
      const double det = a * d - b * b;
      if (det == 0.0) break;
      const double stepx = (d * gx - b * gy) / det, stepy = (a * gy - b * gx) / det;
      x -= stepx;
      y -= stepy;
      if (std::hypot(stepx, stepy) < 1e-14) break;
    }
    // Accept only if Newton stayed near the starting cell.
    if (std::hypot(x - c.i * g.dx(), y - c.j * g.dy()) < 2 * g.dx()) sup = std::max(sup, std::abs(s(x, y)));
  }
  return sup;
}

void euler_2d() {
  GridSpec g;
  g.nx = g.ny = 256;
  g.nz = 1;
  PhysicsParams p;
  p.beta = 0.0;
  // ||q0||_L2 = sqrt(V) gives rms(q0) = 1, about two eddy turnovers by t = 2.
  State s = make_random(g, p, -2.0, std::sqrt(g.volume()), 42, {2, 8});
  std::vector<DiagnosticsRecord> hist;
  std::vector<double> sup;
  const Observer obs{0.1, [&](const State& st) {
                       hist.push_back(record(st));
                       sup.push_back(interpolant_sup(st.q));
                     }};
  StepControl c;
  c.mode = StepControl::Mode::cfl;
  c.cfl_number = 0.5;
  c.dt_max = 1e-2;
  run(s, 2.0, c, Forcing::none(), {obs});

  const auto& h0 = hist.front();
  double d2 = 0.0, d4 = 0.0, d6 = 0.0, sup_up = 0.0, grid_up = 0.0;
  for (std::size_t k = 0; k < hist.size(); ++k) {
    const auto& r = hist[k];
    d2 = std::max(d2, std::abs(r.q_l2 - h0.q_l2) / h0.q_l2);
    d4 = std::max(d4, std::abs(r.q_l4 - h0.q_l4) / h0.q_l4);
    d6 = std::max(d6, std::abs(r.q_l6 - h0.q_l6) / h0.q_l6);
    sup_up = std::max(sup_up, (sup[k] - sup.front()) / sup.front());
    grid_up = std::max(grid_up, (r.q_linf - h0.q_linf) / h0.q_linf);
  }
  const bool ok = d2 <= 1e-5 && d4 <= 1e-5 && d6 <= 1e-5 && sup_up <= 1e-4;
  report(6, "2D Euler transport invariants", ok,
         fmt("drift L2=%.2e L4=%.2e L6=%.2e", d2, d4, d6) +
             fmt(" Linf rise=%.2e (grid-sample max %.2e)", sup_up, grid_up));
}

void manufactured() {
  PhysicsParams p;
  MmsTarget target;
  MmsTerm term;
  term.coeff = 1.0;
  term.fx = Trig::sin;
  term.sx = 1;
  term.fy = Trig::sin;
  term.sy = 1;
  term.fz = Trig::cos;
  term.sz = 0;
  term.ft = Trig::cos;
  term.omega = 1.0;
  target.terms = {term};
  const ManufacturedProblem mp = make_mms(cube(32), p, target);
  const State end = run(mp.state, 1.0, fixed_dt(1e-3), mp.forcing);
  const double err = max_abs_diff(inverse_transform(end.q), inverse_transform(mp.exact_q(1.0)));
  report(7, "manufactured solution", err <= 1e-10, fmt("max error=%.2e", err));
}

void viscous_mode() {
  PhysicsParams p;
  p.beta = 0.0;
  p.nu = 0.1;
  const GridSpec g = cube(16);
  const RossbyWave w = make_rossby(g, p, {1, 1, 1}, 1.0);
  const State end = run(w.state, 1.0, fixed_dt(1e-3), Forcing::none());
  const std::size_t m = g.mode_index(1, 1, 1);
  const double ratio = std::abs(end.q.coeffs[m]) / std::abs(w.state.q.coeffs[m]);
  const double rel = std::abs(ratio - std::exp(-0.3)) / std::exp(-0.3);
  report(8, "viscous decay", rel <= 1e-8, fmt("amplitude ratio=%.15f rel_err=%.2e", ratio, rel));
}

void neutrality() {
  PhysicsParams p;
  double worst_e = 0.0, worst_p = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    State s = make_random(cube(32), p, -2.0, 1.0, seed, {1, 10});
    const NeutralityResidual r = neutrality_residual(s);
    worst_e = std::max(worst_e, std::abs(r.enstrophy));
    worst_p = std::max(worst_p, std::abs(r.energy));
  }
  report(9, "tendency neutrality", worst_e <= 1e-12 && worst_p <= 1e-12,
         fmt("max rel <T,q>=%.2e <T,psi>=%.2e over 100 states", worst_e, worst_p));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void restart_and_roundtrip() {
  const auto root = std::filesystem::temp_directory_path() / "qg3d_acceptance";
  std::filesystem::remove_all(root);
  RunConfig c;
  c.grid = cube(16);
  c.ic.kind = ICSpec::Kind::random_spectrum;
  c.ic.seed = 3;
  c.ic.band_lo = 1;
  c.ic.band_hi = 4;
  c.time = fixed_dt(2e-3);
  c.output.record_every = 0.1;
  c.output.checkpoint_every = 0.5;

  RunConfig direct = c;
  direct.t_end = 1.0;
  direct.output.directory = (root / "direct").string();
  RunConfig first = c;
  first.t_end = 0.5;
  first.output.directory = (root / "first").string();
  RunConfig second = direct;
  second.output.directory = (root / "second").string();

  const RunOutcome a = run_simulation(direct);
  run_simulation(first);
  RunOptions ro;
  ro.restart_from = first.output.directory + "/checkpoint.qg3d";
  const RunOutcome b = run_simulation(second, ro);

  const PhysicalField qa = inverse_transform(a.final_state.q);
  const PhysicalField qb = inverse_transform(b.final_state.q);
  const double rel = max_abs_diff(qa, qb) / max_abs(qa);
  const bool bitwise_final = slurp(direct.output.directory + "/final.qg3d") ==
                             slurp(second.output.directory + "/final.qg3d");

  const State r = make_random(cube(16), PhysicsParams{}, -2.0, 1.0, 11, {1, 5});
  const std::string p1 = (root / "rt1.qg3d").string();
  const std::string p2 = (root / "rt2.qg3d").string();
  write_snapshot(r, p1);
  const Snapshot snap = read_snapshot_raw(p1);
  write_snapshot(snap, p2);
  const PhysicalField direct_q = inverse_transform(r.q);
  const bool samples_equal = snap.q.values == direct_q.values;
  const bool bytes_equal = slurp(p1) == slurp(p2);

  const bool ok = rel <= 1e-12 && samples_equal && bytes_equal;
  report(10, "checkpoint restart, snapshot I/O", ok,
         fmt("restart rel diff=%.2e final files bitwise=%g snapshot bitwise=%g", rel, bitwise_final,
             samples_equal && bytes_equal));
  std::filesystem::remove_all(root);
}

template <class F>
void timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    f();
  } catch (const std::exception& e) {
    std::printf("  exception: %s\n", e.what());
    ++failures;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("              (%.1f s)\n", secs);
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number, e.g. `qg3d_acceptance 3 7`.
  const std::vector<std::pair<std::vector<int>, void (*)()>> suites = {
      {{1, 4}, conservation_and_growth}, {{2}, rossby_dispersion}, {{3}, temporal_order},
      {{5}, lagrangian_consistency},     {{6}, euler_2d},          {{7}, manufactured},
      {{8}, viscous_mode},               {{9}, neutrality},        {{10}, restart_and_roundtrip}};
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  for (const auto& [ids, fn] : suites) {
    const bool selected = wanted.empty() || std::any_of(ids.begin(), ids.end(), [&](int id) {
                            return std::find(wanted.begin(), wanted.end(), id) != wanted.end();
                          });
    if (selected) timed(fn);
  }
  std::printf("%s: %d criterion failure(s)\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
