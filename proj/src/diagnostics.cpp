#include "qg3d/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "qg3d/error.hpp"
#include "qg3d/spectral.hpp"

namespace qg3d {

double lp_norm(const PhysicalField& f, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  for (double v : f.values) sum += std::pow(std::abs(v), p);
  return std::pow(sum * f.grid.cell_volume(), 1.0 / p);
}

double sobolev_norm(const SpectralField& f, double s) {
  const GridSpec& g = f.grid;
  const Wavenumbers w(g);
  double sum = 0.0;
  std::size_t m = 0;
  for (std::size_t iz = 0; iz < g.nz; ++iz) {
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      for (std::size_t ix = 0; ix < g.nx_half(); ++ix, ++m) {
        const double k2 = w.kx[ix] * w.kx[ix] + w.ky[iy] * w.ky[iy] + w.kz[iz] * w.kz[iz];
        sum += hermitian_weight(ix, g.nx) * std::pow(1.0 + k2, s) * std::norm(f.coeffs[m]);
      }
    }
  }
  return std::sqrt(sum * g.volume());
}

namespace {

// Pointwise Euclidean magnitude of a set of component fields.
template <std::size_t N>
PhysicalField magnitude(const std::array<const PhysicalField*, N>& parts) {
  PhysicalField out(parts[0]->grid);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    double s = 0.0;
    for (const PhysicalField* p : parts) s += p->values[i] * p->values[i];
    out.values[i] = std::sqrt(s);
  }
  return out;
}

constexpr double inf = std::numeric_limits<double>::infinity();

}  // namespace

DiagnosticsRecord record(const State& state, int m) {
  const SpectralField& qh = state.q;
  const SpectralField psi = invert_operator_F(qh, state.params.F);
  DiagnosticsRecord r;
  r.t = state.t;

  const PhysicalField q = inverse_transform(qh);
  r.q_l2 = lp_norm(q, 2.0);
  r.q_l4 = lp_norm(q, 4.0);
  r.q_l6 = lp_norm(q, 6.0);
  r.q_linf = lp_norm(q, inf);

  const SpectralField v1h = -1.0 * derivative(psi, Axis::y);
  const SpectralField v2h = derivative(psi, Axis::x);
  const SpectralField v3h = derivative(psi, Axis::z);
  const PhysicalField v1 = inverse_transform(v1h);
  const PhysicalField v2 = inverse_transform(v2h);
  const PhysicalField v3 = inverse_transform(v3h);
  const PhysicalField vmag = magnitude<3>({&v1, &v2, &v3});
  r.v_l2 = lp_norm(vmag, 2.0);
  r.v_linf = lp_norm(vmag, inf);
  r.v2_l6 = lp_norm(v2, 6.0);
  r.v2_linf = lp_norm(v2, inf);

  const PhysicalField qx = inverse_transform(derivative(qh, Axis::x));
  const PhysicalField qy = inverse_transform(derivative(qh, Axis::y));
  const PhysicalField qz = inverse_transform(derivative(qh, Axis::z));
  const PhysicalField dq = magnitude<3>({&qx, &qy, &qz});
  r.dq_l2 = lp_norm(dq, 2.0);
  r.dq_l3 = lp_norm(dq, 3.0);
  r.dq_l4 = lp_norm(dq, 4.0);

  {
    const PhysicalField xx = inverse_transform(second_derivative(qh, Axis::x, Axis::x));
    const PhysicalField yy = inverse_transform(second_derivative(qh, Axis::y, Axis::y));
    const PhysicalField zz = inverse_transform(second_derivative(qh, Axis::z, Axis::z));
    const PhysicalField xy = inverse_transform(second_derivative(qh, Axis::x, Axis::y));
    const PhysicalField xz = inverse_transform(second_derivative(qh, Axis::x, Axis::z));
    const PhysicalField yz = inverse_transform(second_derivative(qh, Axis::y, Axis::z));
    // Symmetric Hessian: off-diagonal entries count twice.
    PhysicalField hess(qh.grid);
    for (std::size_t i = 0; i < hess.values.size(); ++i) {
      hess.values[i] = std::sqrt(xx.values[i] * xx.values[i] + yy.values[i] * yy.values[i] +
                                 zz.values[i] * zz.values[i] +
                                 2.0 * (xy.values[i] * xy.values[i] + xz.values[i] * xz.values[i] +
                                        yz.values[i] * yz.values[i]));
    }
    r.d2q_l3 = lp_norm(hess, 3.0);
  }

  {
    const PhysicalField xx = inverse_transform(second_derivative(psi, Axis::x, Axis::x));
    const PhysicalField yy = inverse_transform(second_derivative(psi, Axis::y, Axis::y));
    const PhysicalField zz = inverse_transform(second_derivative(psi, Axis::z, Axis::z));
    const PhysicalField xy = inverse_transform(second_derivative(psi, Axis::x, Axis::y));
    const PhysicalField xz = inverse_transform(second_derivative(psi, Axis::x, Axis::z));
    const PhysicalField yz = inverse_transform(second_derivative(psi, Axis::y, Axis::z));
    // grad v rows: v1 = -psi_y -> (xy, yy, yz); v2 = psi_x -> (xx, xy, xz);
    // v3 = psi_z -> (xz, yz, zz).
    PhysicalField gv(qh.grid);
    for (std::size_t i = 0; i < gv.values.size(); ++i) {
      const double a = xx.values[i], b = yy.values[i], c = zz.values[i];
      const double d = xy.values[i], e = xz.values[i], f = yz.values[i];
      gv.values[i] = std::sqrt(a * a + b * b + c * c + 2.0 * (d * d + e * e + f * f));
    }
    r.grad_v_linf = lp_norm(gv, inf);
    r.grad_v_l2 = lp_norm(gv, 2.0);
    r.grad_v_l4 = lp_norm(gv, 4.0);
    r.grad_v_l6 = lp_norm(gv, 6.0);
  }

  r.hm_q = sobolev_norm(qh, m - 1);
  const double h1 = sobolev_norm(v1h, m), h2 = sobolev_norm(v2h, m), h3 = sobolev_norm(v3h, m);
  r.hm_v = std::sqrt(h1 * h1 + h2 * h2 + h3 * h3);
  return r;
}

CheckResult CheckResult::make(std::string name, double lhs, double rhs, double tolerance, double t) {
  CheckResult c;
  c.name = std::move(name);
  c.bound_lhs = lhs;
  c.bound_rhs = rhs;
  c.slack = rhs - lhs;
  c.tolerance = tolerance;
  c.passed = c.slack >= -tolerance;
  c.t = t;
  return c;
}

std::vector<CheckResult> check_conservation(const std::vector<DiagnosticsRecord>& history, double tol_rel) {
  if (history.empty()) throw InsufficientHistory("check_conservation: empty history");
  auto worst = [&](const char* name, double DiagnosticsRecord::*field) {
    const double x0 = history.front().*field;
    std::size_t arg = 0;
    double drift = 0.0;
    for (std::size_t i = 0; i < history.size(); ++i) {
      const double d = std::abs(history[i].*field - x0);
      if (d > drift) {
        drift = d;
        arg = i;
      }
    }
    return CheckResult::make(name, drift, tol_rel * x0, 0.0, history[arg].t);
  };
  return {worst("v_l2 conservation", &DiagnosticsRecord::v_l2),
          worst("q_l2 conservation", &DiagnosticsRecord::q_l2)};
}

std::vector<CheckResult> check_growth_bounds(const std::vector<DiagnosticsRecord>& history, double tol_rel,
                                             double beta) {
  if (history.size() < 2) throw InsufficientHistory("check_growth_bounds: needs at least 2 records");
  auto check = [&](const char* name, double DiagnosticsRecord::*lhs_field, double DiagnosticsRecord::*rate_field) {
    const double base = history.front().*lhs_field;
    double integral = 0.0;
    // The first record meets the bound with equality, so it is not a candidate.
    CheckResult worst;
    for (std::size_t i = 1; i < history.size(); ++i) {
      const double h = history[i].t - history[i - 1].t;
      integral += 0.5 * h * (history[i - 1].*rate_field + history[i].*rate_field);
      const double rhs = base + std::abs(beta) * integral;
      const CheckResult c = CheckResult::make(name, history[i].*lhs_field, rhs, tol_rel * rhs, history[i].t);
      if (i == 1 || c.slack + c.tolerance < worst.slack + worst.tolerance) worst = c;
    }
    return worst;
  };
  return {check("L6 growth (v2 form)", &DiagnosticsRecord::q_l6, &DiagnosticsRecord::v2_l6),
          check("Linf growth (v2 form)", &DiagnosticsRecord::q_linf, &DiagnosticsRecord::v2_linf),
          check("Linf growth (v form)", &DiagnosticsRecord::q_linf, &DiagnosticsRecord::v_linf)};
}

CheckResult check_interpolation(const std::vector<DiagnosticsRecord>& history) {
  if (history.empty()) throw InsufficientHistory("check_interpolation: empty history");
  CheckResult worst;
  bool first = true;
  for (const auto& r : history) {
    const double rhs = std::pow(r.q_l2, 0.25) * std::pow(r.q_l6, 0.75) * (1.0 + 1e-12);
    const CheckResult c = CheckResult::make("L4 interpolation", r.q_l4, rhs, 0.0, r.t);
    if (first || c.slack < worst.slack) worst = c;
    first = false;
  }
  return worst;
}

std::vector<RatioSample> monitor_ratios(const std::vector<DiagnosticsRecord>& history) {
  std::vector<RatioSample> out;
  out.reserve(history.size());
  auto ratio = [](double num, double den) -> std::optional<double> {
    if (!(den > 0.0)) return std::nullopt;
    return num / den;
  };
  for (const auto& r : history) {
    RatioSample s;
    s.t = r.t;
    s.cz_l2 = ratio(r.grad_v_l2, r.q_l2);
    s.cz_l4 = ratio(r.grad_v_l4, r.q_l4);
    s.gn = ratio(r.v_linf, std::pow(r.grad_v_l6, 0.75) * std::pow(r.v_l2, 0.25));
    const double g = 1.0 + r.t * r.t;
    s.q_l2_growth = r.q_l2 / g;
    s.q_l4_growth = r.q_l4 / g;
    s.q_l6_growth = r.q_l6 / g;
    s.q_linf_growth = r.q_linf / g;
    s.d2q_l3 = r.d2q_l3;
    out.push_back(s);
  }
  return out;
}

}  // namespace qg3d
