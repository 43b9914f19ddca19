#include "qg3d/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "qg3d/error.hpp"
#include "qg3d/spectral.hpp"

namespace qg3d {

void PhysicsParams::validate() const {
  if (!(nu >= 0.0)) throw ValidationError("physics.nu >= 0");
  if (!(F > 0.0)) throw ValidationError("physics.F > 0");
  if (!std::isfinite(beta)) throw ValidationError("physics.beta must be finite");
}

Forcing Forcing::tabulated(std::vector<std::pair<double, SpectralField>> samples) {
  if (samples.empty()) throw ValidationError("tabulated forcing needs at least one sample");
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  auto table = std::make_shared<std::vector<std::pair<double, SpectralField>>>(std::move(samples));
  return Forcing(Kind::tabulated, [table](double t) {
    const auto& s = *table;
    if (t <= s.front().first) return s.front().second;
    if (t >= s.back().first) return s.back().second;
    auto hi = std::upper_bound(s.begin(), s.end(), t, [](double v, const auto& e) { return v < e.first; });
    auto lo = hi - 1;
    const double w = (t - lo->first) / (hi->first - lo->first);
    SpectralField out = (1.0 - w) * lo->second;
    axpy(out, w, hi->second);
    return out;
  });
}

Forcing Forcing::manufactured(Evaluator evaluator) { return Forcing(Kind::manufactured, std::move(evaluator)); }

SpectralField Forcing::operator()(double t, const GridSpec& grid) const {
  if (kind_ == Kind::none) return SpectralField(grid);
  SpectralField f = evaluator_(t);
  require_same_grid(f.grid, grid, "forcing");
  f.coeffs.front() = Complex{};
  return f;
}

SpectralField jacobian(const SpectralField& psi, const SpectralField& q, bool dealias_terms) {
  require_same_grid(psi.grid, q.grid, "jacobian");
  // Truncated inputs keep every product mode below 2n/3, so aliases never
  // land on a retained mode.
  PhysicalField prod = inverse_derivative(psi, Axis::x, dealias_terms);
  {
    const PhysicalField qy = inverse_derivative(q, Axis::y, dealias_terms);
    for (std::size_t i = 0; i < prod.values.size(); ++i) prod.values[i] *= qy.values[i];
  }
  {
    const PhysicalField py = inverse_derivative(psi, Axis::y, dealias_terms);
    const PhysicalField qx = inverse_derivative(q, Axis::x, dealias_terms);
    for (std::size_t i = 0; i < prod.values.size(); ++i) prod.values[i] -= py.values[i] * qx.values[i];
  }
  SpectralField out = forward_transform(prod);
  if (dealias_terms) dealias_in_place(out);
  out.coeffs.front() = Complex{};
  return out;
}

SpectralField tendency(const SpectralField& q, double t, const PhysicsParams& params, const Forcing& forcing,
                       ViscousTerm viscous, SpectralField& psi_out) {
  psi_out = invert_operator_F(q, params.F);
  SpectralField rhs = jacobian(psi_out, q, params.dealias);
  rhs *= -1.0;
  if (params.beta != 0.0) axpy(rhs, -params.beta, derivative(psi_out, Axis::x));
  if (viscous == ViscousTerm::include && params.nu > 0.0) axpy(rhs, params.nu, apply_laplacian(q));
  if (forcing.active()) rhs += forcing(t, q.grid);
  rhs.coeffs.front() = Complex{};
  return rhs;
}

SpectralField tendency(const SpectralField& q, double t, const PhysicsParams& params, const Forcing& forcing,
                       ViscousTerm viscous) {
  SpectralField psi;
  return tendency(q, t, params, forcing, viscous, psi);
}

}  // namespace qg3d
