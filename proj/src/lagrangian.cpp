#include "qg3d/lagrangian.hpp"

#include <cmath>
#include <random>

#include "qg3d/error.hpp"
#include "qg3d/spectral.hpp"

namespace qg3d {

PlaneSampler::PlaneSampler(const SpectralField& f, double z) : grid_(f.grid) {
  const GridSpec& g = f.grid;
  const Wavenumbers w(g);
  const std::size_t nxh = g.nx_half();
  plane_.assign(nxh * g.ny, Complex{});
  for (std::size_t iz = 0; iz < g.nz; ++iz) {
    const Complex ez = std::polar(1.0, w.kz[iz] * z);
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      for (std::size_t ix = 0; ix < nxh; ++ix) {
        const Complex c = f(ix, iy, iz);
        if (c != Complex{}) plane_[ix + nxh * iy] += hermitian_weight(ix, g.nx) * c * ez;
      }
    }
  }
  std::vector<bool> ax(nxh, false), ay(g.ny, false);
  for (std::size_t iy = 0; iy < g.ny; ++iy) {
    for (std::size_t ix = 0; ix < nxh; ++ix) {
      if (plane_[ix + nxh * iy] != Complex{}) {
        ax[ix] = true;
        ay[iy] = true;
      }
    }
  }
  for (std::size_t ix = 0; ix < nxh; ++ix) {
    if (ax[ix]) active_x_.push_back(ix);
  }
  for (std::size_t iy = 0; iy < g.ny; ++iy) {
    if (ay[iy]) active_y_.push_back(iy);
  }
  kx_ = w.kx;
  ky_ = w.ky;
}

double PlaneSampler::operator()(double x, double y) const {
  const std::size_t nxh = grid_.nx_half();
  std::vector<Complex> ey(active_y_.size());
  for (std::size_t j = 0; j < active_y_.size(); ++j) ey[j] = std::polar(1.0, ky_[active_y_[j]] * y);
  double sum = 0.0;
  for (std::size_t ix : active_x_) {
    Complex row{};
    for (std::size_t j = 0; j < active_y_.size(); ++j) row += plane_[ix + nxh * active_y_[j]] * ey[j];
    sum += (row * std::polar(1.0, kx_[ix] * x)).real();
  }
  return sum;
}

HorizontalVelocity horizontal_velocity(const SpectralField& psi) {
  return {-1.0 * derivative(psi, Axis::y), derivative(psi, Axis::x)};
}

HorizontalVelocity horizontal_velocity_from_q(const SpectralField& q, double F) {
  return horizontal_velocity(invert_operator_F(q, F));
}

std::vector<Point2> sample_velocity(const HorizontalVelocity& v, const std::vector<Point2>& points, double z) {
  const PlaneSampler s1(v.v1, z);
  const PlaneSampler s2(v.v2, z);
  std::vector<Point2> out;
  out.reserve(points.size());
  for (const Point2& p : points) out.push_back({s1(p), s2(p)});
  return out;
}

Point2 wrap_into_box(Point2 p, const GridSpec& g) {
  auto wrap = [](double v, double l) {
    double r = std::fmod(v, l);
    if (r < 0.0) r += l;
    return r >= l ? 0.0 : r;
  };
  return {wrap(p.x, g.lx), wrap(p.y, g.ly)};
}

ParticleSet advance_particles(const ParticleSet& pset, const VelocityProvider& velocity_at, double t, double dt) {
  if (!(dt > 0.0)) throw ValidationError("advance_particles: dt > 0");
  const HorizontalVelocity v0 = velocity_at(t);
  const HorizontalVelocity vh = velocity_at(t + 0.5 * dt);
  const HorizontalVelocity v1 = velocity_at(t + dt);
  const GridSpec& g = v0.v1.grid;
  const double z = pset.z_level;
  const PlaneSampler a1(v0.v1, z), a2(v0.v2, z);
  const PlaneSampler b1(vh.v1, z), b2(vh.v2, z);
  const PlaneSampler c1(v1.v1, z), c2(v1.v2, z);

  ParticleSet out = pset;
  for (std::size_t i = 0; i < pset.size(); ++i) {
    const Point2 x = pset.positions[i];
    const Point2 k1{a1(x), a2(x)};
    const Point2 x2{x.x + 0.5 * dt * k1.x, x.y + 0.5 * dt * k1.y};
    const Point2 k2{b1(x2), b2(x2)};
    const Point2 x3{x.x + 0.5 * dt * k2.x, x.y + 0.5 * dt * k2.y};
    const Point2 k3{b1(x3), b2(x3)};
    const Point2 x4{x.x + dt * k3.x, x.y + dt * k3.y};
    const Point2 k4{c1(x4), c2(x4)};
    const Point2 next{x.x + dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
                      x.y + dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
    out.positions[i] = wrap_into_box(next, g);
    out.integral[i] += dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
  }
  return out;
}

std::vector<double> duhamel_residual(const SpectralField& q_t, const ParticleSet& pset, const SpectralField& q0,
                                     double beta) {
  const PlaneSampler now(q_t, pset.z_level);
  const PlaneSampler initial(q0, pset.z_level);
  std::vector<double> r(pset.size());
  for (std::size_t i = 0; i < pset.size(); ++i) {
    r[i] = now(pset.positions[i]) - initial(pset.labels[i]) + beta * pset.integral[i];
  }
  return r;
}

std::size_t CoupledTracer::particle_count() const noexcept {
  std::size_t n = 0;
  for (const auto& s : sets_) n += s.size();
  return n;
}

State CoupledTracer::step(const State& state, double dt, const Forcing& forcing) {
  const PhysicsParams& p = state.params;
  SpectralField t0 = cached_tendency_ && cached_time_ == state.t ? *cached_tendency_
                                                                  : tendency(state.q, state.t, p, forcing);
  State next = rk4_step(state, dt, forcing);
  const SpectralField t1 = tendency(next.q, next.t, p, forcing);

  SpectralField mid = 0.5 * (state.q + next.q);
  axpy(mid, dt / 8.0, t0);
  axpy(mid, -dt / 8.0, t1);

  const HorizontalVelocity v0 = horizontal_velocity_from_q(state.q, p.F);
  const HorizontalVelocity vm = horizontal_velocity_from_q(mid, p.F);
  const HorizontalVelocity v1 = horizontal_velocity_from_q(next.q, p.F);
  const double t_start = state.t;
  const VelocityProvider provider = [&](double t) -> HorizontalVelocity {
    if (t == t_start) return v0;
    if (t == t_start + dt) return v1;
    return vm;
  };
  for (auto& s : sets_) s = advance_particles(s, provider, t_start, dt);

  cached_tendency_ = t1;
  cached_time_ = next.t;
  return next;
}

std::vector<Point2> lattice_layout(const GridSpec& g, std::size_t count) {
  std::vector<Point2> pts;
  if (count == 0) return pts;
  const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
  const double hx = g.lx / static_cast<double>(side);
  const double hy = g.ly / static_cast<double>(side);
  for (std::size_t j = 0; j < side && pts.size() < count; ++j) {
    for (std::size_t i = 0; i < side && pts.size() < count; ++i) {
      pts.push_back({(static_cast<double>(i) + 0.5) * hx, (static_cast<double>(j) + 0.5) * hy});
    }
  }
  return pts;
}

std::vector<Point2> random_layout(const GridSpec& g, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, g.lx), uy(0.0, g.ly);
  std::vector<Point2> pts(count);
  for (auto& p : pts) {
    p.x = ux(rng);
    p.y = uy(rng);
  }
  return pts;
}

}  // namespace qg3d
