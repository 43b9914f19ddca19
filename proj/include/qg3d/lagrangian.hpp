#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qg3d/field.hpp"
#include "qg3d/timestepper.hpp"

namespace qg3d {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Markers on one horizontal level z. `labels` are the starting positions a,
/// `integral` accumulates int_0^t v2(X(a,s), z, s) ds.
struct ParticleSet {
  std::vector<Point2> labels;
  std::vector<Point2> positions;
  std::vector<double> integral;
  double z_level = 0.0;

  ParticleSet() = default;
  ParticleSet(std::vector<Point2> a, double z)
      : labels(a), positions(std::move(a)), integral(labels.size(), 0.0), z_level(z) {}

  std::size_t size() const noexcept { return labels.size(); }
};

/// Evaluates the Fourier series of a spectral field on the plane z = const at
/// arbitrary (x, y), summing every nonzero retained mode.
class PlaneSampler {
public:
  PlaneSampler(const SpectralField& f, double z);

  double operator()(double x, double y) const;
  double operator()(Point2 p) const { return (*this)(p.x, p.y); }

private:
  GridSpec grid_;
  std::vector<Complex> plane_;  // (ix, iy), Hermitian weights folded in
  std::vector<std::size_t> active_x_, active_y_;
  std::vector<double> kx_, ky_;
};

/// Spectral horizontal velocity (v1, v2) = (-psi_y, psi_x).
struct HorizontalVelocity {
  SpectralField v1, v2;
};

HorizontalVelocity horizontal_velocity(const SpectralField& psi);
HorizontalVelocity horizontal_velocity_from_q(const SpectralField& q, double F);

std::vector<Point2> sample_velocity(const HorizontalVelocity& v, const std::vector<Point2>& points, double z);

Point2 wrap_into_box(Point2 p, const GridSpec& g);

using VelocityProvider = std::function<HorizontalVelocity(double)>;

/// RK4 step of dX/dt = (v1, v2)(X, z, t) for every particle, sampling the
/// velocity at t, t+dt/2 and t+dt. The v2 path integral is accumulated with
/// the same stage weights.
ParticleSet advance_particles(const ParticleSet& pset, const VelocityProvider& velocity_at, double t, double dt);

/// q(X(a,t), z, t) - q0(a, z) + beta * integral, per particle. With beta = 1
/// this is the Duhamel identity residual.
std::vector<double> duhamel_residual(const SpectralField& q_t, const ParticleSet& pset, const SpectralField& q0,
                                     double beta);

/// Advances an Eulerian state together with particle sets. The mid-step
/// velocity comes from cubic Hermite interpolation of q using the tendencies
/// at both ends of the step, which keeps the coupling fourth order.
class CoupledTracer {
public:
  explicit CoupledTracer(std::vector<ParticleSet> sets) : sets_(std::move(sets)) {}

  State step(const State& state, double dt, const Forcing& forcing);

  const std::vector<ParticleSet>& sets() const noexcept { return sets_; }
  std::size_t particle_count() const noexcept;

private:
  std::vector<ParticleSet> sets_;
  std::optional<SpectralField> cached_tendency_;
  double cached_time_ = 0.0;
};

/// `count` particles arranged on a regular lattice covering the plane.
std::vector<Point2> lattice_layout(const GridSpec& g, std::size_t count);
/// `count` uniformly random particles, deterministic for a seed.
std::vector<Point2> random_layout(const GridSpec& g, std::size_t count, std::uint64_t seed);

}  // namespace qg3d
