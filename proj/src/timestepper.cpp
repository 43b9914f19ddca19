#include "qg3d/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qg3d/error.hpp"
#include "qg3d/spectral.hpp"

namespace qg3d {

void StepControl::validate() const {
  if (mode == Mode::fixed && !(dt_fixed > 0.0)) throw ValidationError("time.dt > 0");
  if (!(cfl_number > 0.0 && cfl_number <= 1.0)) throw ValidationError("time.cfl in (0,1]");
  if (!(dt_min > 0.0) || !(dt_max > 0.0)) throw ValidationError("time.dt_min, time.dt_max > 0");
  if (dt_min > dt_max) throw ValidationError("time.dt_min <= time.dt_max");
}

double cfl_dt_from_speeds(double max_v1, double max_v2, double dx, double dy, const StepControl& control) {
  double limit = std::numeric_limits<double>::infinity();
  if (max_v1 > 0.0) limit = std::min(limit, dx / max_v1);
  if (max_v2 > 0.0) limit = std::min(limit, dy / max_v2);
  if (!std::isfinite(limit)) return control.dt_max;
  return std::clamp(control.cfl_number * limit, control.dt_min, control.dt_max);
}

double cfl_dt(const State& state, const StepControl& control) {
  const SpectralField psi = invert_operator_F(state.q, state.params.F);
  const PhysicalField v1 = inverse_transform(derivative(psi, Axis::y));
  const PhysicalField v2 = inverse_transform(derivative(psi, Axis::x));
  auto max_abs_of = [](const PhysicalField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
  };
  return cfl_dt_from_speeds(max_abs_of(v1), max_abs_of(v2), state.q.grid.dx(), state.q.grid.dy(), control);
}

namespace {

// exp(-nu |k|^2 h) per mode.
std::vector<double> viscous_factor(const GridSpec& g, double nu, double h) {
  const Wavenumbers w(g);
  std::vector<double> e(g.modes());
  std::size_t m = 0;
  for (std::size_t iz = 0; iz < g.nz; ++iz) {
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      for (std::size_t ix = 0; ix < g.nx_half(); ++ix, ++m) {
        const double k2 = w.kx[ix] * w.kx[ix] + w.ky[iy] * w.ky[iy] + w.kz[iz] * w.kz[iz];
        e[m] = std::exp(-nu * k2 * h);
      }
    }
  }
  return e;
}

void scale_modes(SpectralField& f, const std::vector<double>& e) {
  for (std::size_t m = 0; m < f.coeffs.size(); ++m) f.coeffs[m] *= e[m];
}

}  // namespace

State rk4_step(const State& state, double dt, const Forcing& forcing) {
  if (!(dt > 0.0)) throw ValidationError("rk4_step: dt > 0");
  const PhysicsParams& p = state.params;
  const double t = state.t;
  const SpectralField& q = state.q;
  State next{SpectralField{}, t + dt, p};

  if (p.nu > 0.0) {
    // Integrating-factor RK4 on the non-viscous part.
    const auto nl = [&](const SpectralField& u, double s) {
      return tendency(u, s, p, forcing, ViscousTerm::exclude);
    };
    const std::vector<double> e_half = viscous_factor(q.grid, p.nu, 0.5 * dt);
    const std::vector<double> e_full = viscous_factor(q.grid, p.nu, dt);

    const SpectralField k1 = nl(q, t);
    SpectralField a = q;
    axpy(a, 0.5 * dt, k1);
    scale_modes(a, e_half);
    const SpectralField k2 = nl(a, t + 0.5 * dt);

    SpectralField qh = q;
    scale_modes(qh, e_half);
    SpectralField b = qh;
    axpy(b, 0.5 * dt, k2);
    const SpectralField k3 = nl(b, t + 0.5 * dt);

    SpectralField c = q;
    scale_modes(c, e_full);
    SpectralField k3h = k3;
    scale_modes(k3h, e_half);
    axpy(c, dt, k3h);
    const SpectralField k4 = nl(c, t + dt);

    SpectralField k1f = k1;
    scale_modes(k1f, e_full);
    SpectralField k23 = k2 + k3;
    scale_modes(k23, e_half);

    next.q = q;
    scale_modes(next.q, e_full);
    axpy(next.q, dt / 6.0, k1f);
    axpy(next.q, dt / 3.0, k23);
    axpy(next.q, dt / 6.0, k4);
  } else {
    const auto f = [&](const SpectralField& u, double s) { return tendency(u, s, p, forcing); };
    const SpectralField k1 = f(q, t);
    SpectralField u = q;
    axpy(u, 0.5 * dt, k1);
    const SpectralField k2 = f(u, t + 0.5 * dt);
    u = q;
    axpy(u, 0.5 * dt, k2);
    const SpectralField k3 = f(u, t + 0.5 * dt);
    u = q;
    axpy(u, dt, k3);
    const SpectralField k4 = f(u, t + dt);

    next.q = q;
    axpy(next.q, dt / 6.0, k1);
    axpy(next.q, dt / 3.0, k2);
    axpy(next.q, dt / 3.0, k3);
    axpy(next.q, dt / 6.0, k4);
  }

  next.q.coeffs.front() = Complex{};
  if (!all_finite(next.q)) {
    std::ostringstream os;
    os.precision(17);
    os << "non-finite coefficient after step t = " << t << ", dt = " << dt;
    throw NonFinite(os.str(), t);
  }
  return next;
}

State run(State state, double t_end, const StepControl& control, const Forcing& forcing,
          const std::vector<Observer>& observers) {
  if (t_end < state.t) throw ValidationError("run: t_end >= state.t");
  control.validate();

  // Next output index per observer, on the absolute grid k * every.
  std::vector<long long> next_k(observers.size(), 0);
  auto event_time = [&](std::size_t i) { return static_cast<double>(next_k[i]) * observers[i].every; };
  for (std::size_t i = 0; i < observers.size(); ++i) {
    if (observers[i].every > 0.0) {
      next_k[i] = static_cast<long long>(std::floor(state.t / observers[i].every * (1.0 + 1e-12))) + 1;
    }
    observers[i].callback(state);
  }

  while (state.t < t_end) {
    double stop = t_end;
    for (std::size_t i = 0; i < observers.size(); ++i) {
      if (observers[i].every > 0.0) stop = std::min(stop, event_time(i));
    }
    double dt = control.mode == StepControl::Mode::fixed ? control.dt_fixed : cfl_dt(state, control);
    bool lands = false;
    if (state.t + dt * (1.0 + 1e-9) >= stop) {
      dt = stop - state.t;
      lands = true;
    }
    state = rk4_step(state, dt, forcing);
    if (lands) state.t = stop;

    const bool at_end = state.t >= t_end;
    for (std::size_t i = 0; i < observers.size(); ++i) {
      bool due = at_end;
      if (observers[i].every > 0.0) {
        while (event_time(i) <= state.t) {
          due = true;
          ++next_k[i];
        }
      }
      if (due) observers[i].callback(state);
    }
  }
  return state;
}

}  // namespace qg3d
