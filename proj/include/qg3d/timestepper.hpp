#pragma once

#include <functional>
#include <vector>

#include "qg3d/dynamics.hpp"
#include "qg3d/field.hpp"

namespace qg3d {

/// Prognostic state: spectral potential vorticity at time t.
struct State {
  SpectralField q;
  double t = 0.0;
  PhysicsParams params;
};

struct StepControl {
  enum class Mode { fixed, cfl };
  Mode mode = Mode::cfl;
  double dt_fixed = 1e-3;
  double cfl_number = 0.5;
  double dt_min = 1e-8;
  double dt_max = 0.1;

  void validate() const;
  friend bool operator==(const StepControl&, const StepControl&) = default;
};

/// clamp(cfl * min(dx/max|v1|, dy/max|v2|), dt_min, dt_max); a zero speed
/// imposes no limit.
double cfl_dt_from_speeds(double max_v1, double max_v2, double dx, double dy, const StepControl& control);
double cfl_dt(const State& state, const StepControl& control);

/// One classical RK4 step. With nu > 0 the viscous term is integrated exactly
/// through an integrating factor. Throws NonFinite on NaN/Inf output.
State rk4_step(const State& state, double dt, const Forcing& forcing);

/// Called with read-only snapshots at every multiple of `every` (absolute
/// time), at the start of the run and at t_end.
struct Observer {
  double every = 0.0;
  std::function<void(const State&)> callback;
};

/// Step from state.t to exactly t_end; the step before each observer time or
/// t_end is truncated to land on it.
State run(State state, double t_end, const StepControl& control, const Forcing& forcing,
          const std::vector<Observer>& observers = {});

}  // namespace qg3d
