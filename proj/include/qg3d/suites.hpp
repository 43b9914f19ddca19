#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qg3d/config.hpp"
#include "qg3d/diagnostics.hpp"

namespace qg3d {

/// Relative residuals of the discrete neutrality identities on one state:
/// <tendency, q> / (|tendency| |q|) and the same with psi.
struct NeutralityResidual {
  double enstrophy = 0.0;
  double energy = 0.0;
};

NeutralityResidual neutrality_residual(const State& state);

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Runs the configured simulation and evaluates the invariant suite:
/// conservation, integral growth bounds, L^p interpolation, neutrality of the
/// discrete tendency, elliptic inversion, Parseval and divergence-free
/// velocity. Conservation and growth checks are only meaningful for nu = 0
/// and are skipped otherwise.
VerifyReport run_verify(const RunConfig& config, std::ostream* log = nullptr);

struct ConvergeReport {
  struct TemporalPoint {
    double dt = 0.0;
    double error = 0.0;
  };
  struct SpatialPoint {
    std::size_t n = 0;
    bool resolved = false;
    double error = 0.0;
  };
  double omega = 0.0;
  double period = 0.0;
  std::vector<TemporalPoint> temporal;
  std::vector<double> orders;
  std::vector<SpatialPoint> spatial;
  bool temporal_ok = false;
  bool spatial_ok = false;
  std::string message;
  bool passed() const { return temporal_ok && spatial_ok; }
};

/// Rossby-wave refinement study on the configured mode. Temporal: one wave
/// period with 64, 128 and 256 steps, observed orders must lie in [3.8, 4.2].
/// Spatial: relative max error of the semi-discrete tendency against the
/// exact dq/dt for n in {4, 8, 16, 32}; must be below 1e-10 wherever the mode
/// is resolved and n >= 8.
ConvergeReport run_converge(const RunConfig& config);

std::string format_checks(const std::vector<CheckResult>& checks);

}  // namespace qg3d
