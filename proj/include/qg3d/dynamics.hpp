#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qg3d/field.hpp"

namespace qg3d {

struct PhysicsParams {
  double beta = 1.0;  ///< planetary vorticity gradient
  double nu = 0.0;    ///< isotropic viscosity
  double F = 1.0;     ///< stratification ratio weighting d^2/dz^2 in q
  /// Turning this off evaluates J(psi, q) with aliasing; only useful to show
  /// that the conservation checks can fail.
  bool dealias = true;

  void validate() const;
  friend bool operator==(const PhysicsParams&, const PhysicsParams&) = default;
};

/// External forcing term added to the q tendency.
class Forcing {
public:
  enum class Kind { none, tabulated, manufactured };
  using Evaluator = std::function<SpectralField(double)>;

  Forcing() = default;

  static Forcing none() { return {}; }
  /// Piecewise-linear interpolation in time between samples (clamped at ends).
  static Forcing tabulated(std::vector<std::pair<double, SpectralField>> samples);
  static Forcing manufactured(Evaluator evaluator);

  Kind kind() const noexcept { return kind_; }
  bool active() const noexcept { return kind_ != Kind::none; }

  /// Forcing at time t with its zero mode removed; zero field when kind is none.
  SpectralField operator()(double t, const GridSpec& grid) const;

private:
  Forcing(Kind k, Evaluator e) : kind_(k), evaluator_(std::move(e)) {}

  Kind kind_ = Kind::none;
  Evaluator evaluator_;
};

/// Dealiased pseudo-spectral J(psi, q) = psi_x q_y - psi_y q_x with zero mean.
/// With dealias = false the inputs and output are not truncated.
SpectralField jacobian(const SpectralField& psi, const SpectralField& q, bool dealias = true);

enum class ViscousTerm { include, exclude };

/// dq/dt = -J(psi, q) - beta psi_x + nu Lap q + forcing(t), psi = invert_operator_F(q).
SpectralField tendency(const SpectralField& q, double t, const PhysicsParams& params, const Forcing& forcing,
                       ViscousTerm viscous = ViscousTerm::include);

/// Same as tendency() but also hands back the stream function it inverted.
SpectralField tendency(const SpectralField& q, double t, const PhysicsParams& params, const Forcing& forcing,
                       ViscousTerm viscous, SpectralField& psi_out);

}  // namespace qg3d
