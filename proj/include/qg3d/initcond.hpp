#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "qg3d/dynamics.hpp"
#include "qg3d/timestepper.hpp"

namespace qg3d {

/// Integer frequencies of a single Fourier mode (units of 2*pi/L per axis).
struct ModeIndex {
  long sx = 0;
  long sy = 0;
  long sz = 0;
  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Adds amplitude * cos(k.x + phase) to f. Throws ValidationError when the
/// mode is not representable on the grid.
void add_cosine_mode(SpectralField& f, ModeIndex s, double amplitude, double phase);

/// Exact linear Rossby wave psi = A cos(k.x - omega t), omega = -beta kx / K^2,
/// K^2 = kx^2 + ky^2 + F^2 kz^2. The Jacobian vanishes identically for it.
struct RossbyWave {
  State state;
  double omega = 0.0;
  double K2 = 0.0;
  std::function<SpectralField(double)> exact_q;
};

RossbyWave make_rossby(const GridSpec& grid, const PhysicsParams& params, ModeIndex s, double amplitude);

/// Shells are integer-rounded |s|; inclusive range.
struct ShellBand {
  long lo = 2;
  long hi = 8;
};

/// Random phases with the shell-summed q spectrum ~ shell^slope over the band,
/// scaled so ||q0||_L2 = energy. Bitwise reproducible for a seed. Throws
/// EmptyBand if no retained mode lies in the band.
State make_random(const GridSpec& grid, const PhysicsParams& params, double slope, double energy,
                  std::uint64_t seed, ShellBand band);

/// Periodized Gaussian q0 = A exp(-|x-c|^2 / (2 width^2)) with its mean removed.
State make_blob(const GridSpec& grid, const PhysicsParams& params, std::array<double, 3> center, double width,
                double amplitude);

/// Zonal flow from stream-function samples psi(y_j), j < ny.
State make_zonal(const GridSpec& grid, const PhysicsParams& params, const std::vector<double>& psi_profile);

enum class Trig { sin, cos };

/// coeff * fx(2 pi sx x/Lx) * fy(2 pi sy y/Ly) * fz(2 pi sz z/Lz) * ft(omega t)
struct MmsTerm {
  double coeff = 1.0;
  Trig fx = Trig::cos;
  long sx = 0;
  Trig fy = Trig::cos;
  long sy = 0;
  Trig fz = Trig::cos;
  long sz = 0;
  Trig ft = Trig::cos;
  double omega = 0.0;
};

/// Target stream function psi*(x, t) as a sum of separable trigonometric terms.
struct MmsTarget {
  std::vector<MmsTerm> terms;

  SpectralField psi(const GridSpec& grid, double t) const;
  SpectralField psi_t(const GridSpec& grid, double t) const;
};

struct ManufacturedProblem {
  State state;
  Forcing forcing;
  std::function<SpectralField(double)> exact_q;
};

/// Forcing = q*_t + J(psi*, q*) + beta psi*_x - nu Lap q*, so that q*(t) is an
/// exact solution of the forced equation.
ManufacturedProblem make_mms(const GridSpec& grid, const PhysicsParams& params, MmsTarget target);

}  // namespace qg3d
