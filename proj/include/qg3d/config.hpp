#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "qg3d/dynamics.hpp"
#include "qg3d/grid.hpp"
#include "qg3d/initcond.hpp"
#include "qg3d/timestepper.hpp"

namespace qg3d {

struct ICSpec {
  enum class Kind { rossby, random_spectrum, gaussian_blob, zonal, file };
  Kind kind = Kind::rossby;
  // rossby
  ModeIndex mode{1, 1, 1};
  double amplitude = 1.0;
  // random_spectrum; band_hi = 0 selects min(n)/4
  double slope = -2.0;
  double energy = 1.0;
  std::uint64_t seed = 42;
  long band_lo = 2;
  long band_hi = 0;
  // gaussian_blob (amplitude shared with rossby/zonal)
  std::array<double, 3> center{std::numbers::pi, std::numbers::pi, std::numbers::pi};
  double width = 0.5;
  // zonal: psi(y) samples, empty = amplitude * cos(2 pi y / Ly)
  std::vector<double> profile;
  // file
  std::string path;

  friend bool operator==(const ICSpec&, const ICSpec&) = default;
};

struct OutputConfig {
  std::string directory = "qg3d_out";
  double record_every = 0.1;
  double snapshot_every = 0.0;    ///< 0 disables periodic snapshots
  double checkpoint_every = 0.5;  ///< 0 disables checkpoints
  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct ChecksConfig {
  double tol_conservation = 1e-6;
  double tol_growth = 1e-3;
  bool conservation = true;
  bool growth = true;
  friend bool operator==(const ChecksConfig&, const ChecksConfig&) = default;
};

struct LagrangianConfig {
  bool enabled = false;
  std::size_t particles = 512;  ///< total over all z levels
  std::vector<double> z_levels{0.0};
  std::string layout = "lattice";  ///< lattice | random
  std::uint64_t seed = 7;
  friend bool operator==(const LagrangianConfig&, const LagrangianConfig&) = default;
};

struct RunConfig {
  GridSpec grid;
  PhysicsParams physics;
  ICSpec ic;
  StepControl time;
  double t_end = 1.0;
  OutputConfig output;
  ChecksConfig checks;
  LagrangianConfig lagrangian;
  std::size_t max_particles = 4096;
  int sobolev_m = 4;

  /// Throws ValidationError naming the violated invariant.
  void validate() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses `key = value` lines with dotted keys and `#` comments. Omitted keys
/// keep their defaults; unknown keys and malformed values throw ParseError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Every key, one per line, values at full precision; parse_config inverts it.
std::string serialize_config(const RunConfig& config);

/// FNV-1a of serialize_config().
std::uint64_t config_hash(const RunConfig& config);

/// The shell band make_random should use for this config.
ShellBand effective_band(const RunConfig& config);

}  // namespace qg3d
