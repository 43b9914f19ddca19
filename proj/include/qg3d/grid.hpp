#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

namespace qg3d {

enum class Axis { x, y, z };

/// Uniform periodic box [0,L_x)x[0,L_y)x[0,L_z) sampled on n_x*n_y*n_z points.
///
/// Physical samples are stored x-fastest. Spectral coefficients use the
/// real-to-complex half spectrum along x: n_x/2+1 modes, with y and z stored
/// in full (FFT ordering, negative frequencies in the upper half).
struct GridSpec {
  std::size_t nx = 64;
  std::size_t ny = 64;
  std::size_t nz = 64;
  double lx = 2.0 * std::numbers::pi;
  double ly = 2.0 * std::numbers::pi;
  double lz = 2.0 * std::numbers::pi;

  /// Throws ValidationError when an axis count is zero or odd (>1) or a length
  /// is not positive.
  void validate() const;

  std::size_t points() const noexcept { return nx * ny * nz; }
  std::size_t nx_half() const noexcept { return nx / 2 + 1; }
  std::size_t modes() const noexcept { return nx_half() * ny * nz; }

  double volume() const noexcept { return lx * ly * lz; }
  double dx() const noexcept { return lx / static_cast<double>(nx); }
  double dy() const noexcept { return ly / static_cast<double>(ny); }
  double dz() const noexcept { return lz / static_cast<double>(nz); }
  double cell_volume() const noexcept { return dx() * dy() * dz(); }

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return i + nx * (j + ny * k);
  }
  std::size_t mode_index(std::size_t ix, std::size_t iy, std::size_t iz) const noexcept {
    return ix + nx_half() * (iy + ny * iz);
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Signed integer frequency of FFT index `i` on an axis with `n` points.
/// The Nyquist index n/2 maps to -n/2.
inline long signed_frequency(std::size_t i, std::size_t n) noexcept {
  const auto si = static_cast<long>(i);
  const auto sn = static_cast<long>(n);
  return 2 * si < sn ? si : si - sn;
}

/// Per-axis wavenumber tables for a grid; x covers only the half spectrum.
struct Wavenumbers {
  std::vector<double> kx, ky, kz;
  std::vector<long> sx, sy, sz;
  // true where the index is the Nyquist frequency of an even axis with n > 1
  std::vector<char> nyq_x, nyq_y, nyq_z;

  explicit Wavenumbers(const GridSpec& g);
};

}  // namespace qg3d
