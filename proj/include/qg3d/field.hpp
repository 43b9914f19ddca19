#pragma once

#include <complex>
#include <vector>

#include "qg3d/grid.hpp"

namespace qg3d {

using Complex = std::complex<double>;

/// Real samples of one scalar on the grid, x-fastest.
struct PhysicalField {
  GridSpec grid;
  std::vector<double> values;

  PhysicalField() = default;
  explicit PhysicalField(const GridSpec& g) : grid(g), values(g.points(), 0.0) {}
  PhysicalField(const GridSpec& g, std::vector<double> v) : grid(g), values(std::move(v)) {}

  double& operator()(std::size_t i, std::size_t j, std::size_t k) { return values[grid.index(i, j, k)]; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return values[grid.index(i, j, k)]; }
};

/// Half-spectrum Fourier coefficients of a real field. The zero mode equals
/// the box mean; the coefficient of the (implicit) mode -k is conj of +k.
struct SpectralField {
  GridSpec grid;
  std::vector<Complex> coeffs;

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g) : grid(g), coeffs(g.modes(), Complex{}) {}

  Complex& operator()(std::size_t ix, std::size_t iy, std::size_t iz) { return coeffs[grid.mode_index(ix, iy, iz)]; }
  Complex operator()(std::size_t ix, std::size_t iy, std::size_t iz) const {
    return coeffs[grid.mode_index(ix, iy, iz)];
  }

  Complex zero_mode() const { return coeffs.front(); }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// a += s * b
void axpy(SpectralField& a, double s, const SpectralField& b);

/// Throws GridMismatch unless both grids are identical.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where);

}  // namespace qg3d
