#pragma once

#include <array>

#include "qg3d/field.hpp"

namespace qg3d {

/// Forward transform scaled so the zero mode is the box mean.
SpectralField forward_transform(const PhysicalField& f);
PhysicalField inverse_transform(const SpectralField& f);

/// Multiply by i*k_axis; the Nyquist coefficient along `axis` is zeroed.
SpectralField derivative(const SpectralField& f, Axis axis);

/// inverse_transform(derivative(f, axis)), optionally of the 2/3-truncated f,
/// without the intermediate spectral field.
PhysicalField inverse_derivative(const SpectralField& f, Axis axis, bool truncate = false);

/// Second derivative d^2/d(a)d(b). Nyquist coefficients are zeroed on each
/// axis that is differentiated an odd number of times.
SpectralField second_derivative(const SpectralField& f, Axis a, Axis b);

/// q = psi_xx + psi_yy + F^2 psi_zz, i.e. multiply by -(kx^2 + ky^2 + F^2 kz^2).
SpectralField apply_operator_F(const SpectralField& psi, double F);

/// Inverse of apply_operator_F on zero-mean fields; the result has zero mean.
/// Throws NonZeroMean when |q_0| > 1e-12 * ||q||_{L2}.
SpectralField invert_operator_F(const SpectralField& q, double F);

/// Isotropic Laplacian, multiply by -(kx^2 + ky^2 + kz^2).
SpectralField apply_laplacian(const SpectralField& f);

/// 2/3-rule truncation: zero modes with |s| > n/3 on any axis.
SpectralField dealias(const SpectralField& f);
void dealias_in_place(SpectralField& f);
bool is_retained(long s, std::size_t n) noexcept;

struct Velocity {
  PhysicalField v1, v2, v3;
};

/// v = (-psi_y, psi_x, psi_z) in physical space.
Velocity velocity_from_stream(const SpectralField& psi);

/// Weight of a half-spectrum x index in sums over the full spectrum (1 or 2).
double hermitian_weight(std::size_t ix, std::size_t nx) noexcept;

/// Real inner product <a,b> = box average of a*b, evaluated spectrally.
double inner_product(const SpectralField& a, const SpectralField& b);

/// Box average of f^2, evaluated spectrally (Parseval).
double mean_square(const SpectralField& f);

/// Enforce f(-k) = conj(f(k)) on the self-conjugate planes of the half
/// spectrum (ix = 0 and the x Nyquist plane), keeping the canonical half.
void enforce_hermitian(SpectralField& f);

/// Largest |coefficient|.
double max_abs(const SpectralField& f);

/// True when every coefficient is finite.
bool all_finite(const SpectralField& f);

}  // namespace qg3d
