#include "qg3d/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "qg3d/error.hpp"

namespace qg3d {

void GridSpec::validate() const {
  auto check_axis = [](std::size_t n, double l, const char* name) {
    if (n == 0) {
      throw ValidationError(std::string("grid.n") + name + " >= 1");
    }
    if (n > 1 && n % 2 != 0) {
      throw ValidationError(std::string("grid.n") + name + " must be even when > 1");
    }
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw ValidationError(std::string("grid.l") + name + " > 0");
    }
  };
  check_axis(nx, lx, "x");
  check_axis(ny, ly, "y");
  check_axis(nz, lz, "z");
}

Wavenumbers::Wavenumbers(const GridSpec& g) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const std::size_t nxh = g.nx_half();
  kx.resize(nxh);
  sx.resize(nxh);
  nyq_x.resize(nxh);
  for (std::size_t i = 0; i < nxh; ++i) {
    sx[i] = static_cast<long>(i);
    kx[i] = two_pi * static_cast<double>(i) / g.lx;
    nyq_x[i] = g.nx > 1 && 2 * i == g.nx;
  }
  auto fill = [&](std::size_t n, double l, std::vector<double>& k, std::vector<long>& s, std::vector<char>& nyq) {
    k.resize(n);
    s.resize(n);
    nyq.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = signed_frequency(i, n);
      k[i] = two_pi * static_cast<double>(s[i]) / l;
      nyq[i] = n > 1 && 2 * i == n;
    }
  };
  fill(g.ny, g.ly, ky, sy, nyq_y);
  fill(g.nz, g.lz, kz, sz, nyq_z);
}

// ---------------------------------------------------------------------------
// Field arithmetic

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
  if (!(a == b)) {
    std::ostringstream os;
    os << where << ": grid mismatch (" << a.nx << "x" << a.ny << "x" << a.nz << " vs " << b.nx << "x" << b.ny
       << "x" << b.nz << ")";
    throw GridMismatch(os.str());
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(grid, o.grid, "operator+=");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(grid, o.grid, "operator-=");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs) c *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

void axpy(SpectralField& a, double s, const SpectralField& b) {
  require_same_grid(a.grid, b.grid, "axpy");
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += s * b.coeffs[i];
}

// ---------------------------------------------------------------------------
// FFTW plans, one pair per grid shape, created on first use.

namespace {

struct FftPlans {
  std::size_t n_real = 0;
  std::size_t n_spec = 0;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  explicit FftPlans(const GridSpec& g) : n_real(g.points()), n_spec(g.modes()) {
    real = fftw_alloc_real(n_real);
    spec = fftw_alloc_complex(n_spec);
    const int n0 = static_cast<int>(g.nz);
    const int n1 = static_cast<int>(g.ny);
    const int n2 = static_cast<int>(g.nx);
    r2c = fftw_plan_dft_r2c_3d(n0, n1, n2, real, spec, FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r_3d(n0, n1, n2, spec, real, FFTW_ESTIMATE);
  }
  ~FftPlans() {
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
    fftw_free(real);
    fftw_free(spec);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

FftPlans& plans_for(const GridSpec& g) {
  using Key = std::tuple<std::size_t, std::size_t, std::size_t>;
  static std::map<Key, std::unique_ptr<FftPlans>> cache;
  const Key key{g.nx, g.ny, g.nz};
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<FftPlans>(g)).first;
  }
  return *it->second;
}

}  // namespace

SpectralField forward_transform(const PhysicalField& f) {
  SpectralField out(f.grid);
  std::lock_guard lock(plan_mutex());
  FftPlans& p = plans_for(f.grid);
  std::copy(f.values.begin(), f.values.end(), p.real);
  fftw_execute(p.r2c);
  const double scale = 1.0 / static_cast<double>(p.n_real);
  for (std::size_t i = 0; i < p.n_spec; ++i) {
    out.coeffs[i] = Complex(p.spec[i][0] * scale, p.spec[i][1] * scale);
  }
  return out;
}

PhysicalField inverse_transform(const SpectralField& f) {
  PhysicalField out(f.grid);
  std::lock_guard lock(plan_mutex());
  FftPlans& p = plans_for(f.grid);
  for (std::size_t i = 0; i < p.n_spec; ++i) {
    p.spec[i][0] = f.coeffs[i].real();
    p.spec[i][1] = f.coeffs[i].imag();
  }
  fftw_execute(p.c2r);
  std::copy(p.real, p.real + p.n_real, out.values.begin());
  return out;
}

// ---------------------------------------------------------------------------
// Spectral operators

namespace {

// Applies coeff *= symbol(ix, iy, iz) over the half spectrum.
template <class Symbol>
SpectralField multiply(const SpectralField& f, Symbol&& symbol) {
  SpectralField out(f.grid);
  const GridSpec& g = f.grid;
  const std::size_t nxh = g.nx_half();
  std::size_t m = 0;
  for (std::size_t iz = 0; iz < g.nz; ++iz) {
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      for (std::size_t ix = 0; ix < nxh; ++ix, ++m) {
        out.coeffs[m] = f.coeffs[m] * symbol(ix, iy, iz);
      }
    }
  }
  return out;
}

// inverse_transform of (f * symbol) without materializing the product.
template <class Symbol>
PhysicalField inverse_with_symbol(const SpectralField& f, Symbol&& symbol) {
  PhysicalField out(f.grid);
  const GridSpec& g = f.grid;
  std::lock_guard lock(plan_mutex());
  FftPlans& p = plans_for(g);
  const std::size_t nxh = g.nx_half();
  std::size_t m = 0;
  for (std::size_t iz = 0; iz < g.nz; ++iz) {
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      for (std::size_t ix = 0; ix < nxh; ++ix, ++m) {
        const Complex c = f.coeffs[m] * symbol(ix, iy, iz);
        p.spec[m][0] = c.real();
        p.spec[m][1] = c.imag();
      }
    }
  }
  fftw_execute(p.c2r);
  std::copy(p.real, p.real + p.n_real, out.values.begin());
  return out;
}

template <Axis A>
const std::vector<double>& k_of(const Wavenumbers& w) {
  if constexpr (A == Axis::x) return w.kx;
  else if constexpr (A == Axis::y) return w.ky;
  else return w.kz;
}

template <Axis A>
const std::vector<char>& nyq_of(const Wavenumbers& w) {
  if constexpr (A == Axis::x) return w.nyq_x;
  else if constexpr (A == Axis::y) return w.nyq_y;
  else return w.nyq_z;
}

template <Axis A>
constexpr std::size_t pick(std::size_t ix, std::size_t iy, std::size_t iz) {
  if constexpr (A == Axis::x) return ix;
  else if constexpr (A == Axis::y) return iy;
  else return iz;
}

// Symbol of d/d(axis), optionally restricted to the 2/3-retained modes.
template <Axis A>
auto derivative_symbol(const GridSpec& g, const Wavenumbers& w, bool truncate) {
  std::vector<char> keep_x(w.sx.size()), keep_y(w.sy.size()), keep_z(w.sz.size());
  for (std::size_t i = 0; i < keep_x.size(); ++i) keep_x[i] = !truncate || is_retained(w.sx[i], g.nx);
  for (std::size_t i = 0; i < keep_y.size(); ++i) keep_y[i] = !truncate || is_retained(w.sy[i], g.ny);
  for (std::size_t i = 0; i < keep_z.size(); ++i) keep_z[i] = !truncate || is_retained(w.sz[i], g.nz);
  return [&k = k_of<A>(w), &nyq = nyq_of<A>(w), keep_x = std::move(keep_x), keep_y = std::move(keep_y),
          keep_z = std::move(keep_z)](std::size_t ix, std::size_t iy, std::size_t iz) {
    const std::size_t i = pick<A>(ix, iy, iz);
    if (nyq[i] || !(keep_x[ix] && keep_y[iy] && keep_z[iz])) return Complex{};
    return Complex(0.0, k[i]);
  };
}

template <Axis A>
SpectralField derivative_impl(const SpectralField& f) {
  const Wavenumbers w(f.grid);
  return multiply(f, derivative_symbol<A>(f.grid, w, false));
}

template <Axis A>
PhysicalField inverse_derivative_impl(const SpectralField& f, bool truncate) {
  const Wavenumbers w(f.grid);
  return inverse_with_symbol(f, derivative_symbol<A>(f.grid, w, truncate));
}

template <Axis A, Axis B>
SpectralField second_derivative_impl(const SpectralField& f) {
  const Wavenumbers w(f.grid);
  const auto& ka = k_of<A>(w);
  const auto& kb = k_of<B>(w);
  if constexpr (A == B) {
    return multiply(f, [&](std::size_t ix, std::size_t iy, std::size_t iz) {
      const double ki = ka[pick<A>(ix, iy, iz)];
      return Complex(-ki * ki, 0.0);
    });
  } else {
    const auto& na = nyq_of<A>(w);
    const auto& nb = nyq_of<B>(w);
    return multiply(f, [&](std::size_t ix, std::size_t iy, std::size_t iz) {
      const std::size_t i = pick<A>(ix, iy, iz);
      const std::size_t j = pick<B>(ix, iy, iz);
      if (na[i] || nb[j]) return Complex{};
      return Complex(-ka[i] * kb[j], 0.0);
    });
  }
}

}  // namespace

SpectralField derivative(const SpectralField& f, Axis axis) {
  switch (axis) {
    case Axis::x: return derivative_impl<Axis::x>(f);
    case Axis::y: return derivative_impl<Axis::y>(f);
    default: return derivative_impl<Axis::z>(f);
  }
}

PhysicalField inverse_derivative(const SpectralField& f, Axis axis, bool truncate) {
  switch (axis) {
    case Axis::x: return inverse_derivative_impl<Axis::x>(f, truncate);
    case Axis::y: return inverse_derivative_impl<Axis::y>(f, truncate);
    default: return inverse_derivative_impl<Axis::z>(f, truncate);
  }
}

SpectralField second_derivative(const SpectralField& f, Axis a, Axis b) {
  if (a > b) std::swap(a, b);
  if (a == Axis::x && b == Axis::x) return second_derivative_impl<Axis::x, Axis::x>(f);
  if (a == Axis::x && b == Axis::y) return second_derivative_impl<Axis::x, Axis::y>(f);
  if (a == Axis::x && b == Axis::z) return second_derivative_impl<Axis::x, Axis::z>(f);
  if (a == Axis::y && b == Axis::y) return second_derivative_impl<Axis::y, Axis::y>(f);
  if (a == Axis::y && b == Axis::z) return second_derivative_impl<Axis::y, Axis::z>(f);
  return second_derivative_impl<Axis::z, Axis::z>(f);
}

SpectralField apply_operator_F(const SpectralField& psi, double F) {
  const Wavenumbers w(psi.grid);
  const double f2 = F * F;
  return multiply(psi, [&](std::size_t ix, std::size_t iy, std::size_t iz) {
    return Complex(-(w.kx[ix] * w.kx[ix] + w.ky[iy] * w.ky[iy] + f2 * w.kz[iz] * w.kz[iz]), 0.0);
  });
}

SpectralField invert_operator_F(const SpectralField& q, double F) {
  const double norm_l2 = std::sqrt(q.grid.volume() * mean_square(q));
  if (std::abs(q.zero_mode()) > 1e-12 * norm_l2) {
    std::ostringstream os;
    os.precision(17);
    os << "invert_operator_F: zero mode " << std::abs(q.zero_mode()) << " exceeds 1e-12*||q||_L2 = "
       << 1e-12 * norm_l2;
    throw NonZeroMean(os.str());
  }
  const Wavenumbers w(q.grid);
  const double f2 = F * F;
  return multiply(q, [&](std::size_t ix, std::size_t iy, std::size_t iz) {
    const double k2 = w.kx[ix] * w.kx[ix] + w.ky[iy] * w.ky[iy] + f2 * w.kz[iz] * w.kz[iz];
    return k2 > 0.0 ? Complex(-1.0 / k2, 0.0) : Complex{};
  });
}

SpectralField apply_laplacian(const SpectralField& f) {
  const Wavenumbers w(f.grid);
  return multiply(f, [&](std::size_t ix, std::size_t iy, std::size_t iz) {
    return Complex(-(w.kx[ix] * w.kx[ix] + w.ky[iy] * w.ky[iy] + w.kz[iz] * w.kz[iz]), 0.0);
  });
}

bool is_retained(long s, std::size_t n) noexcept {
  return 3 * static_cast<std::size_t>(std::abs(s)) <= n;
}

void dealias_in_place(SpectralField& f) {
  const GridSpec& g = f.grid;
  const Wavenumbers w(g);
  const std::size_t nxh = g.nx_half();
  std::size_t m = 0;
  for (std::size_t iz = 0; iz < g.nz; ++iz) {
    const bool keep_z = is_retained(w.sz[iz], g.nz);
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      const bool keep_yz = keep_z && is_retained(w.sy[iy], g.ny);
      for (std::size_t ix = 0; ix < nxh; ++ix, ++m) {
        if (!keep_yz || !is_retained(w.sx[ix], g.nx)) f.coeffs[m] = Complex{};
      }
    }
  }
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  dealias_in_place(out);
  return out;
}

Velocity velocity_from_stream(const SpectralField& psi) {
  Velocity v;
  v.v1 = inverse_derivative(psi, Axis::y);
  for (double& x : v.v1.values) x = -x;
  v.v2 = inverse_derivative(psi, Axis::x);
  v.v3 = inverse_derivative(psi, Axis::z);
  return v;
}

double hermitian_weight(std::size_t ix, std::size_t nx) noexcept {
  if (ix == 0) return 1.0;
  if (nx % 2 == 0 && 2 * ix == nx) return 1.0;
  return 2.0;
}

double inner_product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid, "inner_product");
  const GridSpec& g = a.grid;
  const std::size_t nxh = g.nx_half();
  double sum = 0.0;
  std::size_t m = 0;
  for (std::size_t iz = 0; iz < g.nz; ++iz) {
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
      for (std::size_t ix = 0; ix < nxh; ++ix, ++m) {
        const Complex& x = a.coeffs[m];
        const Complex& y = b.coeffs[m];
        sum += hermitian_weight(ix, g.nx) * (x.real() * y.real() + x.imag() * y.imag());
      }
    }
  }
  return sum;
}

double mean_square(const SpectralField& f) { return inner_product(f, f); }

void enforce_hermitian(SpectralField& f) {
  const GridSpec& g = f.grid;
  std::vector<std::size_t> planes{0};
  if (g.nx > 1) planes.push_back(g.nx / 2);
  for (std::size_t ix : planes) {
    for (std::size_t iz = 0; iz < g.nz; ++iz) {
      const std::size_t pz = (g.nz - iz) % g.nz;
      for (std::size_t iy = 0; iy < g.ny; ++iy) {
        const std::size_t py = (g.ny - iy) % g.ny;
        const std::size_t self = g.mode_index(ix, iy, iz);
        const std::size_t partner = g.mode_index(ix, py, pz);
        if (self == partner) {
          f.coeffs[self] = Complex(f.coeffs[self].real(), 0.0);
        } else if (self < partner) {
          f.coeffs[partner] = std::conj(f.coeffs[self]);
        }
      }
    }
  }
}

double max_abs(const SpectralField& f) {
  double m = 0.0;
  for (const auto& c : f.coeffs) m = std::max(m, std::abs(c));
  return m;
}

bool all_finite(const SpectralField& f) {
  return std::all_of(f.coeffs.begin(), f.coeffs.end(),
                     [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

}  // namespace qg3d
