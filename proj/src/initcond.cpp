#include "qg3d/initcond.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "qg3d/error.hpp"
#include "qg3d/spectral.hpp"

namespace qg3d {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::size_t wrap_index(long s, std::size_t n) {
  const auto sn = static_cast<long>(n);
  return static_cast<std::size_t>(((s % sn) + sn) % sn);
}

void require_representable(long s, std::size_t n, const char* axis) {
  if (n == 1 ? s != 0 : 2 * std::abs(s) >= static_cast<long>(n)) {
    std::ostringstream os;
    os << "mode frequency " << s << " on axis " << axis << " is not representable with n = " << n;
    throw ValidationError(os.str());
  }
}

void zero_mean(SpectralField& f) { f.coeffs.front() = Complex{}; }

}  // namespace

void add_cosine_mode(SpectralField& f, ModeIndex s, double amplitude, double phase) {
  const GridSpec& g = f.grid;
  require_representable(s.sx, g.nx, "x");
  require_representable(s.sy, g.ny, "y");
  require_representable(s.sz, g.nz, "z");
  // cos(k.x + p) = (e^{i(k.x+p)} + e^{-i(k.x+p)}) / 2
  const Complex plus = 0.5 * amplitude * std::polar(1.0, phase);
  auto put = [&](long sx, long sy, long sz, Complex c) {
    f(static_cast<std::size_t>(sx), wrap_index(sy, g.ny), wrap_index(sz, g.nz)) += c;
  };
  if (s.sx > 0) {
    put(s.sx, s.sy, s.sz, plus);
  } else if (s.sx < 0) {
    put(-s.sx, -s.sy, -s.sz, std::conj(plus));
  } else if (s.sy == 0 && s.sz == 0) {
    f.coeffs.front() += amplitude * std::cos(phase);
  } else {
    put(0, s.sy, s.sz, plus);
    put(0, -s.sy, -s.sz, std::conj(plus));
  }
}

RossbyWave make_rossby(const GridSpec& grid, const PhysicsParams& params, ModeIndex s, double amplitude) {
  grid.validate();
  params.validate();
  if (s.sx == 0 && s.sy == 0 && s.sz == 0) throw ZeroMode("make_rossby: mode (0,0,0) has no dynamics");
  const double kx = two_pi * static_cast<double>(s.sx) / grid.lx;
  const double ky = two_pi * static_cast<double>(s.sy) / grid.ly;
  const double kz = two_pi * static_cast<double>(s.sz) / grid.lz;

  RossbyWave w;
  w.K2 = kx * kx + ky * ky + params.F * params.F * kz * kz;
  w.omega = -params.beta * kx / w.K2;
  const double q_amp = -w.K2 * amplitude;
  const double omega = w.omega;
  w.exact_q = [grid, s, q_amp, omega](double t) {
    SpectralField q(grid);
    add_cosine_mode(q, s, q_amp, -omega * t);
    return q;
  };
  w.state = State{w.exact_q(0.0), 0.0, params};
  return w;
}

State make_random(const GridSpec& grid, const PhysicsParams& params, double slope, double energy,
                  std::uint64_t seed, ShellBand band) {
  grid.validate();
  params.validate();
  const Wavenumbers w(grid);
  auto shell_of = [&](std::size_t ix, std::size_t iy, std::size_t iz) {
    const double s2 = static_cast<double>(w.sx[ix] * w.sx[ix] + w.sy[iy] * w.sy[iy] + w.sz[iz] * w.sz[iz]);
    return std::lround(std::sqrt(s2));
  };
  auto in_band = [&](std::size_t ix, std::size_t iy, std::size_t iz) {
    if (!is_retained(w.sx[ix], grid.nx) || !is_retained(w.sy[iy], grid.ny) || !is_retained(w.sz[iz], grid.nz)) {
      return false;
    }
    if (w.nyq_x[ix] || w.nyq_y[iy] || w.nyq_z[iz]) return false;
    const long sh = shell_of(ix, iy, iz);
    return sh >= band.lo && sh <= band.hi && sh > 0;
  };

  // Number of full-spectrum modes per shell.
  std::vector<double> count(static_cast<std::size_t>(std::max<long>(band.hi, 0)) + 1, 0.0);
  bool any = false;
  for (std::size_t iz = 0; iz < grid.nz; ++iz) {
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
      for (std::size_t ix = 0; ix < grid.nx_half(); ++ix) {
        if (!in_band(ix, iy, iz)) continue;
        count[static_cast<std::size_t>(shell_of(ix, iy, iz))] += hermitian_weight(ix, grid.nx);
        any = true;
      }
    }
  }
  if (!any) {
    std::ostringstream os;
    os << "make_random: no resolved modes in shells [" << band.lo << ", " << band.hi << "]";
    throw EmptyBand(os.str());
  }

  SpectralField q(grid);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, two_pi);
  for (std::size_t iz = 0; iz < grid.nz; ++iz) {
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
      for (std::size_t ix = 0; ix < grid.nx_half(); ++ix) {
        if (!in_band(ix, iy, iz)) continue;
        const long sh = shell_of(ix, iy, iz);
        const double amp = std::sqrt(std::pow(static_cast<double>(sh), slope) / count[static_cast<std::size_t>(sh)]);
        q(ix, iy, iz) = std::polar(amp, phase(rng));
      }
    }
  }
  enforce_hermitian(q);
  zero_mean(q);
  const double norm = std::sqrt(grid.volume() * mean_square(q));
  q *= norm > 0.0 ? energy / norm : 0.0;
  return State{std::move(q), 0.0, params};
}

State make_blob(const GridSpec& grid, const PhysicsParams& params, std::array<double, 3> center, double width,
                double amplitude) {
  grid.validate();
  params.validate();
  if (!(width > 0.0)) throw ValidationError("make_blob: width > 0");
  PhysicalField f(grid);
  const double inv = 1.0 / (2.0 * width * width);
  for (std::size_t k = 0; k < grid.nz; ++k) {
    const double z = static_cast<double>(k) * grid.dz();
    for (std::size_t j = 0; j < grid.ny; ++j) {
      const double y = static_cast<double>(j) * grid.dy();
      for (std::size_t i = 0; i < grid.nx; ++i) {
        const double x = static_cast<double>(i) * grid.dx();
        double sum = 0.0;
        for (int a = -1; a <= 1; ++a) {
          const double ddx = x - center[0] + a * grid.lx;
          for (int b = -1; b <= 1; ++b) {
            const double ddy = y - center[1] + b * grid.ly;
            for (int c = -1; c <= 1; ++c) {
              const double ddz = z - center[2] + c * grid.lz;
              sum += std::exp(-(ddx * ddx + ddy * ddy + ddz * ddz) * inv);
            }
          }
        }
        f(i, j, k) = amplitude * sum;
      }
    }
  }
  double mean = 0.0;
  for (double v : f.values) mean += v;
  mean /= static_cast<double>(f.values.size());
  for (double& v : f.values) v -= mean;
  SpectralField q = forward_transform(f);
  zero_mean(q);
  return State{std::move(q), 0.0, params};
}

State make_zonal(const GridSpec& grid, const PhysicsParams& params, const std::vector<double>& psi_profile) {
  grid.validate();
  params.validate();
  if (psi_profile.size() != grid.ny) throw ValidationError("make_zonal: profile needs exactly ny samples");
  PhysicalField psi(grid);
  for (std::size_t k = 0; k < grid.nz; ++k) {
    for (std::size_t j = 0; j < grid.ny; ++j) {
      for (std::size_t i = 0; i < grid.nx; ++i) psi(i, j, k) = psi_profile[j];
    }
  }
  SpectralField q = apply_operator_F(forward_transform(psi), params.F);
  zero_mean(q);
  return State{std::move(q), 0.0, params};
}

namespace {

double trig(Trig f, double a) { return f == Trig::sin ? std::sin(a) : std::cos(a); }

double trig_dt(Trig f, double omega, double t) {
  return f == Trig::sin ? omega * std::cos(omega * t) : -omega * std::sin(omega * t);
}

SpectralField evaluate_terms(const GridSpec& g, const std::vector<MmsTerm>& terms, double t, bool time_derivative) {
  PhysicalField f(g);
  for (const MmsTerm& m : terms) {
    const double time_factor = time_derivative ? trig_dt(m.ft, m.omega, t) : trig(m.ft, m.omega * t);
    const double c = m.coeff * time_factor;
    if (c == 0.0) continue;
    for (std::size_t k = 0; k < g.nz; ++k) {
      const double fz = trig(m.fz, two_pi * static_cast<double>(m.sz) * static_cast<double>(k) / static_cast<double>(g.nz));
      for (std::size_t j = 0; j < g.ny; ++j) {
        const double fy = trig(m.fy, two_pi * static_cast<double>(m.sy) * static_cast<double>(j) / static_cast<double>(g.ny));
        for (std::size_t i = 0; i < g.nx; ++i) {
          const double fx =
              trig(m.fx, two_pi * static_cast<double>(m.sx) * static_cast<double>(i) / static_cast<double>(g.nx));
          f(i, j, k) += c * fx * fy * fz;
        }
      }
    }
  }
  return forward_transform(f);
}

}  // namespace

SpectralField MmsTarget::psi(const GridSpec& grid, double t) const { return evaluate_terms(grid, terms, t, false); }

SpectralField MmsTarget::psi_t(const GridSpec& grid, double t) const { return evaluate_terms(grid, terms, t, true); }

ManufacturedProblem make_mms(const GridSpec& grid, const PhysicsParams& params, MmsTarget target) {
  grid.validate();
  params.validate();
  auto shared = std::make_shared<const MmsTarget>(std::move(target));
  auto exact_q = [grid, params, shared](double t) {
    SpectralField q = apply_operator_F(shared->psi(grid, t), params.F);
    zero_mean(q);
    return q;
  };
  auto evaluator = [grid, params, shared](double t) {
    const SpectralField psi = shared->psi(grid, t);
    const SpectralField q = apply_operator_F(psi, params.F);
    SpectralField f = apply_operator_F(shared->psi_t(grid, t), params.F);
    f += jacobian(psi, q, params.dealias);
    if (params.beta != 0.0) axpy(f, params.beta, derivative(psi, Axis::x));
    if (params.nu > 0.0) axpy(f, -params.nu, apply_laplacian(q));
    zero_mean(f);
    return f;
  };
  ManufacturedProblem p;
  p.state = State{exact_q(0.0), 0.0, params};
  p.forcing = Forcing::manufactured(evaluator);
  p.exact_q = exact_q;
  return p;
}

}  // namespace qg3d
