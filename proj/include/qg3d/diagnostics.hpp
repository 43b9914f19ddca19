#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qg3d/field.hpp"
#include "qg3d/timestepper.hpp"

namespace qg3d {

/// One time sample of the monitored norms. v = (-psi_y, psi_x, psi_z); vector
/// and tensor norms use the pointwise Euclidean/Frobenius magnitude.
struct DiagnosticsRecord {
  double t = 0.0;
  double v_l2 = 0.0;
  double q_l2 = 0.0;
  double q_l4 = 0.0;
  double q_l6 = 0.0;
  double q_linf = 0.0;
  double v_linf = 0.0;
  double v2_l6 = 0.0;
  double v2_linf = 0.0;
  double dq_l2 = 0.0;
  double dq_l3 = 0.0;
  double dq_l4 = 0.0;
  double d2q_l3 = 0.0;  ///< L3 majorant standing in for ||Dq||_BMO
  double hm_q = 0.0;    ///< ||q||_{H^{m-1}}
  double hm_v = 0.0;    ///< ||v||_{H^m}
  double grad_v_linf = 0.0;
  // Not part of the CSV schema; used by the ratio monitor.
  double grad_v_l2 = 0.0;
  double grad_v_l4 = 0.0;
  double grad_v_l6 = 0.0;
};

/// (sum |f_i|^p dV)^(1/p); p = infinity gives max |f_i|.
double lp_norm(const PhysicalField& f, double p);

/// (V * sum_k (1+|k|^2)^s |f_k|^2)^(1/2) with Hermitian weights.
double sobolev_norm(const SpectralField& f, double s);

DiagnosticsRecord record(const State& state, int m = 4);

struct CheckResult {
  std::string name;
  double bound_lhs = 0.0;
  double bound_rhs = 0.0;
  double slack = 0.0;  ///< rhs - lhs
  double tolerance = 0.0;
  bool passed = false;  ///< slack >= -tolerance
  double t = 0.0;       ///< time of the worst record

  static CheckResult make(std::string name, double lhs, double rhs, double tolerance, double t);
};

/// Drift of ||v||_L2 and ||q||_L2 against the first record; reports the worst
/// record per quantity.
std::vector<CheckResult> check_conservation(const std::vector<DiagnosticsRecord>& history, double tol_rel);

/// Integral-form bounds along the history (trapezoid in t):
///   ||q(t)||_6   <= ||q0||_6   + |beta| int ||v2||_6
///   ||q(t)||_inf <= ||q0||_inf + |beta| int ||v2||_inf
///   ||q(t)||_inf <= ||q0||_inf + |beta| int ||v||_inf   (weaker, reported too)
/// Throws InsufficientHistory with fewer than two records.
std::vector<CheckResult> check_growth_bounds(const std::vector<DiagnosticsRecord>& history, double tol_rel,
                                             double beta = 1.0);

/// ||q||_4 <= ||q||_2^(1/4) ||q||_6^(3/4) on every record.
CheckResult check_interpolation(const std::vector<DiagnosticsRecord>& history);

/// Report-only ratios; empty optionals where the denominator vanishes.
struct RatioSample {
  double t = 0.0;
  std::optional<double> cz_l2;   ///< ||grad v||_2 / ||q||_2
  std::optional<double> cz_l4;   ///< ||grad v||_4 / ||q||_4
  std::optional<double> gn;      ///< ||v||_inf / (||Dv||_6^(3/4) ||v||_2^(1/4))
  double q_l2_growth = 0.0;      ///< ||q||_p / (1 + t^2)
  double q_l4_growth = 0.0;
  double q_l6_growth = 0.0;
  double q_linf_growth = 0.0;
  double d2q_l3 = 0.0;
};

std::vector<RatioSample> monitor_ratios(const std::vector<DiagnosticsRecord>& history);

}  // namespace qg3d
