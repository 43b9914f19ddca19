#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qg3d/config.hpp"
#include "qg3d/csv.hpp"
#include "qg3d/diagnostics.hpp"
#include "qg3d/lagrangian.hpp"
#include "qg3d/timestepper.hpp"

namespace qg3d {

/// Process exit codes shared by the command-line subcommands.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int non_finite = 2;
inline constexpr int check_failed = 3;
inline constexpr int usage = 64;
}  // namespace exit_code

/// Builds the initial state described by config.ic.
State initial_state(const RunConfig& config);

struct RunOptions {
  std::optional<std::string> restart_from;  ///< checkpoint path
  bool write_outputs = true;
  std::ostream* log = nullptr;
};

struct RunOutcome {
  int exit_code = exit_code::ok;
  State final_state;
  std::vector<DiagnosticsRecord> history;
  std::vector<CheckResult> checks;
  std::optional<double> failure_time;
  std::string message;
};

/// Integrates config to t_end, recording diagnostics and writing
/// diagnostics.csv, ratios.csv, periodic snapshots, checkpoint.qg3d and
/// final.qg3d under config.output.directory.
RunOutcome run_simulation(const RunConfig& config, const RunOptions& options = {});

struct TraceOutcome {
  State final_state;
  std::vector<ParticleSet> sets;
  std::vector<ParticleRow> rows;
  double max_residual = 0.0;
};

/// Integrates with the Lagrangian tracer attached; one CSV row per particle
/// at every record time. Writes particles.csv unless write_outputs is false.
TraceOutcome run_trace(const RunConfig& config, const RunOptions& options = {});

/// Particle sets for config.lagrangian: the particle budget is split evenly
/// over the z levels.
std::vector<ParticleSet> make_particle_sets(const RunConfig& config);

std::string output_directory(const RunConfig& config);

}  // namespace qg3d
