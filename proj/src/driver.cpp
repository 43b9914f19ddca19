#include "qg3d/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qg3d/csv.hpp"
#include "qg3d/error.hpp"
#include "qg3d/initcond.hpp"
#include "qg3d/snapshot.hpp"

namespace qg3d {

std::string output_directory(const RunConfig& config) {
  if (const char* env = std::getenv("QG3D_OUTPUT_DIR"); env && *env) return env;
  return config.output.directory;
}

State initial_state(const RunConfig& config) {
  const GridSpec& g = config.grid;
  const PhysicsParams& p = config.physics;
  const ICSpec& ic = config.ic;
  switch (ic.kind) {
    case ICSpec::Kind::rossby:
      return make_rossby(g, p, ic.mode, ic.amplitude).state;
    case ICSpec::Kind::random_spectrum:
      return make_random(g, p, ic.slope, ic.energy, ic.seed, effective_band(config));
    case ICSpec::Kind::gaussian_blob:
      return make_blob(g, p, ic.center, ic.width, ic.amplitude);
    case ICSpec::Kind::zonal: {
      std::vector<double> profile = ic.profile;
      if (profile.empty()) {
        for (std::size_t j = 0; j < g.ny; ++j) {
          profile.push_back(ic.amplitude * std::cos(2.0 * std::numbers::pi * static_cast<double>(j) /
                                                    static_cast<double>(g.ny)));
        }
      }
      return make_zonal(g, p, profile);
    }
    case ICSpec::Kind::file: {
      State s = read_snapshot(ic.path);
      require_same_grid(s.q.grid, g, "ic.path");
      s.params = p;
      s.t = 0.0;
      return s;
    }
  }
  throw ValidationError("unknown ic.kind");
}

namespace {

void log_line(const RunOptions& opt, const std::string& s) {
  if (opt.log) *opt.log << s << '\n';
}

std::string time_tag(double t) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << t;
  return os.str();
}

}  // namespace

RunOutcome run_simulation(const RunConfig& config, const RunOptions& options) {
  config.validate();
  const std::string dir = output_directory(config);
  if (options.write_outputs) std::filesystem::create_directories(dir);

  State state;
  const std::uint64_t hash = config_hash(config);
  if (options.restart_from) {
    CheckpointInfo info;
    state = read_checkpoint(*options.restart_from, &info);
    require_same_grid(state.q.grid, config.grid, "restart");
    state.params = config.physics;
    if (info.config_hash != hash) log_line(options, "warning: checkpoint was written with a different config");
  } else {
    state = initial_state(config);
  }

  RunOutcome out;
  std::vector<Observer> observers;
  observers.push_back({config.output.record_every, [&](const State& s) {
                         out.history.push_back(record(s, config.sobolev_m));
                       }});
  if (options.write_outputs && config.output.snapshot_every > 0.0) {
    observers.push_back({config.output.snapshot_every, [&](const State& s) {
                           write_snapshot(s, dir + "/snap_" + time_tag(s.t) + ".qg3d");
                         }});
  }
  if (options.write_outputs && config.output.checkpoint_every > 0.0) {
    observers.push_back({config.output.checkpoint_every, [&](const State& s) {
                           write_checkpoint(s, dir + "/checkpoint.qg3d", {s.t, hash});
                         }});
  }

  const Forcing forcing = Forcing::none();
  try {
    out.final_state = run(state, config.t_end, config.time, forcing, observers);
  } catch (const NonFinite& e) {
    out.exit_code = exit_code::non_finite;
    out.failure_time = e.time();
    out.message = e.what();
    if (options.write_outputs) write_diagnostics_csv(dir + "/diagnostics.csv", out.history);
    return out;
  }

  if (options.write_outputs) {
    write_diagnostics_csv(dir + "/diagnostics.csv", out.history);
    write_file_atomic(dir + "/ratios.csv", ratios_csv(monitor_ratios(out.history)));
    write_snapshot(out.final_state, dir + "/final.qg3d");
  }

  if (config.physics.nu == 0.0) {
    if (config.checks.conservation) {
      for (auto& c : check_conservation(out.history, config.checks.tol_conservation)) out.checks.push_back(c);
    }
    if (config.checks.growth && out.history.size() >= 2) {
      for (auto& c : check_growth_bounds(out.history, config.checks.tol_growth, config.physics.beta)) {
        out.checks.push_back(c);
      }
    }
  }
  for (const auto& c : out.checks) {
    if (!c.passed) out.exit_code = exit_code::check_failed;
  }
  return out;
}

std::vector<ParticleSet> make_particle_sets(const RunConfig& config) {
  const auto& lc = config.lagrangian;
  std::vector<ParticleSet> sets;
  const std::size_t levels = lc.z_levels.size();
  for (std::size_t l = 0; l < levels; ++l) {
    const std::size_t count = lc.particles / levels + (l < lc.particles % levels ? 1 : 0);
    const auto pts = lc.layout == "random" ? random_layout(config.grid, count, lc.seed + l)
                                           : lattice_layout(config.grid, count);
    sets.emplace_back(pts, lc.z_levels[l]);
  }
  return sets;
}

TraceOutcome run_trace(const RunConfig& config, const RunOptions& options) {
  config.validate();
  const std::string dir = output_directory(config);
  if (options.write_outputs) std::filesystem::create_directories(dir);

  const Forcing forcing = Forcing::none();
  State state = initial_state(config);
  const SpectralField q0 = state.q;
  CoupledTracer tracer(make_particle_sets(config));
  TraceOutcome out;

  auto emit = [&](const State& s) {
    std::size_t id = 0;
    for (const auto& set : tracer.sets()) {
      const auto res = duhamel_residual(s.q, set, q0, s.params.beta);
      for (std::size_t i = 0; i < set.size(); ++i, ++id) {
        out.rows.push_back({id, s.t, set.positions[i].x, set.positions[i].y, set.z_level, set.integral[i], res[i]});
        out.max_residual = std::max(out.max_residual, std::abs(res[i]));
      }
    }
  };

  emit(state);
  const double every = config.output.record_every;
  long long next_k = 1;
  while (state.t < config.t_end) {
    const double stop = std::min(config.t_end, static_cast<double>(next_k) * every);
    double dt = config.time.mode == StepControl::Mode::fixed ? config.time.dt_fixed : cfl_dt(state, config.time);
    bool lands = false;
    if (state.t + dt * (1.0 + 1e-9) >= stop) {
      dt = stop - state.t;
      lands = true;
    }
    state = tracer.step(state, dt, forcing);
    if (lands) state.t = stop;
    bool due = state.t >= config.t_end;
    while (static_cast<double>(next_k) * every <= state.t) {
      ++next_k;
      due = true;
    }
    if (due) emit(state);
  }
  out.final_state = state;
  out.sets = tracer.sets();
  if (options.write_outputs) write_file_atomic(dir + "/particles.csv", particles_csv(out.rows));
  return out;
}

}  // namespace qg3d
