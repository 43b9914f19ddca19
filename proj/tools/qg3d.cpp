// Command-line front end: run, verify, converge, trace, plot, info.

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "qg3d/config.hpp"
#include "qg3d/csv.hpp"
#include "qg3d/diagnostics.hpp"
#include "qg3d/driver.hpp"
#include "qg3d/error.hpp"
#include "qg3d/snapshot.hpp"
#include "qg3d/spectral.hpp"
#include "qg3d/suites.hpp"
#include "qg3d/svg_plot.hpp"

namespace {

using namespace qg3d;

RunConfig load(const std::string& path, const std::optional<std::uint64_t>& seed) {
  RunConfig cfg = load_config(path);
  if (seed) cfg.ic.seed = *seed;
  return cfg;
}

int cmd_run(const std::string& path, const std::optional<std::uint64_t>& seed,
            const std::optional<std::string>& restart) {
  const RunConfig cfg = load(path, seed);
  RunOptions opt;
  opt.restart_from = restart;
  opt.log = &std::cerr;
  const RunOutcome out = run_simulation(cfg, opt);
  if (out.exit_code == exit_code::non_finite) {
    std::cerr << "NonFinite: " << out.message << "\n"
              << "blow-up at t = " << *out.failure_time << "; last good checkpoint kept in " << output_directory(cfg)
              << "\n";
    return out.exit_code;
  }
  std::cerr << "run finished at t = " << out.final_state.t << " with " << out.history.size() << " records\n";
  if (!out.checks.empty()) std::cerr << format_checks(out.checks);
  return out.exit_code;
}

int cmd_verify(const std::string& path, const std::optional<std::uint64_t>& seed) {
  const RunConfig cfg = load(path, seed);
  const VerifyReport rep = run_verify(cfg, &std::cerr);
  std::cerr << format_checks(rep.checks);
  std::cerr << (rep.passed() ? "verify: all checks passed\n" : "verify: FAILED\n");
  return rep.passed() ? exit_code::ok : exit_code::check_failed;
}

int cmd_converge(const std::string& path) {
  const RunConfig cfg = load(path, std::nullopt);
  const ConvergeReport rep = run_converge(cfg);
  std::cerr << std::scientific << std::setprecision(6);
  std::cerr << "rossby mode (" << cfg.ic.mode.sx << "," << cfg.ic.mode.sy << "," << cfg.ic.mode.sz
            << "), omega = " << rep.omega << "\n";
  if (!rep.message.empty()) std::cerr << rep.message << "\n";
  std::cerr << "temporal refinement over one period T = " << rep.period << "\n";
  for (std::size_t i = 0; i < rep.temporal.size(); ++i) {
    std::cerr << "  dt = " << rep.temporal[i].dt << "  error = " << rep.temporal[i].error;
    if (i > 0) std::cerr << "  order = " << std::fixed << std::setprecision(3) << rep.orders[i - 1] << std::scientific
                         << std::setprecision(6);
    std::cerr << "\n";
  }
  std::cerr << "spatial refinement (semi-discrete tendency error)\n";
  for (const auto& s : rep.spatial) {
    std::cerr << "  n = " << s.n << "  ";
    if (s.resolved) {
      std::cerr << "error = " << s.error << "\n";
    } else {
      std::cerr << "mode not resolved\n";
    }
  }
  std::cerr << "temporal order " << (rep.temporal_ok ? "ok" : "FAILED") << ", spatial floor "
            << (rep.spatial_ok ? "ok" : "FAILED") << "\n";
  return rep.passed() ? exit_code::ok : exit_code::check_failed;
}

int cmd_trace(const std::string& path, const std::optional<std::uint64_t>& seed) {
  RunConfig cfg = load(path, seed);
  cfg.lagrangian.enabled = true;
  const TraceOutcome out = run_trace(cfg);
  std::cerr << "traced " << out.rows.size() << " particle samples to t = " << out.final_state.t << "\n"
            << "max |duhamel residual| = " << std::scientific << out.max_residual << "\n";
  return exit_code::ok;
}

int cmd_plot(const std::string& csv, const std::string& svg, const std::string& columns, bool normalize,
             const std::string& title) {
  const CsvTable table = read_csv(csv);
  std::vector<std::string> cols;
  std::stringstream ss(columns);
  for (std::string c; std::getline(ss, c, ',');) {
    if (!c.empty()) cols.push_back(c);
  }
  PlotOptions opt;
  opt.normalize = normalize;
  opt.title = title;
  write_file_atomic(svg, render_svg(table, cols, opt));
  std::cerr << "wrote " << svg << " (" << cols.size() << " series, " << table.rows.size() << " rows)\n";
  return exit_code::ok;
}

int cmd_info(const std::string& path) {
  const Snapshot snap = read_snapshot_raw(path);
  const auto& h = snap.header;
  std::cerr << std::setprecision(17) << "magic QG3D version " << SnapshotHeader::version << "\n"
            << "grid " << h.grid.nx << " x " << h.grid.ny << " x " << h.grid.nz << ", box " << h.grid.lx << " x "
            << h.grid.ly << " x " << h.grid.lz << "\n"
            << "F = " << h.F << ", beta = " << h.beta << ", nu = " << h.nu << ", t = " << h.time << "\n";
  const State s = state_from_snapshot(snap);
  std::cerr << "||q||_L2 = " << lp_norm(snap.q, 2.0) << ", ||q||_Linf = " << lp_norm(snap.q, INFINITY)
            << ", mean(q) = " << std::abs(forward_transform(snap.q).zero_mode()) << "\n";
  try {
    const DiagnosticsRecord r = record(s);
    std::cerr << "||v||_L2 = " << r.v_l2 << ", ||v||_Linf = " << r.v_linf << ", ||q||_H3 = " << r.hm_q << "\n";
  } catch (const NonZeroMean& e) {
    std::cerr << "velocity norms unavailable: " << e.what() << "\n";
  }
  return exit_code::ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral solver and verification harness for 3D stratified quasi-geostrophic flow"};
  app.require_subcommand(1);

  std::string config, csv, svg, snapshot, columns = "q_l2,v_l2", title;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> restart;
  bool normalize = false;

  auto* run = app.add_subcommand("run", "simulate and write diagnostics, snapshots and checkpoints");
  run->add_option("config", config, "config file")->required();
  run->add_option("--seed", seed, "override ic.seed");
  run->add_option("--restart", restart, "resume from a checkpoint file");

  auto* verify = app.add_subcommand("verify", "run the invariant suite and print a pass/fail table");
  verify->add_option("config", config, "config file")->required();
  verify->add_option("--seed", seed, "override ic.seed");

  auto* converge = app.add_subcommand("converge", "Rossby-wave spatial and temporal refinement study");
  converge->add_option("config", config, "config file")->required();

  auto* trace = app.add_subcommand("trace", "run with the Lagrangian tracer and report Duhamel residuals");
  trace->add_option("config", config, "config file")->required();
  trace->add_option("--seed", seed, "override ic.seed");

  auto* plot = app.add_subcommand("plot", "render diagnostics columns as an SVG line plot");
  plot->add_option("csv", csv, "diagnostics CSV")->required();
  plot->add_option("svg", svg, "output SVG")->required();
  plot->add_option("--columns", columns, "comma-separated column names");
  plot->add_flag("--normalize", normalize, "divide each series by its first value");
  plot->add_option("--title", title, "plot title");

  auto* info = app.add_subcommand("info", "print snapshot header and norms");
  info->add_option("snapshot", snapshot, "snapshot file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return exit_code::usage;
  }

  try {
    if (*run) return cmd_run(config, seed, restart);
    if (*verify) return cmd_verify(config, seed);
    if (*converge) return cmd_converge(config);
    if (*trace) return cmd_trace(config, seed);
    if (*plot) return cmd_plot(csv, svg, columns, normalize, title);
    if (*info) return cmd_info(snapshot);
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::failure;
  }
  return exit_code::usage;
}
