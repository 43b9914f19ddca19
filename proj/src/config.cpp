#include "qg3d/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "qg3d/error.hpp"

namespace qg3d {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Thrown by value parsers; the caller attaches line and key.
struct BadValue {
  std::string what;
};

double to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw BadValue{"expected a number, got '" + std::string(s) + "'"};
  return v;
}

template <class Int>
Int to_int(std::string_view s) {
  s = trim(s);
  Int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw BadValue{"expected an integer, got '" + std::string(s) + "'"};
  return v;
}

bool to_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw BadValue{"expected a boolean, got '" + std::string(s) + "'"};
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  s = trim(s);
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto c = s.find(',', start);
    out.push_back(trim(s.substr(start, c == std::string_view::npos ? std::string_view::npos : c - start)));
    if (c == std::string_view::npos) break;
    start = c + 1;
  }
  return out;
}

std::vector<double> to_doubles(std::string_view s) {
  std::vector<double> v;
  for (auto item : split_list(s)) v.push_back(to_double(item));
  return v;
}

std::string str(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string str(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += str(v[i]);
  }
  return out;
}

const char* kind_name(ICSpec::Kind k) {
  switch (k) {
    case ICSpec::Kind::rossby: return "rossby";
    case ICSpec::Kind::random_spectrum: return "random_spectrum";
    case ICSpec::Kind::gaussian_blob: return "gaussian_blob";
    case ICSpec::Kind::zonal: return "zonal";
    default: return "file";
  }
}

ICSpec::Kind to_kind(std::string_view s) {
  s = trim(s);
  for (auto k : {ICSpec::Kind::rossby, ICSpec::Kind::random_spectrum, ICSpec::Kind::gaussian_blob, ICSpec::Kind::zonal,
                 ICSpec::Kind::file}) {
    if (s == kind_name(k)) return k;
  }
  throw BadValue{"unknown ic.kind '" + std::string(s) + "'"};
}

struct Key {
  const char* name;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class T>
Key number_key(const char* name, T RunConfig::*group, double T::*field) {
  return {name, [=](RunConfig& c, std::string_view v) { (c.*group).*field = to_double(v); },
          [=](const RunConfig& c) { return str((c.*group).*field); }};
}

template <class T>
Key size_key(const char* name, T RunConfig::*group, std::size_t T::*field) {
  return {name, [=](RunConfig& c, std::string_view v) { (c.*group).*field = to_int<std::size_t>(v); },
          [=](const RunConfig& c) { return std::to_string((c.*group).*field); }};
}

template <class T>
Key bool_key(const char* name, T RunConfig::*group, bool T::*field) {
  return {name, [=](RunConfig& c, std::string_view v) { (c.*group).*field = to_bool(v); },
          [=](const RunConfig& c) { return std::string((c.*group).*field ? "true" : "false"); }};
}

const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back(size_key("grid.nx", &RunConfig::grid, &GridSpec::nx));
    k.push_back(size_key("grid.ny", &RunConfig::grid, &GridSpec::ny));
    k.push_back(size_key("grid.nz", &RunConfig::grid, &GridSpec::nz));
    k.push_back(number_key("grid.lx", &RunConfig::grid, &GridSpec::lx));
    k.push_back(number_key("grid.ly", &RunConfig::grid, &GridSpec::ly));
    k.push_back(number_key("grid.lz", &RunConfig::grid, &GridSpec::lz));
    k.push_back(number_key("physics.beta", &RunConfig::physics, &PhysicsParams::beta));
    k.push_back(number_key("physics.F", &RunConfig::physics, &PhysicsParams::F));
    k.push_back(number_key("physics.nu", &RunConfig::physics, &PhysicsParams::nu));
    k.push_back(bool_key("physics.dealias", &RunConfig::physics, &PhysicsParams::dealias));

    k.push_back({"ic.kind", [](RunConfig& c, std::string_view v) { c.ic.kind = to_kind(v); },
                 [](const RunConfig& c) { return std::string(kind_name(c.ic.kind)); }});
    k.push_back({"ic.mode",
                 [](RunConfig& c, std::string_view v) {
                   const auto items = split_list(v);
                   if (items.size() != 3) throw BadValue{"ic.mode needs three integers sx, sy, sz"};
                   c.ic.mode = {to_int<long>(items[0]), to_int<long>(items[1]), to_int<long>(items[2])};
                 },
                 [](const RunConfig& c) {
                   return std::to_string(c.ic.mode.sx) + ", " + std::to_string(c.ic.mode.sy) + ", " +
                          std::to_string(c.ic.mode.sz);
                 }});
    k.push_back(number_key("ic.amplitude", &RunConfig::ic, &ICSpec::amplitude));
    k.push_back(number_key("ic.slope", &RunConfig::ic, &ICSpec::slope));
    k.push_back(number_key("ic.energy", &RunConfig::ic, &ICSpec::energy));
    k.push_back({"ic.seed", [](RunConfig& c, std::string_view v) { c.ic.seed = to_int<std::uint64_t>(v); },
                 [](const RunConfig& c) { return std::to_string(c.ic.seed); }});
    k.push_back({"ic.band_lo", [](RunConfig& c, std::string_view v) { c.ic.band_lo = to_int<long>(v); },
                 [](const RunConfig& c) { return std::to_string(c.ic.band_lo); }});
    k.push_back({"ic.band_hi", [](RunConfig& c, std::string_view v) { c.ic.band_hi = to_int<long>(v); },
                 [](const RunConfig& c) { return std::to_string(c.ic.band_hi); }});
    k.push_back({"ic.center",
                 [](RunConfig& c, std::string_view v) {
                   const auto d = to_doubles(v);
                   if (d.size() != 3) throw BadValue{"ic.center needs three numbers"};
                   c.ic.center = {d[0], d[1], d[2]};
                 },
                 [](const RunConfig& c) { return str(std::vector<double>(c.ic.center.begin(), c.ic.center.end())); }});
    k.push_back(number_key("ic.width", &RunConfig::ic, &ICSpec::width));
    k.push_back({"ic.profile", [](RunConfig& c, std::string_view v) { c.ic.profile = to_doubles(v); },
                 [](const RunConfig& c) { return str(c.ic.profile); }});
    k.push_back({"ic.path", [](RunConfig& c, std::string_view v) { c.ic.path = std::string(trim(v)); },
                 [](const RunConfig& c) { return c.ic.path; }});

    k.push_back({"time.mode",
                 [](RunConfig& c, std::string_view v) {
                   v = trim(v);
                   if (v == "fixed") {
                     c.time.mode = StepControl::Mode::fixed;
                   } else if (v == "cfl") {
                     c.time.mode = StepControl::Mode::cfl;
                   } else {
                     throw BadValue{"time.mode must be fixed or cfl"};
                   }
                 },
                 [](const RunConfig& c) {
                   return std::string(c.time.mode == StepControl::Mode::fixed ? "fixed" : "cfl");
                 }});
    k.push_back(number_key("time.dt", &RunConfig::time, &StepControl::dt_fixed));
    k.push_back(number_key("time.cfl", &RunConfig::time, &StepControl::cfl_number));
    k.push_back(number_key("time.dt_min", &RunConfig::time, &StepControl::dt_min));
    k.push_back(number_key("time.dt_max", &RunConfig::time, &StepControl::dt_max));
    k.push_back({"time.t_end", [](RunConfig& c, std::string_view v) { c.t_end = to_double(v); },
                 [](const RunConfig& c) { return str(c.t_end); }});

    k.push_back({"output.directory", [](RunConfig& c, std::string_view v) { c.output.directory = std::string(trim(v)); },
                 [](const RunConfig& c) { return c.output.directory; }});
    k.push_back(number_key("output.record_every", &RunConfig::output, &OutputConfig::record_every));
    k.push_back(number_key("output.snapshot_every", &RunConfig::output, &OutputConfig::snapshot_every));
    k.push_back(number_key("output.checkpoint_every", &RunConfig::output, &OutputConfig::checkpoint_every));

    k.push_back(number_key("checks.tol_conservation", &RunConfig::checks, &ChecksConfig::tol_conservation));
    k.push_back(number_key("checks.tol_growth", &RunConfig::checks, &ChecksConfig::tol_growth));
    k.push_back(bool_key("checks.conservation", &RunConfig::checks, &ChecksConfig::conservation));
    k.push_back(bool_key("checks.growth", &RunConfig::checks, &ChecksConfig::growth));

    k.push_back(bool_key("lagrangian.enabled", &RunConfig::lagrangian, &LagrangianConfig::enabled));
    k.push_back(size_key("lagrangian.particles", &RunConfig::lagrangian, &LagrangianConfig::particles));
    k.push_back({"lagrangian.z_levels", [](RunConfig& c, std::string_view v) { c.lagrangian.z_levels = to_doubles(v); },
                 [](const RunConfig& c) { return str(c.lagrangian.z_levels); }});
    k.push_back({"lagrangian.layout",
                 [](RunConfig& c, std::string_view v) {
                   v = trim(v);
                   if (v != "lattice" && v != "random") throw BadValue{"lagrangian.layout must be lattice or random"};
                   c.lagrangian.layout = std::string(v);
                 },
                 [](const RunConfig& c) { return c.lagrangian.layout; }});
    k.push_back({"lagrangian.seed",
                 [](RunConfig& c, std::string_view v) { c.lagrangian.seed = to_int<std::uint64_t>(v); },
                 [](const RunConfig& c) { return std::to_string(c.lagrangian.seed); }});

    k.push_back({"limits.max_particles",
                 [](RunConfig& c, std::string_view v) { c.max_particles = to_int<std::size_t>(v); },
                 [](const RunConfig& c) { return std::to_string(c.max_particles); }});
    k.push_back({"diagnostics.m", [](RunConfig& c, std::string_view v) { c.sobolev_m = to_int<int>(v); },
                 [](const RunConfig& c) { return std::to_string(c.sobolev_m); }});
    return k;
  }();
  return table;
}

}  // namespace

void RunConfig::validate() const {
  grid.validate();
  physics.validate();
  time.validate();
  if (!(t_end > 0.0)) throw ValidationError("time.t_end > 0");
  if (!(output.record_every > 0.0)) throw ValidationError("output.record_every > 0");
  if (!(output.snapshot_every >= 0.0)) throw ValidationError("output.snapshot_every >= 0");
  if (!(output.checkpoint_every >= 0.0)) throw ValidationError("output.checkpoint_every >= 0");
  if (!(checks.tol_conservation > 0.0)) throw ValidationError("checks.tol_conservation > 0");
  if (!(checks.tol_growth > 0.0)) throw ValidationError("checks.tol_growth > 0");
  if (lagrangian.particles > max_particles) throw ValidationError("lagrangian.particles <= limits.max_particles");
  if (lagrangian.enabled && lagrangian.z_levels.empty()) throw ValidationError("lagrangian.z_levels must not be empty");
  if (ic.kind == ICSpec::Kind::gaussian_blob && !(ic.width > 0.0)) throw ValidationError("ic.width > 0");
  if (ic.kind == ICSpec::Kind::file && ic.path.empty()) throw ValidationError("ic.path required for kind = file");
  if (ic.kind == ICSpec::Kind::zonal && !ic.profile.empty() && ic.profile.size() != grid.ny) {
    throw ValidationError("ic.profile needs grid.ny samples");
  }
  if (sobolev_m < 1) throw ValidationError("diagnostics.m >= 1");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no, std::string(line));
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto& table = keys();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Key& k) { return key == k.name; });
    if (it == table.end()) {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'", line_no, key);
    }
    try {
      it->set(cfg, value);
    } catch (const BadValue& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + key + ": " + e.what, line_no, key);
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  for (const Key& k : keys()) {
    out += k.name;
    out += " = ";
    out += k.get(config);
    out += '\n';
  }
  return out;
}

std::uint64_t config_hash(const RunConfig& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : serialize_config(config)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

ShellBand effective_band(const RunConfig& config) {
  if (config.ic.band_hi > 0) return {config.ic.band_lo, config.ic.band_hi};
  std::size_t n = config.grid.nx;
  if (config.grid.ny > 1) n = std::min(n, config.grid.ny);
  if (config.grid.nz > 1) n = std::min(n, config.grid.nz);
  return {config.ic.band_lo, static_cast<long>(n / 4)};
}

}  // namespace qg3d
