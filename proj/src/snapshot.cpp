#include "qg3d/snapshot.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "qg3d/error.hpp"
#include "qg3d/spectral.hpp"

namespace qg3d {

namespace {

template <class T>
void put_le(std::string& out, T value) {
  static_assert(sizeof(T) == 4 || sizeof(T) == 8);
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  U bits;
  std::memcpy(&bits, &value, sizeof(T));
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

template <class T>
T get_le(const std::string& in, std::size_t& pos) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bits |= static_cast<U>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  }
  pos += sizeof(T);
  T value;
  std::memcpy(&value, &bits, sizeof(T));
  return value;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("short write to '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

void write_snapshot(const Snapshot& s, const std::string& path) {
  const GridSpec& g = s.header.grid;
  if (s.q.values.size() != g.points()) throw FormatError("write_snapshot: payload does not match grid");
  std::string buf;
  buf.reserve(SnapshotHeader::size_bytes + 8 * g.points());
  buf.append(SnapshotHeader::magic, 4);
  put_le<std::uint32_t>(buf, SnapshotHeader::version);
  put_le<std::uint64_t>(buf, g.nx);
  put_le<std::uint64_t>(buf, g.ny);
  put_le<std::uint64_t>(buf, g.nz);
  for (double v : {g.lx, g.ly, g.lz, s.header.F, s.header.beta, s.header.nu, s.header.time}) put_le<double>(buf, v);
  for (double v : s.q.values) put_le<double>(buf, v);
  write_file_atomic(path, buf);
}

void write_snapshot(const State& state, const std::string& path) {
  Snapshot s;
  s.header.grid = state.q.grid;
  s.header.F = state.params.F;
  s.header.beta = state.params.beta;
  s.header.nu = state.params.nu;
  s.header.time = state.t;
  s.q = inverse_transform(state.q);
  write_snapshot(s, path);
}

Snapshot read_snapshot_raw(const std::string& path) {
  const std::string buf = read_file(path);
  if (buf.size() < SnapshotHeader::size_bytes) throw FormatError("'" + path + "': truncated header");
  if (std::memcmp(buf.data(), SnapshotHeader::magic, 4) != 0) throw FormatError("'" + path + "': bad magic");
  std::size_t pos = 4;
  const auto version = get_le<std::uint32_t>(buf, pos);
  if (version != SnapshotHeader::version) {
    throw FormatError("'" + path + "': unsupported version " + std::to_string(version));
  }
  Snapshot s;
  GridSpec& g = s.header.grid;
  g.nx = get_le<std::uint64_t>(buf, pos);
  g.ny = get_le<std::uint64_t>(buf, pos);
  g.nz = get_le<std::uint64_t>(buf, pos);
  g.lx = get_le<double>(buf, pos);
  g.ly = get_le<double>(buf, pos);
  g.lz = get_le<double>(buf, pos);
  s.header.F = get_le<double>(buf, pos);
  s.header.beta = get_le<double>(buf, pos);
  s.header.nu = get_le<double>(buf, pos);
  s.header.time = get_le<double>(buf, pos);
  const std::size_t n = g.nx * g.ny * g.nz;
  if (g.nx == 0 || g.ny == 0 || g.nz == 0 || n / g.nx / g.ny != g.nz ||
      buf.size() - SnapshotHeader::size_bytes != 8 * n) {
    throw FormatError("'" + path + "': payload length does not match header");
  }
  s.q = PhysicalField(g);
  for (std::size_t i = 0; i < n; ++i) s.q.values[i] = get_le<double>(buf, pos);
  return s;
}

State state_from_snapshot(const Snapshot& s) {
  State state;
  state.q = forward_transform(s.q);
  state.t = s.header.time;
  state.params.F = s.header.F;
  state.params.beta = s.header.beta;
  state.params.nu = s.header.nu;
  // Roundoff-level means left by the transform are removed; a genuinely
  // nonzero mean is kept so that the solver reports it.
  const double norm = std::sqrt(s.header.grid.volume() * mean_square(state.q));
  if (std::abs(state.q.zero_mode()) <= 1e-12 * norm) state.q.coeffs.front() = Complex{};
  return state;
}

State read_snapshot(const std::string& path) { return state_from_snapshot(read_snapshot_raw(path)); }

void write_checkpoint(const State& state, const std::string& path, const CheckpointInfo& info) {
  write_snapshot(state, path);
  char time_hex[64];
  std::snprintf(time_hex, sizeof time_hex, "%a", info.time);
  std::ostringstream meta;
  meta << "time = " << time_hex << "\n"
       << "config_hash = " << std::hex << info.config_hash << std::dec << "\n";
  write_file_atomic(path + ".meta", meta.str());
}

State read_checkpoint(const std::string& path, CheckpointInfo* info) {
  State state = read_snapshot(path);
  std::ifstream meta(path + ".meta");
  if (!meta) throw IoError("missing checkpoint sidecar '" + path + ".meta'");
  CheckpointInfo ci;
  std::string line;
  bool have_time = false;
  while (std::getline(meta, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(' ') + 1);
    value.erase(0, value.find_first_not_of(' '));
    if (key == "time") {
      ci.time = std::strtod(value.c_str(), nullptr);
      have_time = true;
    } else if (key == "config_hash") {
      ci.config_hash = std::stoull(value, nullptr, 16);
    }
  }
  if (!have_time) throw FormatError("checkpoint sidecar '" + path + ".meta' lacks time");
  state.t = ci.time;
  if (info) *info = ci;
  return state;
}

}  // namespace qg3d
