#pragma once

#include <cstdint>
#include <string>

#include "qg3d/field.hpp"
#include "qg3d/timestepper.hpp"

namespace qg3d {

/// Binary snapshot layout, all little-endian:
///   "QG3D" | u32 version = 1 | u64 nx, ny, nz | f64 Lx, Ly, Lz, F, beta, nu, time
///   followed by nx*ny*nz f64 samples of q in physical space, x fastest.
struct SnapshotHeader {
  static constexpr char magic[4] = {'Q', 'G', '3', 'D'};
  static constexpr std::uint32_t version = 1;
  static constexpr std::size_t size_bytes = 4 + 4 + 3 * 8 + 7 * 8;

  GridSpec grid;
  double F = 1.0;
  double beta = 1.0;
  double nu = 0.0;
  double time = 0.0;
};

struct Snapshot {
  SnapshotHeader header;
  PhysicalField q;
};

/// Writes to a temporary file and renames it into place.
void write_snapshot(const State& state, const std::string& path);
void write_snapshot(const Snapshot& snapshot, const std::string& path);

/// Throws IoError or FormatError (bad magic, version or payload length).
Snapshot read_snapshot_raw(const std::string& path);
State read_snapshot(const std::string& path);

State state_from_snapshot(const Snapshot& snapshot);

struct CheckpointInfo {
  double time = 0.0;
  std::uint64_t config_hash = 0;
};

/// Snapshot plus a `<path>.meta` text sidecar with time and config hash.
void write_checkpoint(const State& state, const std::string& path, const CheckpointInfo& info);
State read_checkpoint(const std::string& path, CheckpointInfo* info = nullptr);

/// Write `contents` to `path` via temp file + rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace qg3d
