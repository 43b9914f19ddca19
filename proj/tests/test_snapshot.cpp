#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "qg3d/error.hpp"
#include "qg3d/initcond.hpp"
#include "qg3d/snapshot.hpp"
#include "qg3d/spectral.hpp"

using namespace qg3d;
namespace fs = std::filesystem;

namespace {

class SnapshotTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qg3d_snapshot_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::string& p, const std::string& bytes) {
  std::ofstream(p, std::ios::binary) << bytes;
}

GridSpec cube(std::size_t n) {
  GridSpec g;
  g.nx = g.ny = g.nz = n;
  return g;
}

}  // namespace

TEST_F(SnapshotTest, ZeroFieldRoundTrips) {
  State s;
  s.q = SpectralField(cube(8));
  write_snapshot(s, path("z.qg3d"));
  const Snapshot r = read_snapshot_raw(path("z.qg3d"));
  EXPECT_EQ(r.q.values, std::vector<double>(512, 0.0));
  EXPECT_EQ(fs::file_size(path("z.qg3d")), SnapshotHeader::size_bytes + 512 * 8);
}

TEST_F(SnapshotTest, RandomStateRoundTripsBitwise) {
  PhysicsParams p;
  p.beta = 0.3;
  p.F = 1.7;
  p.nu = 1e-4;
  State s = make_random(cube(16), p, -2.0, 1.0, 42, {1, 5});
  s.t = 0.1 + 0.2;
  write_snapshot(s, path("a.qg3d"));
  const Snapshot r = read_snapshot_raw(path("a.qg3d"));
  const PhysicalField q = inverse_transform(s.q);
  ASSERT_EQ(r.q.values.size(), q.values.size());
  EXPECT_EQ(std::memcmp(r.q.values.data(), q.values.data(), q.values.size() * sizeof(double)), 0);
  EXPECT_EQ(r.header.grid, s.q.grid);
  EXPECT_EQ(r.header.F, 1.7);
  EXPECT_EQ(r.header.beta, 0.3);
  EXPECT_EQ(r.header.nu, 1e-4);
  EXPECT_EQ(r.header.time, 0.1 + 0.2);
  write_snapshot(r, path("b.qg3d"));
  EXPECT_EQ(slurp(path("a.qg3d")), slurp(path("b.qg3d")));

  const State back = read_snapshot(path("a.qg3d"));
  EXPECT_EQ(back.params.F, 1.7);
  EXPECT_EQ(back.t, s.t);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.q.coeffs.size(); ++i) worst = std::max(worst, std::abs(back.q.coeffs[i] - s.q.coeffs[i]));
  EXPECT_LT(worst, 1e-15);
}

TEST_F(SnapshotTest, HeaderLayoutIsLittleEndian) {
  State s;
  s.q = SpectralField(cube(4));
  write_snapshot(s, path("h.qg3d"));
  const std::string b = slurp(path("h.qg3d"));
  ASSERT_GE(b.size(), 16u);
  EXPECT_EQ(b.substr(0, 4), "QG3D");
  EXPECT_EQ(static_cast<unsigned char>(b[4]), 1u);
  EXPECT_EQ(static_cast<unsigned char>(b[8]), 4u);
  EXPECT_EQ(b[9], 0);
}

TEST_F(SnapshotTest, CorruptFilesAreRejected) {
  State s = make_random(cube(8), PhysicsParams{}, -2.0, 1.0, 1, {1, 2});
  write_snapshot(s, path("ok.qg3d"));
  const std::string good = slurp(path("ok.qg3d"));

  spit(path("short.qg3d"), good.substr(0, good.size() - 8));
  EXPECT_THROW(read_snapshot_raw(path("short.qg3d")), FormatError);

  spit(path("long.qg3d"), good + "x");
  EXPECT_THROW(read_snapshot_raw(path("long.qg3d")), FormatError);

  std::string bad = good;
  bad[0] = 'X';
  spit(path("magic.qg3d"), bad);
  EXPECT_THROW(read_snapshot_raw(path("magic.qg3d")), FormatError);

  bad = good;
  bad[4] = 2;
  spit(path("version.qg3d"), bad);
  EXPECT_THROW(read_snapshot_raw(path("version.qg3d")), FormatError);

  spit(path("header.qg3d"), good.substr(0, 20));
  EXPECT_THROW(read_snapshot_raw(path("header.qg3d")), FormatError);

  EXPECT_THROW(read_snapshot_raw(path("missing.qg3d")), IoError);
}

TEST_F(SnapshotTest, CheckpointCarriesTimeAndHash) {
  State s = make_random(cube(8), PhysicsParams{}, -2.0, 1.0, 1, {1, 2});
  s.t = 1.0 / 3.0;
  write_checkpoint(s, path("c.qg3d"), {s.t, 0xdeadbeefcafef00dULL});
  CheckpointInfo info;
  const State r = read_checkpoint(path("c.qg3d"), &info);
  EXPECT_EQ(info.time, 1.0 / 3.0);
  EXPECT_EQ(r.t, 1.0 / 3.0);
  EXPECT_EQ(info.config_hash, 0xdeadbeefcafef00dULL);
  EXPECT_TRUE(fs::exists(path("c.qg3d.meta")));
}
