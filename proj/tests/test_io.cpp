#include <gtest/gtest.h>

#include <filesystem>

#include "latdec/constructions.hpp"
#include "latdec/errors.hpp"
#include "latdec/io.hpp"

using namespace latdec;

namespace {
void expect_round_trip(const LatticeBasis& l) {
  const std::string text = format_lattice(l);
  const LatticeBasis back = parse_lattice(text);
  EXPECT_EQ(back.generator(), l.generator());
  EXPECT_EQ(format_lattice(back), text);
}
}  // namespace

TEST(LatticeFile, RoundTripsExactly) {
  expect_round_trip(integer_lattice(4));
  expect_round_trip(barnes_wall(16));
  const LatticeBasis leech = leech_turyn();
  expect_round_trip(leech);
  expect_round_trip(LatticeBasis(leech.generator()));  // real form with sqrt7 entries
  ExactMatrix g = ExactMatrix::identity(2);
  g(0, 1) = QSqrt7(frac(-3, 7), frac(5, 11));
  expect_round_trip(LatticeBasis(g));
}

TEST(LatticeFile, ParsesHandWrittenInput) {
  const auto l = parse_lattice("# comment\ndim 2\nring gaussian\n1+1i\n");
  EXPECT_EQ(l.generator()(0, 0), QSqrt7(1));
  EXPECT_EQ(l.generator()(0, 1), QSqrt7(1));
  EXPECT_EQ(l.generator()(1, 0), QSqrt7(-1));
  EXPECT_EQ(l.volume_sq(), QSqrt7(4));
}

TEST(LatticeFile, RejectsBadInput) {
  EXPECT_THROW(parse_lattice("dim 2\nring none\n1 0\n"), ValidationError);
  EXPECT_THROW(parse_lattice("dim 2\nring none\n1 0\n2 0\n"), ValidationError);  // singular
  EXPECT_THROW(parse_lattice("dim x\nring none\n"), ValidationError);
  EXPECT_THROW(parse_lattice("dim 2\nring quaternion\n1\n"), ValidationError);
  EXPECT_THROW(parse_lattice("dim 2\nring none\n1 zz\n0 1\n"), ValidationError);
}

TEST(LatticeFile, SidecarRestoresFigures) {
  const auto dir = std::filesystem::temp_directory_path() / "latdec_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "e8.lat").string();
  const LatticeBasis e = e8().with_kissing(240, Provenance::Exact);
  write_lattice_files(path, e);
  const LatticeBasis back = read_lattice_file(path);
  EXPECT_EQ(back.name(), e.name());
  ASSERT_TRUE(back.min_sq_norm());
  EXPECT_EQ(back.min_sq_norm()->value, QSqrt7(2));
  ASSERT_TRUE(back.kissing());
  EXPECT_EQ(back.kissing()->value, 240u);
  const auto meta = lattice_metadata(back);
  EXPECT_EQ(meta["dim"], 8);
  EXPECT_NEAR(meta["coding_gain_db"].get<double>(), 10 * std::log10(2.0), 1e-12);
  std::filesystem::remove_all(dir);
}

TEST(Hash, Sha256KnownAnswer) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
