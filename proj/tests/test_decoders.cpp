#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "latdec/decoders.hpp"
#include "latdec/errors.hpp"

using namespace latdec;

namespace {

using Key = std::vector<long long>;

std::set<Key> keys(const DecodeOutcome& o) {
  std::set<Key> s;
  for (const auto& c : o.candidates) {
    Key k;
    for (double x : c.point) k.push_back(std::llround(x * 1e6));
    s.insert(k);
  }
  return s;
}

std::vector<double> uniform_query(std::mt19937_64& rng, std::size_t n, double half_width) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  std::vector<double> y(n);
  for (auto& v : y) v = u(rng);
  return y;
}

/// Counts list mismatches against the sphere oracle over random queries.
int oracle_mismatches(const LatticeDecoder& dec, const LatticeBasis& lattice, double delta,
                      const ListConfig& base, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ListConfig cfg = base;
  cfg.delta = delta;
  const double d = lattice.min_sq_norm_d();
  int bad = 0;
  for (int t = 0; t < trials; ++t) {
    const auto y = uniform_query(rng, lattice.dim(), 2.0);
    const auto got = decode_list(dec, y, cfg);
    const auto want = sphere_list(lattice, y, delta * d);
    if (keys(got) != keys(want)) ++bad;
  }
  return bad;
}

DecoderPtr d4_decoder() {
  auto t = std::make_shared<SphereDecoder>(integer_lattice(1));
  auto v = std::make_shared<SphereDecoder>(scale_lattice(integer_lattice(1), QSqrt7(2)));
  return std::make_shared<ParityDecoder>(t, v, 4, "D4");
}

}  // namespace

TEST(Sphere, SmallExamples) {
  const LatticeBasis z2 = integer_lattice(2);
  auto a = sphere_list(z2, {0.2, 0.2}, 0.25);
  ASSERT_EQ(a.candidates.size(), 1u);
  EXPECT_EQ(a.candidates[0].point, (std::vector<double>{0, 0}));
  auto b = sphere_list(z2, {0.5, 0.0}, 0.25);
  ASSERT_EQ(b.candidates.size(), 2u);
  EXPECT_EQ(b.candidates[0].point, (std::vector<double>{0, 0}));
  EXPECT_EQ(b.candidates[1].point, (std::vector<double>{1, 0}));
  auto c = sphere_list(e8(), std::vector<double>(8, 0.0), 2.0);
  EXPECT_EQ(c.candidates.size(), 241u);
}

TEST(Sphere, JohnsonBoundOnSamples) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {4u, 8u, 16u}) {
    const LatticeBasis bw = barnes_wall(n);
    for (int t = 0; t < 200; ++t) {
      const auto y = uniform_query(rng, n, 2.0);
      const auto o = sphere_list(bw, y, bw.min_sq_norm_d() / 2);
      EXPECT_LE(o.candidates.size(), 2 * n);
    }
  }
}

TEST(Parity, D4OracleEquivalence) {
  const LatticeBasis d4 = checkerboard(4);
  auto dec = d4_decoder();
  ListConfig cfg;
  for (double delta : {0.2, 0.3, 0.5, 0.75}) {
    EXPECT_EQ(oracle_mismatches(*dec, d4, delta, cfg, 300, 1), 0) << delta;
    cfg.split1 = true;
    EXPECT_EQ(oracle_mismatches(*dec, d4, delta, cfg, 300, 2), 0) << delta;
    cfg.split2 = true;
    EXPECT_EQ(oracle_mismatches(*dec, d4, delta, cfg, 300, 3), 0) << delta;
    cfg.split1 = cfg.split2 = false;
  }
}

TEST(Parity, BarnesWallOracleEquivalence) {
  for (std::size_t n : {4u, 8u, 16u}) {
    const ParityFamily fam = barnes_wall_family(n);
    auto dec = parity_family_decoder(fam);
    ListConfig cfg;
    for (double delta : {0.2, 0.3, 0.5, 0.75}) {
      EXPECT_EQ(oracle_mismatches(*dec, fam.top(), delta, cfg, 100, n), 0) << n << " " << delta;
      cfg.split1 = true;
      EXPECT_EQ(oracle_mismatches(*dec, fam.top(), delta, cfg, 100, n + 1), 0) << n << " " << delta;
      cfg.split1 = false;
    }
  }
}

TEST(Parity, ThreeParityOracleEquivalenceWithSplit2) {
  // k = 3 family over Z^2 with phi: dimension 6 and 18.
  ParityFamilySpec spec;
  spec.base = gaussian_integer_lattice(1);
  spec.ring = RingTag::GaussianInt;
  spec.theta = phi_elem();
  spec.k = 3;
  spec.depth = 2;
  const ParityFamily fam = parity_family(spec);
  for (std::size_t level : {1u, 2u}) {
    ParityFamily sub = fam;
    sub.levels.resize(level + 1);
    auto dec = parity_family_decoder(sub);
    ListConfig cfg;
    for (double delta : {0.2, 0.5, 0.75}) {
      cfg.split1 = true;
      cfg.split2 = false;
      EXPECT_EQ(oracle_mismatches(*dec, sub.top(), delta, cfg, 60, level), 0) << level << " " << delta;
      cfg.split2 = true;
      EXPECT_EQ(oracle_mismatches(*dec, sub.top(), delta, cfg, 60, level + 7), 0) << level << " " << delta;
    }
  }
}

TEST(Parity, BddGuaranteeAndCallCount) {
  const ParityFamily fam = barnes_wall_family(16);
  auto dec = parity_family_decoder(fam);
  const LatticeBasis& l = fam.top();
  const SphereDecoder oracle(l);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  const double rho2 = l.min_sq_norm_d() / 4;
  int checked = 0;
  for (int t = 0; t < 2000; ++t) {
    const auto y = uniform_query(rng, l.dim(), 3.0);
    std::vector<double> want(l.dim()), got(l.dim());
    DecodeStats st;
    oracle.nearest(y.data(), st, want.data());
    if (sq_dist(y.data(), want.data(), l.dim()) >= rho2) continue;
    ++checked;
    DecodeStats st2;
    dec->nearest(y.data(), st2, got.data());
    for (std::size_t i = 0; i < l.dim(); ++i) ASSERT_NEAR(got[i], want[i], 1e-9);
    // BW16 has three parity levels over Z^2: 4^3 base calls.
    EXPECT_EQ(st2.calls(0), 64u);
  }
  EXPECT_GT(checked, 10);
}

TEST(Parity, ModifiedDecoderIsSuperset) {
  const ParityFamily fam = barnes_wall_family(16);
  auto dec = parity_family_decoder(fam);
  std::mt19937_64 rng(5);
  ListConfig reg;
  reg.delta = 0.5;
  ListConfig mod = reg;
  mod.removing_step = false;
  for (int t = 0; t < 100; ++t) {
    const auto y = uniform_query(rng, 16, 2.0);
    const auto a = keys(decode_list(*dec, y, reg));
    const auto b = keys(decode_list(*dec, y, mod));
    for (const auto& k : a) EXPECT_TRUE(b.count(k));
  }
}

TEST(Parity, BoundedListCapsOutput) {
  const ParityFamily fam = barnes_wall_family(8);
  auto dec = parity_family_decoder(fam);
  ListConfig cfg;
  cfg.delta = 0.75;
  cfg.aleph[1.0] = 3;
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto o = decode_list(*dec, uniform_query(rng, 8, 2.0), cfg);
    EXPECT_LE(o.candidates.size(), 3u);
  }
}

TEST(Parity, Determinism) {
  const ParityFamily fam = barnes_wall_family(16);
  auto dec = parity_family_decoder(fam);
  std::mt19937_64 rng(9);
  ListConfig cfg;
  cfg.delta = 0.5;
  cfg.split1 = true;
  for (int t = 0; t < 20; ++t) {
    const auto y = uniform_query(rng, 16, 2.0);
    const auto a = decode_list(*dec, y, cfg);
    const auto b = decode_list(*dec, y, cfg);
    ASSERT_EQ(a.candidates.size(), b.candidates.size());
    for (std::size_t i = 0; i < a.candidates.size(); ++i) {
      EXPECT_EQ(a.candidates[i].point, b.candidates[i].point);
      EXPECT_EQ(a.candidates[i].dist_sq, b.candidates[i].dist_sq);
    }
    EXPECT_EQ(a.counters, b.counters);
  }
}

TEST(E8, IsometryMapsLatticeOntoTarget) {
  const LatticeBasis bw8 = barnes_wall(8);
  const LatticeBasis target = e8();
  double s = 0;
  const Eigen::MatrixXd m = e8_isometry(bw8, target, &s);
  EXPECT_NEAR(s, target.min_sq_norm_d() / bw8.min_sq_norm_d(), 1e-12);
  // Every BW8 basis vector maps into the target lattice.
  const Eigen::MatrixXd img = bw8.generator_d() * m;
  const Eigen::MatrixXd coords = img * target.generator_d().inverse();
  EXPECT_LT((coords - coords.array().round().matrix()).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_NEAR(std::abs(m.determinant()), std::pow(s, 4), 1e-9);
}

TEST(Leech, ListDecoderMatchesOracle) {
  const TurynStructure st = leech_structure();
  auto dec = leech_list_decoder(st);
  ListConfig cfg;
  for (double delta : {0.2, 0.3, 0.5}) {
    EXPECT_EQ(oracle_mismatches(*dec, st.lattice, delta, cfg, 30, 40), 0) << delta;
  }
}

TEST(Leech, QmldBddGuaranteeAndCalls) {
  const TurynStructure st = leech_structure();
  auto dec = leech_qmld_decoder(st);
  const SphereDecoder oracle(st.lattice);
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    // Uniform direction, squared norm below the packing radius squared (1).
    std::vector<double> y(24);
    for (auto& v : y) v = g(rng);
    const double scale = std::sqrt(0.999 * u(rng) / sq_dist(y.data(), std::vector<double>(24, 0.0).data(), 24));
    for (auto& v : y) v *= scale;
    std::vector<double> want(24), got(24);
    DecodeStats st0, st1;
    oracle.nearest(y.data(), st0, want.data());
    if (sq_dist(y.data(), want.data(), 24) >= 1.0) continue;
    ++checked;
    dec->nearest(y.data(), st1, got.data());
    for (std::size_t i = 0; i < 24; ++i) ASSERT_NEAR(got[i], want[i], 1e-9);
    // 16 cosets x 6 E8 decodes; each E8 decode is one BW8 call with 16 base calls.
    EXPECT_EQ(st1.calls(2), 96u);
  }
  EXPECT_EQ(checked, 200);
}
