#include <gtest/gtest.h>

#include <random>

#include "latdec/constructions.hpp"
#include "latdec/errors.hpp"
#include "latdec/hnf.hpp"

namespace latdec {
namespace {

TEST(ParityCheck, CheckerboardD4) {
  const LatticeBasis d4 = with_enumerated_figures(checkerboard(4));
  EXPECT_EQ(d4.volume_sq(), QSqrt7(4));
  EXPECT_EQ(d4.min_sq_norm()->value, QSqrt7(2));
  EXPECT_EQ(d4.kissing()->value, 24u);
}

TEST(ParityCheck, Bw4FromGaussianPlane) {
  const LatticeBasis z2 = gaussian_integer_lattice(1);
  const LatticeBasis phiz2 = scale_rotate(z2, RingTag::GaussianInt, phi_elem());
  const LatticeBasis bw4 = with_enumerated_figures(parity_check_basis(z2, phiz2, 2));
  EXPECT_EQ(bw4.volume_sq(), QSqrt7(4));
  EXPECT_EQ(bw4.min_sq_norm()->value, QSqrt7(2));
  EXPECT_EQ(bw4.kissing()->value, 24u);
}

TEST(ParityCheck, RejectsNonSublattice) {
  const LatticeBasis z = integer_lattice(1);
  const LatticeBasis half = scale_lattice(z, QSqrt7(frac(1, 2)));
  EXPECT_THROW(parity_check_basis(z, half, 2), ValidationError);
}

// Membership through blocks agrees with solving against the assembled basis.
TEST(ParityCheck, MembershipAgreesWithBasis) {
  const LatticeBasis t = gaussian_integer_lattice(1);
  const LatticeBasis v = scale_rotate(t, RingTag::GaussianInt, phi_elem());
  for (std::size_t k : {2u, 3u}) {
    const LatticeBasis g = parity_check_basis(t, v, k);
    const ExactMatrix ginv = inverse(g.generator());
    std::mt19937_64 rng(k);
    std::uniform_int_distribution<long> coef(-3, 3);
    std::uniform_int_distribution<long> num(-7, 7);
    for (int trial = 0; trial < 1000; ++trial) {
      // Lattice point.
      ExactVector z(g.dim());
      for (auto& c : z) c = QSqrt7(coef(rng));
      const ExactVector x = row_times(z, g.generator());
      EXPECT_TRUE(in_parity_lattice(x, t, v, k));
      EXPECT_TRUE(integral_coordinates(x, ginv));
      // Perturbed point: agreement either way.
      ExactVector y = x;
      y[static_cast<std::size_t>(trial) % y.size()] += QSqrt7(frac(num(rng), 2));
      EXPECT_EQ(in_parity_lattice(y, t, v, k), integral_coordinates(y, ginv));
    }
  }
}

TEST(ParityCheck, MinimumIsMinOfVAndTwiceT) {
  const LatticeBasis z = integer_lattice(2);
  const LatticeBasis v = scale_lattice(z, QSqrt7(3));
  const LatticeBasis g = parity_check_basis(z, v, 3);
  EXPECT_EQ(min_distance(g), QSqrt7(2));
  const LatticeBasis v2 = scale_rotate(gaussian_integer_lattice(1), RingTag::GaussianInt, phi_elem());
  EXPECT_EQ(min_distance(parity_check_basis(z, v2, 2)), QSqrt7(2));
}

TEST(BarnesWall, ChainFigures) {
  const ParityFamily fam = barnes_wall_family(16);
  ASSERT_EQ(fam.levels.size(), 4u);
  for (std::size_t i = 0; i < fam.levels.size(); ++i) {
    const LatticeBasis& l = fam.levels[i].lattice;
    const std::size_t n = l.dim();
    EXPECT_EQ(min_distance(l), QSqrt7(static_cast<long>(std::max<std::size_t>(1, n / 2))));
    EXPECT_NEAR(l.coding_gain(), std::sqrt(n / 2.0), 1e-12);
    if (i > 0) {
      // vol(L_{2n})^{2/2n} = 2^{1/2} vol(L_n)^{2/n}
      const double prev = std::pow(fam.levels[i - 1].lattice.volume(), 2.0 / (n / 2));
      EXPECT_NEAR(std::pow(l.volume(), 2.0 / n), std::sqrt(2.0) * prev, 1e-9);
    }
    EXPECT_EQ(fam.levels[i].beta_order, 1u << (n / 2));
  }
  EXPECT_EQ(kissing(fam.levels[2].lattice), 240u);
}

TEST(E8, LambdaStructure) {
  const LatticeBasis e = with_enumerated_figures(e8());
  EXPECT_EQ(e.volume_sq(), QSqrt7(1));
  EXPECT_EQ(e.min_sq_norm()->value, QSqrt7(2));
  EXPECT_EQ(e.kissing()->value, 240u);
  EXPECT_TRUE(e.is_even());
}

TEST(Polarise, E8Identities) {
  const LatticeBasis s = LatticeBasis::from_complex(e8_half_lambda_basis());
  const PolarisationTriple p = polarize(s);
  EXPECT_EQ(p.t.min_sq_norm()->value, QSqrt7(2));
  EXPECT_EQ(p.t.kissing()->value, 240u);
  // G_S = G_T + G_T2theta as matrices, since lambda + psi = 1.
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      EXPECT_EQ(s.generator()(i, j), p.t.generator()(i, j) + p.t_2theta.generator()(i, j));
  // Row norms double.
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(QSqrt7(2) * s.gram()(i, i), p.t.gram()(i, i));
}

TEST(Polarise, RejectsGaussianStructure) {
  EXPECT_THROW(polarize(gaussian_integer_lattice(2)), ValidationError);
}

TEST(Leech, TurynConstruction) {
  const TurynStructure st = leech_structure();
  EXPECT_TRUE(st.lattice.is_even());
  EXPECT_EQ(st.lattice.volume_sq(), QSqrt7(1));
  EXPECT_EQ(st.lattice.min_sq_norm()->value, QSqrt7(4));
  EXPECT_EQ(st.spec.alpha.index(), 16u);
  EXPECT_EQ(st.spec.beta.index(), 16u);
  EXPECT_NEAR(st.lattice.coding_gain_db(), 10 * std::log10(4.0), 1e-12);
  // Even lattice: no vector built from three minimal vectors of S (norm 3).
  EXPECT_FALSE(turyn_has_minimal_triple(st));
}

TEST(Leech, KingSpecWithTrivialAlphaIsParityCheck) {
  const LatticeBasis t = gaussian_integer_lattice(1);
  const LatticeBasis v = scale_rotate(t, RingTag::GaussianInt, phi_elem());
  const KingSpec spec = KingSpec::make(v, t, v, 2);
  EXPECT_EQ(spec.alpha.index(), 1u);
  EXPECT_TRUE(same_lattice(king_basis(spec), parity_check_basis(t, v, 2)));
}

TEST(ParityLeech, FamilyFigures) {
  const ParityFamily fam = parity_leech_family();
  const LatticeBasis& l = fam.top();
  EXPECT_EQ(l.dim(), 72u);
  EXPECT_EQ(l.min_sq_norm()->value, QSqrt7(8));
  // gamma = 8 / 2^{1/3}
  EXPECT_NEAR(l.coding_gain(), 8.0 / std::cbrt(2.0), 1e-9);
  EXPECT_NEAR(l.coding_gain(), 6.35, 0.01);
  EXPECT_EQ(fam.levels[0].beta_order, 1u << 12);
}

}  // namespace
}  // namespace latdec
