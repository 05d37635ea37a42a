#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <random>

#include "latdec/analysis.hpp"
#include "latdec/constructions.hpp"
#include "latdec/errors.hpp"

using namespace latdec;

TEST(ChiSquare, ClosedForms) {
  for (int n : {2, 8, 24, 72}) EXPECT_DOUBLE_EQ(chi_square_tail(n, 0.0, 0.3), 1.0);
  for (double r : {0.1, 1.0, 5.0}) EXPECT_NEAR(chi_square_tail(2, r, 0.4), std::exp(-r / 0.8), 1e-15);
  EXPECT_THROW(chi_square_tail(3, 1.0, 1.0), ValidationError);
  EXPECT_THROW(chi_square_tail(4, 1.0, 0.0), ValidationError);
}

TEST(ChiSquare, MatchesRegularizedIncompleteGamma) {
  for (int n : {2, 8, 16, 24, 72, 256}) {
    for (double r : {0.5, 3.0, 10.0, 40.0, 200.0}) {
      const double s2 = 0.37;
      const double want = boost::math::gamma_q(n / 2.0, r / (2 * s2));
      EXPECT_NEAR(chi_square_tail(n, r, s2), want, 1e-12 + 1e-10 * want) << n << " " << r;
    }
  }
}

TEST(ChiSquare, MonotoneAndBounded) {
  double prev = 1.0;
  for (double r = 0; r < 30; r += 0.5) {
    const double f = chi_square_tail(16, r, 0.5);
    EXPECT_LE(f, prev + 1e-15);
    EXPECT_GE(f, 0.0);
    prev = f;
  }
  prev = 0.0;
  for (double s2 = 0.05; s2 < 3; s2 += 0.05) {
    const double f = chi_square_tail(16, 4.0, s2);
    EXPECT_GE(f, prev - 1e-15);
    EXPECT_LE(f, 1.0);
    prev = f;
  }
}

TEST(ChiSquare, AgreesWithMonteCarlo) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g(0.0, 1.0);
  const int n = 24;
  const double s2 = 0.25;
  const double r = 7.0;
  const int trials = 1000000;
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    double s = 0;
    for (int i = 0; i < n; ++i) {
      const double w = g(rng);
      s += w * w * s2;
    }
    if (s > r) ++hits;
  }
  const double p = chi_square_tail(n, r, s2);
  const double se = std::sqrt(p * (1 - p) / trials);
  EXPECT_LT(std::abs(hits / double(trials) - p), 3 * se);
}

TEST(Vnr, ConversionsRoundTrip) {
  EXPECT_NEAR(vnr_to_sigma_sq(1.0, 0.0), 1.0 / (2 * M_PI * M_E), 1e-15);
  EXPECT_NEAR(vnr_to_sigma_sq(1.0, 0.0), 0.05855, 1e-5);
  for (double db : {-1.0, 0.0, 2.5, 3.3, 7.0}) {
    EXPECT_NEAR(sigma_sq_to_vnr(1.7, vnr_to_sigma_sq(1.7, db)), db, 1e-12 * std::max(1.0, std::abs(db)));
  }
  const LatticeBasis leech = leech_turyn();
  EXPECT_NEAR(vnr_to_sigma_sq(leech, 3.3), std::pow(10.0, -0.33) / (2 * M_PI * M_E), 1e-15);
  EXPECT_THROW(vnr_to_sigma_sq(0.0, 1.0), ValidationError);
}

TEST(UnionBound, LeechTwoShellsHighPrecision) {
  using big = boost::multiprecision::cpp_dec_float_50;
  const big s2 = pow(big(10), big(-0.33)) / (2 * boost::math::constants::pi<big>() * boost::math::constants::e<big>());
  auto q = [](const big& x) { return erfc(x / sqrt(big(2))) / 2; };
  const big want = 196560 * q(sqrt(big(4) / (4 * s2))) + 16773120 * q(sqrt(big(6) / (4 * s2)));
  const double got = union_bound_two_shells(4, 196560, 6, 16773120, s2.convert_to<double>());
  EXPECT_NEAR(got, want.convert_to<double>(), 1e-12 * want.convert_to<double>());
  EXPECT_NEAR(union_bound_two_shells(4, 10, 6, 0, 0.2), 10 * q_function(std::sqrt(4 / 0.8)), 1e-15);
  EXPECT_THROW(union_bound_two_shells(4, 1, 4, 1, 0.2), ValidationError);
}

TEST(URecursion, DepthOneEqualsExplicitForm) {
  for (int k : {2, 3}) {
    PredictorSpec spec;
    spec.k = k;
    spec.depth = 1;
    spec.base = BaseCondition::chi_square(24, 4.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      const double db = -1.0 + 0.4 * i;
      const double delta = 0.3 + 0.02 * i;
      const double a = u_recursion(spec, delta, db);
      const double b = parity_depth1_explicit(k, 24, 4.0, 1.0, delta, db);
      EXPECT_NEAR(a, b, 1e-12) << k << " " << db;
    }
  }
}

TEST(URecursion, ZeroBaseAndClamping) {
  PredictorSpec spec;
  spec.k = 3;
  spec.depth = 2;
  spec.base = BaseCondition::tabulated(TabulatedCurve({{0.0, 1e-300}, {10.0, 1e-300}}));
  EXPECT_LT(u_recursion(spec, 0.5, 3.0), 1e-250);
  spec.base = BaseCondition::chi_square(2, 1.0, 1.0);
  for (double db = -5; db < 8; db += 0.5) {
    const double u = u_recursion(spec, 0.3, db);
    EXPECT_GE(u, 0.0);
    EXPECT_LE(u, 1.0);
  }
}

TEST(URecursion, MonotoneInVnr) {
  for (auto fam : {PredictorFamily::GenericParity, PredictorFamily::SplitK2}) {
    PredictorSpec spec;
    spec.family = fam;
    spec.k = 2;
    spec.depth = 3;
    spec.base = BaseCondition::chi_square(2, 1.0, 1.0);
    double prev = 1.0;
    for (double db = -2; db < 9; db += 0.25) {
      const double u = u_recursion(spec, 0.4, db);
      EXPECT_LE(u, prev + 1e-15);
      prev = u;
    }
  }
}

TEST(URecursion, SplitNotBelowPlain) {
  PredictorSpec spec;
  spec.k = 2;
  spec.depth = 3;
  spec.base = BaseCondition::chi_square(2, 1.0, 1.0);
  for (double db = 0; db < 8; db += 0.5) {
    for (double delta : {0.3, 0.4, 0.5}) {
      EXPECT_GE(u_recursion_split_k2(spec, delta, db), u_recursion(spec, delta, db) - 1e-15);
    }
  }
}

TEST(URecursion, LeechAndNebeForms) {
  // Same-VNR form: U = 3 P^2 + 3 P(2 Delta) (1 - P)^2 over a tabulated base.
  const TabulatedCurve p({{1.0, 1e-1}, {3.0, 1e-3}, {5.0, 1e-6}});
  PredictorSpec spec;
  spec.family = PredictorFamily::Nebe;
  spec.k = 3;
  spec.depth = 1;
  spec.base = BaseCondition::tabulated(p);
  for (double db : {1.5, 2.0, 3.0}) {
    const double a = p(db);
    const double b = p(db + 10 * std::log10(2.0));
    EXPECT_NEAR(u_recursion(spec, 0.5, db), 3 * a * a + 3 * b * (1 - a) * (1 - a), 1e-15);
  }
  // Parity form over the same base with the 2^{1/3} and 2^{2/3} shifts.
  spec.family = PredictorFamily::GenericParity;
  const double a = p(2.0 - 10 * std::log10(std::cbrt(2.0)));
  const double b = p(2.0 + 10 * std::log10(std::cbrt(4.0)));
  EXPECT_NEAR(u_recursion(spec, 0.5, 2.0), 3 * a * a + 3 * b * (1 - a) * (1 - a), 1e-15);
}

TEST(DeltaStar, RegularCertificate) {
  for (double s2 : {0.02, 0.05, 0.08}) {
    const auto r = delta_star_regular(24, 4.0, s2, 1e-4);
    EXPECT_LE(chi_square_tail(24, r.delta * 4.0, s2), 0.5e-4);
    EXPECT_GT(chi_square_tail(24, (r.delta - 2e-4) * 4.0, s2), 0.5e-4);
  }
  double prev = 10;
  for (double s2 : {0.08, 0.04, 0.01, 0.001, 1e-5}) {
    const double d = delta_star_regular(24, 4.0, s2, 1e-4).delta;
    EXPECT_LT(d, prev);
    prev = d;
  }
  EXPECT_LT(prev, 1e-3);
  EXPECT_THROW(delta_star_regular(24, 4.0, 10.0, 1e-4), ValidationError);
}

TEST(DeltaStar, ParityLeechOperatingPoint) {
  // Regular Lambda24 sphere children, VNR 2.02 dB on the Lambda24 scale,
  // target half of the L3x24 point error rate 72 * 1e-5.
  PredictorSpec spec;
  spec.family = PredictorFamily::Leech;
  spec.k = 3;
  spec.depth = 1;
  spec.base = BaseCondition::chi_square(24, 4.0, 1.0);
  const auto r = delta_star_modified(spec, 2.02, 72e-5);
  EXPECT_NEAR(r.delta, 25.0 / 64.0, 0.02);
  EXPECT_EQ(johnson_bound(24, r.delta), 4u);
}

TEST(Johnson, Values) {
  EXPECT_EQ(johnson_bound(24, 0.25), 2u);
  EXPECT_EQ(johnson_bound(24, 0.5), 48u);
  EXPECT_EQ(johnson_bound(24, 25.0 / 64.0), 4u);
  EXPECT_EQ(johnson_bound(8, 0.49), 16u);
  EXPECT_THROW(johnson_bound(8, 0.6), ValidationError);
}

TEST(Curve, LogLinearInterpolation) {
  const TabulatedCurve c({{1.0, 1e-2}, {2.0, 1e-4}});
  EXPECT_NEAR(c(1.5), 1e-3, 1e-15);
  EXPECT_NEAR(c(3.0), 1e-6, 1e-18);
  EXPECT_DOUBLE_EQ(c(-10.0), 1.0);
}
