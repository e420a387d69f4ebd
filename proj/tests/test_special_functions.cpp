#include <gtest/gtest.h>

#include <memory>

#include "oracles.hpp"
#include "tsmlab/quadrature.hpp"
#include "tsmlab/special_functions.hpp"

using namespace tsmlab;

TEST(Laguerre, DegreeZeroIsOne) { EXPECT_EQ(laguerre_polynomial({0, 3}, 7.2), 1.0); }

TEST(Laguerre, DegreeOneVanishesAtOnePlusOrder) { EXPECT_EQ(laguerre_polynomial({1, 2}, 3.0), 0.0); }

TEST(Laguerre, MatchesSeriesAtSamplePoint) {
  const double ref = oracle::laguerre_series(4, 1, 2.5);
  EXPECT_NEAR(laguerre_polynomial({4, 1}, 2.5), ref, 1e-13 * std::abs(ref));
}

TEST(Laguerre, RejectsBadArguments) {
  EXPECT_THROW(laguerre_polynomial({2, 0}, -0.1), std::domain_error);
  EXPECT_THROW(laguerre_polynomial({2, 0}, std::nan("")), std::domain_error);
  EXPECT_THROW(laguerre_polynomial({2, 0}, INFINITY), std::domain_error);
  EXPECT_THROW(laguerre_polynomial({-1, 0}, 1.0), std::invalid_argument);
}

TEST(Laguerre, RecurrenceAgreesWithSeriesOnGrid) {
  double worst = 0.0;
  for (int k = 0; k <= 20; ++k)
    for (int a = 0; a <= 5; ++a)
      for (int i = 0; i < 100; ++i) {
        const double x = 50.0 * i / 99.0;
        const double ref = oracle::laguerre_series(k, a, x);
        const double err = std::abs(laguerre_polynomial({k, a}, x) - ref) / std::max(1.0, std::abs(ref));
        worst = std::max(worst, err);
      }
  EXPECT_LE(worst, 1e-11);
}

TEST(Laguerre, SequenceMatchesPointwise) {
  std::vector<double> seq(16);
  laguerre_sequence(2, 3.7, seq);
  for (int k = 0; k < 16; ++k) EXPECT_DOUBLE_EQ(seq[static_cast<std::size_t>(k)], laguerre_polynomial({k, 2}, 3.7));
}

TEST(LaguerreFunction, DegreeZeroIsGaussian) {
  for (double r : {0.0, 0.5, 2.0, 5.0}) EXPECT_DOUBLE_EQ(laguerre_function({0, 1}, r), std::exp(-r * r / 4));
}

TEST(LaguerreFunction, ValueAtOriginIsBinomial) {
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= 10; ++k) EXPECT_DOUBLE_EQ(laguerre_function({k, n - 1}, 0.0), binomial(k + n - 1, k));
}

TEST(LaguerreFunction, DegreeTwoAtSqrtTwo) {
  const double ref = oracle::laguerre_series(2, 0, 1.0) * std::exp(-0.5);
  EXPECT_NEAR(ref, -0.5 * std::exp(-0.5), 1e-15);
  EXPECT_NEAR(laguerre_function({2, 0}, std::sqrt(2.0)), ref, 1e-15);
}

TEST(LaguerreFunction, EigenfunctionOfSpecialHermiteOperator) {
  for (int n = 1; n <= 2; ++n)
    for (int k = 0; k <= 10; ++k) {
      auto u = [&](double rho) { return laguerre_function({k, n - 1}, rho); };
      const double res = oracle::radial_eigen_residual(u, n, 2.0 * k + n, 0.25, 12.0, 0.01);
      EXPECT_LE(res, 1e-6) << "n=" << n << " k=" << k;
    }
}

TEST(SpecialHermite, GroundStateIsNormalizedGaussian) {
  for (cplx z : {cplx(0, 0), cplx(1.2, -0.7), cplx(-3, 2)})
    EXPECT_NEAR(std::abs(special_hermite_basis({0, 0}, z) - std::exp(-std::norm(z) / 4) / std::sqrt(2 * kPi)), 0.0,
                1e-16);
}

TEST(SpecialHermite, DiagonalRelationAtDegreeZero) {
  const cplx z(0.8, 1.1);
  EXPECT_NEAR(std::abs(special_hermite_basis({0, 0}, z) - laguerre_function({0, 0}, std::abs(z)) / std::sqrt(2 * kPi)),
              0.0, 1e-16);
}

TEST(SpecialHermite, GramMatrixIsIdentity) {
  const auto rule = plane_rule(1);
  const int K = 4;
  std::vector<std::vector<cplx>> vals((K + 1) * (K + 1), std::vector<cplx>(rule.size()));
  SpecialHermiteTable t(K);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    t.evaluate(rule.node(i)[0]);
    for (std::size_t b = 0; b < vals.size(); ++b) vals[b][i] = t.values()[b];
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < vals.size(); ++a)
    for (std::size_t b = 0; b < vals.size(); ++b) {
      CompensatedSum<cplx> s;
      for (std::size_t i = 0; i < rule.size(); ++i) s.add(rule.weight(i) * vals[a][i] * std::conj(vals[b][i]));
      worst = std::max(worst, std::abs(s.value() - (a == b ? 1.0 : 0.0)));
    }
  EXPECT_LE(worst, 1e-7);
}

TEST(SpecialHermite, Phi01Normalized) {
  const auto rule = plane_rule(1);
  const double n2 = integrate(rule, [](const Point& z) { return cplx(std::norm(special_hermite_basis({0, 1}, z[0]))); }).real();
  EXPECT_NEAR(n2, 1.0, 1e-8);
}

TEST(SpecialHermite, TableMatchesPointwise) {
  SpecialHermiteTable t(6);
  const cplx z(-1.3, 0.4);
  t.evaluate(z);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) EXPECT_NEAR(std::abs(t(a, b) - special_hermite_basis({a, b}, z)), 0.0, 1e-15);
}

TEST(SolidHarmonics, HolomorphicDegreeOneOnC2) {
  const auto basis = solid_harmonic_basis(1, 0, 2);
  ASSERT_EQ(basis.size(), 2u);
  const Point z{cplx(0.3, 0.2), cplx(-1.0, 0.5)};
  EXPECT_EQ(basis[0](z), z[0]);
  EXPECT_EQ(basis[1](z), z[1]);
}

TEST(SolidHarmonics, BidegreeOneOneOnC2) {
  const auto basis = solid_harmonic_basis(1, 1, 2);
  ASSERT_EQ(basis.size(), 3u);
  EXPECT_EQ(basis[0].to_string(), "(1)z1^1zb1^1 + (-1)z2^1zb2^1");
  EXPECT_EQ(basis[1].to_string(), "(1)z1^1zb2^1");
  EXPECT_EQ(basis[2].to_string(), "(1)zb1^1z2^1");
}

TEST(SolidHarmonics, BidegreeOneOneOnCIsEmpty) { EXPECT_TRUE(solid_harmonic_basis(1, 1, 1).empty()); }

TEST(SolidHarmonics, AllHarmonicWithExpectedDimension) {
  for (int n = 1; n <= 3; ++n)
    for (int p = 0; p <= 3; ++p)
      for (int q = 0; q <= 3; ++q) {
        const auto basis = solid_harmonic_basis(p, q, n);
        EXPECT_EQ(static_cast<int>(basis.size()), solid_harmonic_dimension(p, q, n));
        for (const auto& h : basis) EXPECT_TRUE(h.is_harmonic()) << h.to_string();
      }
}

TEST(SolidHarmonics, LaplacianOfZZbarIsFour) {
  const SolidHarmonic h(1, 1, 1, bigraded_monomials(1, 1, 1), {Rational(1)});
  const auto l = h.laplacian();
  ASSERT_EQ(l.coeffs().size(), 1u);
  EXPECT_EQ(l.coeffs()[0], Rational(4));
}

TEST(SolidHarmonics, RejectsUnsupportedDimension) { EXPECT_THROW(solid_harmonic_basis(1, 0, 4), std::invalid_argument); }
