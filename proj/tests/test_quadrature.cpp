#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsmlab/quadrature.hpp"
#include "tsmlab/special_functions.hpp"

using namespace tsmlab;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const auto g = gauss_legendre(10, -1.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], 19);
  EXPECT_NEAR(s, (std::pow(2.0, 20) - 1.0) / 20.0, 1e-9);
}

TEST(CircleRule, WeightsSumToOne) {
  const auto c = circle_rule(2.0, 17);
  EXPECT_NEAR(integrate(c, [](const Point&) { return 1.0; }), 1.0, 1e-15);
}

TEST(CircleRule, LinearMomentVanishes) {
  const auto c = circle_rule(1.7, 64);
  EXPECT_NEAR(std::abs(integrate(c, [](const Point& w) { return w[0]; })), 0.0, 1e-15);
}

TEST(CircleRule, NodesOnCircle) {
  const auto c = circle_rule(3.5, 256, 0.3);
  for (const auto& p : c.nodes) EXPECT_NEAR(p.norm(), 3.5, 1e-12 * 3.5);
}

TEST(CircleRule, OffCentreGaussianMatchesAdaptiveOracle) {
  const cplx z0(1.0, 0.0);
  const auto c = circle_rule(1.0, 64);
  const double got = integrate(c, [&](const Point& w) { return std::exp(-std::norm(z0 - w[0]) / 4); });
  const double ref =
      oracle::integrate([&](double t) { return std::exp(-std::norm(z0 - std::polar(1.0, t)) / 4); }, 0, 2 * kPi) /
      (2 * kPi);
  EXPECT_NEAR(got, ref, 1e-12);
}

TEST(CircleRule, RejectsBadInput) {
  EXPECT_THROW(circle_rule(0.0, 8), std::invalid_argument);
  EXPECT_THROW(circle_rule(-1.0, 8), std::invalid_argument);
  EXPECT_THROW(circle_rule(1.0, 3), std::invalid_argument);
}

TEST(Sphere3Rule, NormalizedAndOnSphere) {
  const auto s = sphere3_rule(2.0);
  EXPECT_NEAR(integrate(s, [](const Point&) { return 1.0; }), 1.0, 1e-14);
  for (const auto& p : s.nodes) EXPECT_NEAR(p.norm(), 2.0, 1e-12 * 2.0);
  for (double w : s.weights) EXPECT_GT(w, 0.0);
}

TEST(Sphere3Rule, PowersOfFirstCoordinateVanish) {
  const auto s = sphere3_rule(1.0);
  for (int j = 1; j <= 6; ++j)
    EXPECT_NEAR(std::abs(integrate(s, [j](const Point& w) { return std::pow(w[0], j); })), 0.0, 1e-14) << j;
}

TEST(Sphere3Rule, SecondMomentIsHalf) {
  const auto s = sphere3_rule(1.0);
  const double got = integrate(s, [](const Point& w) { return std::norm(w[0]); });
  // dense brute-force rule as oracle
  const auto dense = sphere3_rule(1.0, {64, 64, 64});
  const double ref = integrate(dense, [](const Point& w) { return std::norm(w[0]); });
  EXPECT_NEAR(ref, 0.5, 1e-14);
  EXPECT_NEAR(got, 0.5, 1e-14);
}

TEST(Sphere3Rule, RejectsNonPositiveRadius) { EXPECT_THROW(sphere3_rule(0.0), std::invalid_argument); }

TEST(RadialRule, GaussianMoments) {
  // int_0^inf e^{-r^2/2} r^{2n-1} dr = 2^{n-1} (n-1)!
  for (int n = 1; n <= 3; ++n) {
    const auto rr = radial_rule(n, 12.0, 64);
    EXPECT_EQ(rr.jacobian_power, 2 * n - 1);
    double s = 0.0;
    for (std::size_t i = 0; i < rr.nodes.size(); ++i) s += rr.weights[i] * std::exp(-0.5 * rr.nodes[i] * rr.nodes[i]);
    EXPECT_NEAR(s, std::pow(2.0, n - 1) * std::tgamma(n), 1e-12);
  }
}

TEST(PlaneRule, GaussianIntegralOnC) {
  const auto rule = plane_rule(1);
  const auto v = integrate(rule, [](const Point& z) { return std::exp(-0.5 * z.norm2()); });
  EXPECT_NEAR(v.real(), 2 * kPi, 1e-10 * 2 * kPi);
  EXPECT_LE(rule.gaussian_moment_error, 1e-10);
}

TEST(PlaneRule, GroundStateSquaredOnC) {
  const auto rule = plane_rule(1);
  const auto v = integrate(rule, [](const Point& z) { return std::pow(laguerre_function({0, 0}, z.norm()), 2); });
  EXPECT_NEAR(v.real(), 2 * kPi, 1e-10);
}

TEST(PlaneRule, GaussianIntegralOnC2) {
  const auto rule = plane_rule(2, {12.0, 32, 32});
  const auto v = integrate(rule, [](const Point& z) { return std::exp(-0.5 * z.norm2()); });
  EXPECT_NEAR(v.real(), 4 * kPi * kPi, 1e-8 * 4 * kPi * kPi);
}

TEST(PlaneRule, RejectsShortExtent) {
  EXPECT_THROW(plane_rule(1, {6.0, 64, 128}), QuadratureFailure);
  EXPECT_THROW(plane_rule(1, {12.0, 4, 8}), QuadratureFailure);
}

TEST(PlaneRule, RefinementStableOnLaguerreProducts) {
  const auto coarse = plane_rule(1);
  const auto fine = plane_rule(1, {12.0, 128, 256});
  for (int k = 0; k <= 10; ++k)
    for (int m = 0; m <= 10; m += 2) {
      auto f = [&](const Point& z) {
        return laguerre_function({k, 0}, z.norm()) * laguerre_function({m, 0}, std::abs(z[0] - cplx(0.5, 0.3)));
      };
      EXPECT_NEAR(std::abs(integrate(coarse, f) - integrate(fine, f)), 0.0, coarse.tolerance) << k << "," << m;
    }
}

TEST(PlaneRule, DeterministicNodes) {
  const auto a = plane_rule(1);
  const auto b = plane_rule(1);
  for (std::size_t i = 0; i < a.size(); i += 97) {
    EXPECT_EQ(a.node(i), b.node(i));
    EXPECT_EQ(a.weight(i), b.weight(i));
  }
}

TEST(GeometricRadii, EndpointsAndMonotone) {
  const auto r = geometric_radii(0.2, 6.0, 24);
  ASSERT_EQ(r.size(), 24u);
  EXPECT_DOUBLE_EQ(r.front(), 0.2);
  EXPECT_DOUBLE_EQ(r.back(), 6.0);
  for (std::size_t i = 1; i < r.size(); ++i) EXPECT_GT(r[i], r[i - 1]);
}
