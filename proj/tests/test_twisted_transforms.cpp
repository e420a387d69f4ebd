#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsmlab/constants.hpp"
#include "tsmlab/twisted_transforms.hpp"

using namespace tsmlab;

namespace {

std::shared_ptr<const PlaneRule> plane1() {
  static const auto g = shared_plane_rule(1);
  return g;
}

SampledField gaussian_third(std::shared_ptr<const PlaneRule> grid, Point shift = Point(1)) {
  if (shift.dim != grid->dim()) shift = Point(grid->dim());
  return SampledField::sample(std::move(grid), [shift](const Point& z) { return cplx(std::exp(-(z - shift).norm2() / 3)); });
}

const std::vector<Point> kProbes1 = {Point{cplx(0, 0)}, Point{cplx(0.7, 0.2)}, Point{cplx(-1.1, 0.9)},
                                     Point{cplx(0.3, -2.0)}, Point{cplx(2.4, 1.3)}};

}  // namespace

// twisted_translate

TEST(TwistedTranslate, ZeroShiftIsIdentity) {
  const auto f = gaussian_third(plane1(), Point{cplx(0.5, 0.1)});
  const auto t = twisted_translate(f, Point{cplx(0, 0)});
  for (std::size_t i = 0; i < f.values().size(); ++i) EXPECT_EQ(t.values()[i], f.values()[i]);
}

TEST(TwistedTranslate, ModulusIsShiftedModulus) {
  const auto f = gaussian_third(plane1(), Point{cplx(0.5, 0.1)});
  const Point eta{cplx(1.2, -0.4)};
  const auto t = twisted_translate(f, eta);
  for (std::size_t i = 0; i < f.values().size(); i += 37) {
    const Point xi = f.grid().node(i);
    EXPECT_NEAR(std::abs(t.values()[i]), std::abs(f(xi - eta)), 1e-15);
  }
}

TEST(TwistedTranslate, CommutesWithSphericalMeans) {
  const auto f = gaussian_third(plane1(), Point{cplx(0.5, 0.1)});
  const Point eta{cplx(1.2, -0.4)};
  const auto tf = twisted_translate(f, eta);
  for (double r : {0.5, 1.5, 3.0})
    for (const auto& xi : kProbes1) {
      const cplx lhs = twisted_spherical_mean(f, xi - eta, r) * twist(eta, xi);
      const cplx rhs = twisted_spherical_mean(tf, xi, r);
      EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-13);
    }
}

TEST(TwistedTranslate, WarnsWhenMassLeavesGrid) {
  const auto grid = shared_polar_grid(1, {6.0, 32, 64});
  std::vector<cplx> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-grid->node(i).norm2() / 3);
  const SampledField f(grid, v);
  Diagnostics diag;
  const auto t = twisted_translate(f, Point{cplx(5.0, 0.0)}, &diag);
  EXPECT_FALSE(diag.warnings.empty());
  Diagnostics quiet;
  twisted_translate(f, Point{cplx(0.1, 0.0)}, &quiet);
  EXPECT_TRUE(quiet.warnings.empty());
}

// twisted_spherical_mean

TEST(SphericalMean, GroundStateAtOrigin) {
  const auto f = laguerre_field(0, plane1());
  for (double r : {0.1, 1.0, 2.5, 4.0})
    EXPECT_NEAR(std::abs(twisted_spherical_mean(f, Point{cplx(0, 0)}, r) - std::exp(-r * r / 4)), 0.0, 1e-15);
}

TEST(SphericalMean, OddFieldVanishesAtOrigin) {
  const auto f = SampledField::sample(plane1(), [](const Point& z) { return z[0] * std::exp(-z.norm2() / 2); });
  for (double r : {0.3, 1.0, 2.0}) EXPECT_NEAR(std::abs(twisted_spherical_mean(f, Point{cplx(0, 0)}, r)), 0.0, 1e-13);
}

TEST(SphericalMean, ZeroRadiusIsPointValue) {
  const auto f = gaussian_third(plane1(), Point{cplx(0.5, 0.1)});
  EXPECT_EQ(twisted_spherical_mean(f, kProbes1[2], 0.0), f(kProbes1[2]));
}

TEST(SphericalMean, SmallRadiusTendsToPointValue) {
  const auto f = gaussian_third(plane1(), Point{cplx(0.5, 0.1)});
  const cplx v = f(kProbes1[1]);
  EXPECT_LT(std::abs(twisted_spherical_mean(f, kProbes1[1], 1e-3) - v), 1e-5);
}

TEST(SphericalMean, ProductRelationOnC) {
  for (int k = 0; k <= 8; ++k) {
    const auto f = laguerre_field(k, plane1());
    for (double r : {0.3, 1.0, 2.0, 3.5, 5.0})
      for (const auto& z : kProbes1) {
        const double pr = laguerre_function({k, 0}, r) * laguerre_function({k, 0}, z.norm());
        const cplx got = twisted_spherical_mean(f, z, r);
        EXPECT_LE(std::abs(got - product_relation_constant(1, k) * pr), 1e-8 * (1 + std::abs(pr))) << k;
      }
  }
}

TEST(SphericalMean, ProductRelationOnC2) {
  const auto grid = shared_polar_grid(2, {12.0, 2, 4});
  const std::vector<Point> probes = {Point{cplx(0, 0), cplx(0, 0)}, Point{cplx(0.5, 0.2), cplx(-0.3, 0.8)},
                                     Point{cplx(1.5, 0), cplx(0, 1.0)}};
  const auto unit = sphere3_rule(1.0);
  for (int k : {0, 1, 3, 6}) {
    const auto f = laguerre_field(k, grid);
    for (double r : {0.5, 1.7, 3.0})
      for (const auto& z : probes) {
        const double pr = laguerre_function({k, 1}, r) * laguerre_function({k, 1}, z.norm());
        const cplx got = twisted_spherical_mean(f, z, r, unit);
        EXPECT_LE(std::abs(got - product_relation_constant(2, k) * pr), 1e-8 * (1 + std::abs(pr))) << k;
      }
  }
}

TEST(SphericalMean, RadialFieldGivesRadialMeans) {
  const auto f = gaussian_third(plane1());
  for (double r : {0.5, 2.0})
    for (double rho : {0.4, 1.3, 2.2}) {
      const cplx ref = twisted_spherical_mean(f, Point{cplx(rho, 0)}, r);
      for (double th : {0.3, 1.9, 4.0})
        EXPECT_NEAR(std::abs(twisted_spherical_mean(f, Point{std::polar(rho, th)}, r) - ref), 0.0, 1e-10);
    }
}

TEST(SphericalMean, InterpolatedFieldOutsideGridReportsNode) {
  const auto grid = shared_polar_grid(1, {4.0, 24, 48});
  std::vector<cplx> v(grid->size(), 0.0);
  const SampledField f(grid, v);
  try {
    twisted_spherical_mean(f, Point{cplx(3.5, 0)}, 1.0);
    FAIL() << "expected OutOfDomain";
  } catch (const OutOfDomain& e) {
    EXPECT_GT(std::abs(e.point()[0]), 4.0);
  }
}

TEST(SphericalMean, InterpolatedFieldMatchesExact) {
  const auto f = gaussian_third(plane1(), Point{cplx(0.5, 0.1)});
  const SampledField g(f.grid_ptr(), std::vector<cplx>(f.values().begin(), f.values().end()));
  for (const auto& z : kProbes1)
    EXPECT_NEAR(std::abs(twisted_spherical_mean(g, z, 1.3) - twisted_spherical_mean(f, z, 1.3)), 0.0, 1e-6);
}

// mean_profile

TEST(MeanProfile, GroundStateProfile) {
  const auto f = laguerre_field(0, plane1());
  const auto radii = geometric_radii(0.2, 6.0, 24);
  const auto p = mean_profile(f, Point{cplx(0, 0)}, radii);
  for (std::size_t i = 0; i < radii.size(); ++i)
    EXPECT_NEAR(std::abs(p.values[i] - std::exp(-radii[i] * radii[i] / 4)), 0.0, 1e-15);
}

TEST(MeanProfile, TwistedTranslateKeepsMagnitudes) {
  const auto f = gaussian_third(plane1(), Point{cplx(0.5, 0.1)});
  const Point eta{cplx(-0.8, 1.1)};
  const auto tf = twisted_translate(f, eta);
  const auto radii = geometric_radii(0.2, 6.0, 12);
  for (const auto& zeta : kProbes1) {
    const auto a = mean_profile(tf, eta + zeta, radii);
    const auto b = mean_profile(f, zeta, radii);
    const cplx phase = twist(eta, eta + zeta);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      EXPECT_NEAR(std::abs(a.values[i]), std::abs(b.values[i]), 1e-13);
      EXPECT_NEAR(std::abs(a.values[i] - phase * b.values[i]), 0.0, 1e-13);
    }
  }
}

TEST(MeanProfile, Linear) {
  const auto f = gaussian_third(plane1(), Point{cplx(0.5, 0.1)});
  const auto g = laguerre_field(2, plane1());
  const cplx a(0.3, -1.2), b(2.0, 0.5);
  const auto h = SampledField::sample(plane1(), [&](const Point& z) { return a * f(z) + b * g(z); });
  const auto radii = geometric_radii(0.2, 6.0, 24);
  const auto ph = mean_profile(h, kProbes1[3], radii);
  const auto pf = mean_profile(f, kProbes1[3], radii);
  const auto pg = mean_profile(g, kProbes1[3], radii);
  for (std::size_t i = 0; i < radii.size(); ++i) EXPECT_NEAR(std::abs(ph.values[i] - (a * pf.values[i] + b * pg.values[i])), 0.0, 1e-14);
}

// twisted_convolution

TEST(TwistedConvolution, GroundStateSquared) {
  const auto out = shared_polar_grid(1, {4.0, 6, 8});
  const auto f = laguerre_field(0, plane1());
  const auto c = twisted_convolution(f, f, out);
  for (std::size_t i = 0; i < out->size(); ++i)
    EXPECT_NEAR(std::abs(c.values()[i] - 2 * kPi * f(out->node(i))), 0.0, 1e-8);
  for (const auto& z : kProbes1) EXPECT_NEAR(std::abs(c(z) - 2 * kPi * f(z)), 0.0, 1e-8);
}

TEST(TwistedConvolution, DistinctDegreesAnnihilate) {
  const auto out = shared_polar_grid(1, {4.0, 4, 6});
  for (int k = 0; k <= 4; ++k)
    for (int m = 0; m <= 4; ++m) {
      if (k == m) continue;
      const auto c = twisted_convolution(laguerre_field(k, plane1()), laguerre_field(m, plane1()), out);
      EXPECT_LE(c.max_abs(), 1e-8) << k << "," << m;
    }
}

TEST(TwistedConvolution, AtOriginIsPlainPairing) {
  const auto f = gaussian_third(plane1(), Point{cplx(0.5, 0.1)});
  const auto g = SampledField::sample(plane1(), [](const Point& z) { return z[0] * std::exp(-z.norm2() / 2); });
  const auto c = twisted_convolution(f, g, shared_polar_grid(1, {1.0, 2, 4}));
  const auto& grid = f.grid();
  // int f(-w) g(w) dw on the same rule, with w -> -w
  CompensatedSum<cplx> ref;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Point w = grid.node(i);
    Point mw(1);
    mw[0] = -w[0];
    ref.add(grid.weight(i) * f(w) * g(mw));
  }
  EXPECT_NEAR(std::abs(c(Point{cplx(0, 0)}) - ref.value()), 0.0, 1e-13);
}

TEST(TwistedConvolution, RejectsDimensionMismatch) {
  const auto f = laguerre_field(0, plane1());
  const auto g = laguerre_field(0, shared_polar_grid(2, {12.0, 2, 4}));
  EXPECT_THROW(twisted_convolution(f, g), GridMismatch);
}

TEST(TwistedConvolution, RejectsUncoveredSampledKernel) {
  const auto f = laguerre_field(0, plane1());
  const SampledField g(plane1(), std::vector<cplx>(f.values().begin(), f.values().end()));
  EXPECT_THROW(twisted_convolution(f, g), GridMismatch);
}

// spectral projections

TEST(SpectralProjection, LaguerreFieldsAreEigen) {
  const auto out = shared_polar_grid(1, {5.0, 6, 8});
  for (int m = 0; m <= 4; ++m) {
    const auto f = laguerre_field(m, plane1());
    const auto q = spectral_projections(f, 6, out);
    for (int k = 0; k <= 6; ++k) {
      double err = 0.0;
      for (std::size_t i = 0; i < out->size(); ++i) {
        const cplx expect = k == m ? 2 * kPi * f(out->node(i)) : cplx(0.0);
        err = std::max(err, std::abs(q[static_cast<std::size_t>(k)].values()[i] - expect));
      }
      EXPECT_LE(err, 1e-8) << "m=" << m << " k=" << k;
    }
  }
}

TEST(SpectralProjection, SpecialHermiteDegreeIsAlpha) {
  const auto out = shared_polar_grid(1, {5.0, 6, 8});
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      const auto f = special_hermite_field({a, b}, plane1());
      const auto q = spectral_projections(f, 4, out);
      for (int k = 0; k <= 4; ++k)
        for (std::size_t i = 0; i < out->size(); ++i) {
          const cplx expect = k == a ? 2 * kPi * f(out->node(i)) : cplx(0.0);
          EXPECT_NEAR(std::abs(q[static_cast<std::size_t>(k)].values()[i] - expect), 0.0, 1e-8);
        }
    }
}

TEST(SpectralProjection, ExpansionReconstructsGaussian) {
  const auto out = shared_polar_grid(1, {6.0, 16, 32});
  const auto f = gaussian_third(plane1());
  const auto target = SampledField::sample(out, f.evaluator());
  const auto q = spectral_projections(f, 40, out);
  double prev = 1e300;
  for (int K : {0, 5, 10, 20, 40}) {
    const auto rec = special_hermite_reconstruction(std::span<const SampledField>(q.data(), static_cast<std::size_t>(K) + 1));
    const double err = relative_grid_l2(rec, target);
    EXPECT_LT(err, std::max(prev, 1e-13)) << K;
    prev = err;
  }
  EXPECT_LE(prev, 1e-6);
}

TEST(SpectralProjection, IdempotentUpToConstant) {
  const auto grid = plane1();
  const auto f = gaussian_third(grid, Point{cplx(0.4, -0.3)});
  for (int k : {1, 4}) {
    const auto q = spectral_projection(f, k);
    const SampledField qs(grid, std::vector<cplx>(q.values().begin(), q.values().end()));
    const auto qq = spectral_projection(qs, k);
    std::vector<cplx> scaled(q.values().size());
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = 2 * kPi * q.values()[i];
    EXPECT_LE(relative_grid_l2(qq, SampledField(grid, scaled)), 1e-6) << k;
  }
}

TEST(SpectralProjection, WarnsBeyondGridDegree) {
  const auto grid = shared_polar_grid(1, {12.0, 16, 32});
  const auto f = gaussian_third(grid);
  Diagnostics diag;
  spectral_projections(f, max_supported_degree(*grid) + 1, shared_polar_grid(1, {1.0, 2, 4}), &diag);
  EXPECT_FALSE(diag.warnings.empty());
}

TEST(SpectralProjection, SmoothAlongSegment) {
  // derivative estimates at steps h and h/2 agree, up to 4th order
  const auto f = gaussian_third(plane1(), Point{cplx(0.5, 0.1)});
  const auto q = spectral_projection(f, 3, shared_polar_grid(1, {1.0, 2, 4}));
  auto along = [&](double t) { return q(Point{cplx(-1.0 + t, 0.5 * t)}); };
  auto deriv = [&](int order, double t, double h) {
    cplx s = 0.0;
    for (int j = 0; j <= order; ++j) s += (j % 2 ? -1.0 : 1.0) * binomial(order, j) * along(t + (0.5 * order - j) * h);
    return s / std::pow(h, order);
  };
  for (int order = 1; order <= 4; ++order)
    for (double t : {0.0, 0.8, 1.6}) {
      const cplx a = deriv(order, t, 0.1), b = deriv(order, t, 0.05);
      EXPECT_LT(std::abs(a - b), 0.05 * (1.0 + std::abs(b))) << order;
    }
}

TEST(SpectralProjection, EigenvalueTransportRadial) {
  const auto f = gaussian_third(plane1());
  for (int k = 0; k <= 4; ++k) {
    const auto q = spectral_projection(f, k, shared_polar_grid(1, {1.0, 2, 4}));
    const double scale = std::abs(q(Point{cplx(0, 0)})) + 1e-300;
    for (const auto& z : kProbes1) {
      const cplx lq = special_hermite_operator(q.evaluator(), z, 0.02, false);
      EXPECT_LE(std::abs(lq - (2.0 * k + 1) * q(z)) / scale, 1e-4) << k;
    }
  }
}

TEST(SpectralProjection, EigenvalueTransportNeedsRotationTerm) {
  const auto f = gaussian_third(plane1(), Point{cplx(0.6, -0.4)});
  for (int k = 0; k <= 4; ++k) {
    const auto q = spectral_projection(f, k, shared_polar_grid(1, {1.0, 2, 4}));
    double scale = 0.0;
    for (const auto& z : kProbes1) scale = std::max(scale, std::abs(q(z)));
    for (const auto& z : kProbes1) {
      const cplx lq = special_hermite_operator(q.evaluator(), z, 0.02, true);
      EXPECT_LE(std::abs(lq - (2.0 * k + 1) * q(z)) / scale, 1e-4) << k;
    }
  }
  // phi_01 has spectral degree 0 but -Delta + |z|^2/4 eigenvalue 2
  const FieldFunction phi01 = [](const Point& z) { return special_hermite_basis({0, 1}, z[0]); };
  const Point z{cplx(0.7, 0.3)};
  EXPECT_NEAR(std::abs(special_hermite_operator(phi01, z, 0.02, false) - 2.0 * phi01(z)), 0.0, 1e-7);
  EXPECT_NEAR(std::abs(special_hermite_operator(phi01, z, 0.02, true) - 1.0 * phi01(z)), 0.0, 1e-7);
}

// polar_bridge

TEST(PolarBridge, ConstantFixingAtOrigin) {
  const auto f = laguerre_field(0, plane1());
  const auto rule = radial_rule(1, 12.0, 64);
  const auto prof = mean_profile(f, Point{cplx(0, 0)}, rule);
  const cplx bridge = polar_bridge(prof, 0, 1);
  const cplx proj = spectral_projection(f, 0, shared_polar_grid(1, {1.0, 2, 4}))(Point{cplx(0, 0)});
  EXPECT_NEAR(std::abs(bridge - 2 * kPi), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(proj - 2 * kPi), 0.0, 1e-10);
}

TEST(PolarBridge, ConstantFixingAtOriginOnC2) {
  const auto grid = shared_polar_grid(2, {12.0, 2, 4});
  const auto f = laguerre_field(0, grid);
  const auto rule = radial_rule(2, 12.0, 64);
  const auto prof = mean_profile(f, Point{cplx(0, 0), cplx(0, 0)}, rule);
  EXPECT_NEAR(std::abs(polar_bridge(prof, 0, 2) - 4 * kPi * kPi), 0.0, 1e-10);
}

TEST(PolarBridge, AgreesWithSpectralProjection) {
  const auto rule = radial_rule(1, 12.0, 64);
  for (const Point shift : {Point{cplx(0, 0)}, Point{cplx(0.6, -0.4)}}) {
    const auto f = gaussian_third(plane1(), shift);
    const auto q = spectral_projections(f, 6, shared_polar_grid(1, {1.0, 2, 4}));
    for (const auto& z : kProbes1) {
      const auto prof = mean_profile(f, z, rule);
      for (int k = 0; k <= 6; ++k)
        EXPECT_NEAR(std::abs(polar_bridge(prof, k, 1) - q[static_cast<std::size_t>(k)](z)), 0.0, 1e-6) << k;
    }
  }
}

TEST(PolarBridge, ZeroProfile) {
  const auto rule = radial_rule(1, 12.0, 64);
  MeanProfile p;
  p.center = Point{cplx(0, 0)};
  p.radii = rule.nodes;
  p.weights = rule.weights;
  p.values.assign(rule.nodes.size(), 0.0);
  EXPECT_EQ(polar_bridge(p, 3, 1), cplx(0.0));
}

TEST(PolarBridge, WarnsOnShortRadialGrid) {
  const auto f = gaussian_third(plane1());
  const auto prof = mean_profile(f, Point{cplx(0.2, 0)}, radial_rule(1, 2.0, 32));
  Diagnostics diag;
  polar_bridge(prof, 1, 1, &diag);
  EXPECT_FALSE(diag.warnings.empty());
}

TEST(PolarBridge, RequiresRadialWeights) {
  MeanProfile p;
  p.radii = {1.0, 2.0};
  p.values = {1.0, 1.0};
  EXPECT_THROW(polar_bridge(p, 0, 1), std::invalid_argument);
}

TEST(PolarBridge, VanishingEquivalenceBothWays) {
  const auto rule = radial_rule(1, 12.0, 64);
  // vanishing: odd field at the origin
  const auto odd = SampledField::sample(plane1(), [](const Point& z) { return z[0] * std::exp(-z.norm2() / 3); });
  const auto p0 = mean_profile(odd, Point{cplx(0, 0)}, rule);
  EXPECT_LE(p0.max_abs(), 1e-13);
  double maxb = 0.0;
  for (int k = 0; k <= 10; ++k) maxb = std::max(maxb, std::abs(polar_bridge(p0, k, 1)));
  EXPECT_LE(maxb, 1e-12);
  // non-vanishing: a Gaussian at a generic centre has a nonzero profile and projection
  const auto g = gaussian_third(plane1(), Point{cplx(0.5, 0.1)});
  const auto p1 = mean_profile(g, kProbes1[1], rule);
  EXPECT_GT(p1.max_abs(), 1e-3);
  maxb = 0.0;
  for (int k = 0; k <= 10; ++k) maxb = std::max(maxb, std::abs(polar_bridge(p1, k, 1)));
  EXPECT_GT(maxb, 1e-3);
}

// tensor decomposition

TEST(TensorDecompose, DiagonalSumIsProjection) {
  const auto grid = shared_plane_rule(2, {12.0, 24, 32});
  const auto out = shared_polar_grid(2, {3.0, 3, 6});
  const auto f = SampledField::sample(grid, [](const Point& z) {
    return std::exp(-std::norm(z[0] - cplx(0.4, 0.2)) / 3 - std::norm(z[1]) / 2) * (1.0 + z[0] * std::conj(z[1]));
  });
  const auto q = spectral_projections(f, 4, out);
  for (int k = 0; k <= 4; ++k) {
    const auto pieces = tensor_decompose_projection(f, k, out);
    ASSERT_EQ(pieces.size(), static_cast<std::size_t>(k + 1));
    std::vector<cplx> sum(out->size(), 0.0);
    for (const auto& p : pieces)
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += p.values()[i];
    EXPECT_LE(relative_grid_l2(SampledField(out, sum), q[static_cast<std::size_t>(k)]), 1e-6) << k;
  }
}

TEST(TensorDecompose, ProductFieldSeparates) {
  const PlaneOrders orders{12.0, 24, 32};
  const auto grid2 = shared_plane_rule(2, orders);
  const auto grid1 = shared_plane_rule(1, orders);
  auto g = [](cplx w) { return std::exp(-std::norm(w - cplx(0.3, -0.5)) / 3); };
  auto h = [](cplx w) { return w * std::exp(-std::norm(w) / 2); };
  const auto f = SampledField::sample(grid2, [&](const Point& z) { return g(z[0]) * h(z[1]); });
  const auto gf = SampledField::sample(grid1, [&](const Point& z) { return g(z[0]); });
  const auto hf = SampledField::sample(grid1, [&](const Point& z) { return h(z[0]); });
  const int k = 3;
  const auto out = shared_polar_grid(2, {2.0, 2, 4});
  const auto pieces = tensor_decompose_projection(f, k, out);
  const auto probe = shared_polar_grid(1, {1.0, 2, 4});
  const auto gq = spectral_projections(gf, k, probe);
  const auto hq = spectral_projections(hf, k, probe);
  for (std::size_t i = 0; i < out->size(); i += 5) {
    const Point z = out->node(i);
    for (int b1 = 0; b1 <= k; ++b1) {
      const cplx expect = gq[static_cast<std::size_t>(b1)](Point{z[0]}) * hq[static_cast<std::size_t>(k - b1)](Point{z[1]});
      EXPECT_NEAR(std::abs(pieces[static_cast<std::size_t>(b1)].values()[i] - expect), 0.0, 1e-12);
    }
  }
}

TEST(TensorDecompose, ZeroFieldGivesZeroPieces) {
  const auto grid = shared_polar_grid(2, {12.0, 8, 8});
  const SampledField f(grid, std::vector<cplx>(grid->size(), 0.0));
  for (const auto& p : tensor_decompose_projection(f, 2, shared_polar_grid(2, {2.0, 2, 4}))) EXPECT_EQ(p.max_abs(), 0.0);
}

TEST(TensorDecompose, RejectsC1) {
  EXPECT_THROW(tensor_decompose_projection(laguerre_field(0, plane1()), 1), std::invalid_argument);
}
