#pragma once

// Independent reference computations used by the tests. None of these call
// into the library's evaluators.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

/// L_k^a(x) from the explicit finite series, summed in 50-digit arithmetic.
inline double laguerre_series(int k, int a, double x) {
  big sum = 0;
  big xp = 1;       // x^j
  big fact = 1;     // j!
  for (int j = 0; j <= k; ++j) {
    if (j > 0) {
      xp *= x;
      fact *= j;
    }
    // C(k+a, k-j)
    big c = 1;
    for (int t = 1; t <= k - j; ++t) c = c * (a + j + t) / t;
    const big term = c * xp / fact;
    sum += (j % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum);
}

/// phi_k^a at radius rho from the series oracle.
inline double laguerre_function(int k, int a, double rho) {
  return laguerre_series(k, a, 0.5 * rho * rho) * std::exp(-0.25 * rho * rho);
}

/// Adaptive Gauss-Kronrod on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-14) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol);
}

inline std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a,
                                              double b, double tol = 1e-14) {
  const double re = integrate([&](double t) { return f(t).real(); }, a, b, tol);
  const double im = integrate([&](double t) { return f(t).imag(); }, a, b, tol);
  return {re, im};
}

/// Residual ||A u - lambda u|| / ||u|| of A = -Delta + |z|^2/4 for a radial
/// function u on R^{2n}, using 8th-order centred differences on a uniform
/// radial grid over [rho_lo, rho_hi].
inline double radial_eigen_residual(const std::function<double(double)>& u, int n, double lambda, double rho_lo,
                                    double rho_hi, double h) {
  static constexpr double d1[] = {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0.0, 4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
  static constexpr double d2[] = {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72, 8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560};
  double num = 0.0, den = 0.0;
  const int m = static_cast<int>(std::round((rho_hi - rho_lo) / h));
  for (int i = 0; i <= m; ++i) {
    const double rho = rho_lo + i * h;
    double du = 0.0, ddu = 0.0;
    for (int s = -4; s <= 4; ++s) {
      const double v = u(rho + s * h);
      du += d1[s + 4] * v;
      ddu += d2[s + 4] * v;
    }
    du /= h;
    ddu /= h * h;
    const double lap = ddu + (2.0 * n - 1.0) / rho * du;
    const double au = -lap + 0.25 * rho * rho * u(rho);
    const double jac = std::pow(rho, 2 * n - 1);  // L2(C^n) weight
    num += jac * std::pow(au - lambda * u(rho), 2);
    den += jac * u(rho) * u(rho);
  }
  return std::sqrt(num / den);
}

/// Smooth radial bump of radius eps on C^n with unit integral (approximate identity).
inline std::function<double(double)> approximate_identity(int n, double eps) {
  auto shape = [eps](double rho) {
    const double t = rho / eps;
    return t < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
  };
  const double area = 2.0 * std::pow(M_PI, n) / std::tgamma(static_cast<double>(n));
  const double mass = area * integrate([&](double r) { return shape(r) * std::pow(r, 2 * n - 1); }, 0.0, eps);
  return [shape, mass](double rho) { return shape(rho) / mass; };
}

}  // namespace oracle
