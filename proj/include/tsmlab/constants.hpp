#pragma once

// Frozen normalization constants. Derivations are in docs/conventions.md;
// the tests recompute each one from its z = 0 consistency condition.

#include <cmath>

#include "tsmlab/core.hpp"

namespace tsmlab {

/// phi_k^{n-1} x mu_r = B(n,k) phi_k^{n-1}(r) phi_k^{n-1}(|z|), B = k!(n-1)!/(k+n-1)!.
/// At z = 0 the mean is phi_k(r) and phi_k(0) = C(k+n-1, k), so B = 1/C(k+n-1, k).
inline double product_relation_constant(int n, int k) {
  double b = 1.0;
  for (int j = 1; j <= n - 1; ++j) b *= static_cast<double>(j) / static_cast<double>(k + j);
  return b;
}

/// Surface area of the unit sphere S^{2n-1} in C^n: 2 pi^n / (n-1)!.
inline double sphere_area(int n) {
  return 2.0 * std::pow(kPi, n) / std::tgamma(static_cast<double>(n));
}

/// Constant in f = (2pi)^{-n} sum_k f x phi_k^{n-1}.
inline double expansion_constant(int n) { return std::pow(2.0 * kPi, -n); }

/// sigma_min of the twisted sampling operator on Sigma_2 (two perpendicular
/// lines through 0 in C) at K = 10 under the default probe configuration:
/// 7 points per ray up to extent 3, 24 geometric radii in [0.2, 6], circle
/// rule m = 256. Recorded from the first run; see tests/acceptance.cpp.
inline constexpr double kTwistedSigma2SigmaMin = 0.01396986975217817;

}  // namespace tsmlab
