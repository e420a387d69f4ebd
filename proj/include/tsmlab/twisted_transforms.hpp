#pragma once

// Twisted translation, twisted convolution, twisted spherical means, spectral
// projections Q_k = f x phi_k^{n-1}, the polar-decomposition bridge between
// them, and the tensor decomposition of Q_k on C^2. Fixed lambda = 1.
//
// Twisted convolution is evaluated in the form
//   (f x g)(z) = int f(u) g(z-u) e^{-(i/2) Im(z . conj(u))} du,
// obtained from the definition by w = z - u, so that f's own grid samples
// carry the integral and only g is evaluated off-grid.

#include <memory>
#include <span>
#include <vector>

#include "tsmlab/constants.hpp"
#include "tsmlab/core.hpp"
#include "tsmlab/field.hpp"
#include "tsmlab/quadrature.hpp"
#include "tsmlab/special_functions.hpp"

namespace tsmlab {

// Standard fields --------------------------------------------------------------

/// phi_k^{n-1}(|z|) on the grid's C^n.
inline SampledField laguerre_field(int k, std::shared_ptr<const PlaneRule> grid) {
  const int n = grid->dim();
  return SampledField::sample(
      std::move(grid), [k, n](const Point& z) { return cplx(laguerre_function({k, n - 1}, z.norm())); });
}

/// phi_ab on C.
inline SampledField special_hermite_field(SpecialHermiteIndex idx, std::shared_ptr<const PlaneRule> grid) {
  if (grid->dim() != 1) throw std::invalid_argument("special_hermite_field: grid must be on C");
  return SampledField::sample(
      std::move(grid), [idx](const Point& z) { return special_hermite_basis(idx, z[0]); });
}

/// (L u)(z) for the special Hermite operator L = -Delta + |z|^2/4 - i sum_j (x_j d/dy_j - y_j d/dx_j),
/// by 4th-order centred differences of step h. With rotation = false only
/// -Delta + |z|^2/4 is applied, which agrees with L on radial functions.
inline cplx special_hermite_operator(const FieldFunction& u, const Point& z, double h, bool rotation = true) {
  static constexpr double d1[] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
  static constexpr double d2[] = {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
  cplx lap = 0.0, rot = 0.0;
  for (int j = 0; j < z.dim; ++j) {
    cplx dx = 0.0, dy = 0.0, dxx = 0.0, dyy = 0.0;
    for (int s = -2; s <= 2; ++s) {
      Point px = z, py = z;
      px[j] += cplx(s * h, 0.0);
      py[j] += cplx(0.0, s * h);
      const cplx ux = u(px), uy = u(py);
      dx += d1[s + 2] * ux;
      dxx += d2[s + 2] * ux;
      dy += d1[s + 2] * uy;
      dyy += d2[s + 2] * uy;
    }
    lap += (dxx + dyy) / (h * h);
    rot += (z[j].real() * dy - z[j].imag() * dx) / h;
  }
  cplx out = -lap + 0.25 * z.norm2() * u(z);
  if (rotation) out -= cplx(0.0, 1.0) * rot;
  return out;
}

// Twisted translation -----------------------------------------------------------

/// tau_eta f(xi) = f(xi - eta) e^{(i/2) Im(eta . conj(xi))}, sampled on f's
/// grid. Nodes whose preimage leaves an interpolated field's grid are set to
/// zero and the lost mass is reported through `diag` when above `tail_tol`.
inline SampledField twisted_translate(const SampledField& f, const Point& eta, Diagnostics* diag = nullptr,
                                      double tail_tol = 1e-10) {
  if (eta.dim != f.dim()) throw GridMismatch("twisted_translate: shift dimension does not match field");
  const auto& grid = f.grid();
  // Mass of f that lands outside the grid after the shift.
  CompensatedSum<double> lost, total;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point moved = grid.node(i) + eta;
    const double m = grid.weight(i) * std::norm(f.values()[i]);
    total.add(m);
    for (int j = 0; j < moved.dim; ++j)
      if (std::abs(moved[j]) > grid.orders().extent) {
        lost.add(m);
        break;
      }
  }
  const double tail = total.value() > 0.0 ? lost.value() / total.value() : 0.0;
  if (tail > tail_tol && diag)
    diag->warn("twisted_translate: " + std::to_string(tail) + " of the L2 mass leaves the grid");

  FieldFunction eval;
  if (f.has_evaluator()) {
    eval = [f, eta](const Point& xi) { return f(xi - eta) * twist(eta, xi); };
  }
  std::vector<cplx> values(grid.size());
  parallel_for(values.size(), [&](std::size_t i) {
    const Point xi = grid.node(i);
    const Point pre = xi - eta;
    values[i] = f.covers(pre) ? f(pre) * twist(eta, xi) : cplx(0.0);
  });
  return SampledField(f.grid_ptr(), std::move(values), f.decay_class(), std::move(eval));
}

// Twisted spherical means -----------------------------------------------------------

/// f x mu_r(z) using a unit-radius sphere rule scaled to r.
inline cplx twisted_spherical_mean(const SampledField& f, const Point& z, double r, const SphereRule& unit_rule) {
  if (z.dim != f.dim() || unit_rule.complex_dim() != f.dim())
    throw GridMismatch("twisted_spherical_mean: dimension mismatch");
  if (r < 0.0 || !std::isfinite(r)) throw std::invalid_argument("twisted_spherical_mean: radius must be >= 0");
  if (r == 0.0) return f(z);
  CompensatedSum<cplx> acc;
  for (std::size_t i = 0; i < unit_rule.size(); ++i) {
    Point w(z.dim);
    for (int j = 0; j < z.dim; ++j) w[j] = r * unit_rule.nodes[i][j];
    const Point arg = z - w;
    if (!f.covers(arg)) throw OutOfDomain("twisted_spherical_mean: sphere node outside the field's grid", arg);
    acc.add(unit_rule.weights[i] * f(arg) * twist(z, w));
  }
  return acc.value();
}

inline cplx twisted_spherical_mean(const SampledField& f, const Point& z, double r,
                                   const QuadratureConfig& cfg = {}) {
  if (r == 0.0) return f(z);
  return twisted_spherical_mean(f, z, r, sphere_rule(f.dim(), 1.0, cfg));
}

/// f x mu_{r_i}(z) over a radius grid, in radius order.
inline MeanProfile mean_profile(const SampledField& f, const Point& z, std::span<const double> radii,
                                const QuadratureConfig& cfg = {}) {
  MeanProfile p;
  p.center = z;
  p.radii.assign(radii.begin(), radii.end());
  p.values.resize(radii.size());
  const auto unit = sphere_rule(f.dim(), 1.0, cfg);
  parallel_for(radii.size(), [&](std::size_t i) { p.values[i] = twisted_spherical_mean(f, z, radii[i], unit); });
  return p;
}

/// Profile on the nodes of a radial rule, keeping its weights for polar_bridge.
inline MeanProfile mean_profile(const SampledField& f, const Point& z, const RadialRule& rule,
                                const QuadratureConfig& cfg = {}) {
  if (rule.jacobian_power != 2 * f.dim() - 1)
    throw GridMismatch("mean_profile: radial rule Jacobian does not match the field dimension");
  auto p = mean_profile(f, z, std::span<const double>(rule.nodes), cfg);
  p.weights = rule.weights;
  return p;
}

// Twisted convolution ------------------------------------------------------------------

namespace detail {

inline cplx convolve_at(const SampledField& f, const SampledField& g, const Point& z) {
  const auto& grid = f.grid();
  CompensatedSum<cplx> acc;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx fv = f.values()[i];
    if (fv == 0.0) continue;
    const Point u = grid.node(i);
    acc.add(grid.weight(i) * fv * g(z - u) * std::conj(twist(z, u)));
  }
  return acc.value();
}

}  // namespace detail

/// (f x g) sampled on `out_grid` (default: f's grid), integrating over f's
/// grid. The result keeps an evaluator that re-runs the quadrature at any z.
inline SampledField twisted_convolution(const SampledField& f, const SampledField& g,
                                        std::shared_ptr<const PlaneRule> out_grid = nullptr) {
  if (f.dim() != g.dim()) throw GridMismatch("twisted_convolution: fields live on different C^n");
  if (!out_grid) out_grid = f.grid_ptr();
  if (out_grid->dim() != f.dim()) throw GridMismatch("twisted_convolution: output grid dimension mismatch");
  if (!g.has_evaluator() && g.grid().orders().extent < f.grid().orders().extent + out_grid->orders().extent)
    throw GridMismatch("twisted_convolution: g's grid does not cover z - u for all output z and grid u");
  std::vector<cplx> values(out_grid->size());
  parallel_for(values.size(), [&](std::size_t i) { values[i] = detail::convolve_at(f, g, out_grid->node(i)); });
  FieldFunction eval = [f, g](const Point& z) { return detail::convolve_at(f, g, z); };
  return SampledField(std::move(out_grid), std::move(values), f.decay_class(), std::move(eval));
}

// Spectral projections ------------------------------------------------------------------

namespace detail {

/// Accumulates Q_k(z) = int f(u) phi_k^{n-1}(z-u) e^{-(i/2)Im(z.conj(u))} du for
/// k = 0..K into out[0..K]. Works slot-wise on the tensor grid: the Gaussian
/// and twist factors split over coordinates, the Laguerre factor does not.
inline void radial_projection_at(const SampledField& f, const Point& z, int max_degree, std::span<cplx> out) {
  const auto& grid = f.grid();
  const auto& disk = grid.factor();
  const int n = grid.dim();
  const std::size_t fs = disk.size();
  const auto K = static_cast<std::size_t>(max_degree);
  std::vector<CompensatedSum<cplx>> acc(K + 1);
  std::vector<double> lag(K + 1);
  // per-slot factors: half squared distance and weight * e^{-d/2} * conj twist
  std::vector<double> d(static_cast<std::size_t>(n) * fs);
  std::vector<cplx> a(static_cast<std::size_t>(n) * fs);
  for (int j = 0; j < n; ++j) {
    for (std::size_t u = 0; u < fs; ++u) {
      const cplx uj = disk.nodes[u];
      const double dj = 0.5 * std::norm(z[j] - uj);
      const double phase = -0.5 * (z[j].imag() * uj.real() - z[j].real() * uj.imag());
      d[static_cast<std::size_t>(j) * fs + u] = dj;
      a[static_cast<std::size_t>(j) * fs + u] = disk.weights[u] * std::exp(-0.5 * dj) * std::polar(1.0, phase);
    }
  }
  const int order = n - 1;
  const auto values = f.values();
  auto accumulate = [&](double x, cplx c) {
    laguerre_sequence(order, x, lag);
    for (std::size_t k = 0; k <= K; ++k) acc[k].add(c * lag[k]);
  };
  if (n == 1) {
    for (std::size_t u = 0; u < fs; ++u) {
      if (values[u] == 0.0) continue;
      accumulate(d[u], values[u] * a[u]);
    }
  } else if (n == 2) {
    for (std::size_t u1 = 0; u1 < fs; ++u1) {
      const cplx a1 = a[u1];
      const double d1 = d[u1];
      for (std::size_t u2 = 0; u2 < fs; ++u2) {
        const cplx fv = values[u1 * fs + u2];
        if (fv == 0.0) continue;
        accumulate(d1 + d[fs + u2], fv * a1 * a[fs + u2]);
      }
    }
  } else {
    for (std::size_t u1 = 0; u1 < fs; ++u1)
      for (std::size_t u2 = 0; u2 < fs; ++u2)
        for (std::size_t u3 = 0; u3 < fs; ++u3) {
          const cplx fv = values[(u1 * fs + u2) * fs + u3];
          if (fv == 0.0) continue;
          accumulate(d[u1] + d[fs + u2] + d[2 * fs + u3], fv * a[u1] * a[fs + u2] * a[2 * fs + u3]);
        }
  }
  for (std::size_t k = 0; k <= K; ++k) out[k] = acc[k].value();
}

}  // namespace detail

/// Heuristic degree limit of a grid: phi_k oscillates with local wavenumber
/// ~ sqrt(2k+1), and the radial Gauss rule resolves ~ pi * radial / extent.
inline int max_supported_degree(const PlaneRule& grid) {
  const double kappa = kPi * grid.orders().radial / grid.orders().extent;
  return static_cast<int>(std::floor((kappa * kappa - 1.0) / 2.0));
}

/// Q_k = f x phi_k^{n-1} for every k = 0..max_degree, sampled on `out_grid`
/// (default: f's grid). Each result evaluates Q_k exactly (by quadrature) off-grid.
inline std::vector<SampledField> spectral_projections(const SampledField& f, int max_degree,
                                                      std::shared_ptr<const PlaneRule> out_grid = nullptr,
                                                      Diagnostics* diag = nullptr) {
  if (max_degree < 0) throw std::invalid_argument("spectral_projections: negative degree");
  if (!out_grid) out_grid = f.grid_ptr();
  if (out_grid->dim() != f.dim()) throw GridMismatch("spectral_projections: output grid dimension mismatch");
  if (diag && max_degree > max_supported_degree(f.grid()))
    diag->warn("spectral_projections: degree " + std::to_string(max_degree) + " exceeds the grid heuristic " +
               std::to_string(max_supported_degree(f.grid())));
  const auto K = static_cast<std::size_t>(max_degree);
  const std::size_t npts = out_grid->size();
  std::vector<cplx> table(npts * (K + 1));
  parallel_for(npts, [&](std::size_t i) {
    detail::radial_projection_at(f, out_grid->node(i), max_degree, std::span<cplx>(table.data() + i * (K + 1), K + 1));
  });
  std::vector<SampledField> out;
  out.reserve(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    std::vector<cplx> values(npts);
    for (std::size_t i = 0; i < npts; ++i) values[i] = table[i * (K + 1) + k];
    FieldFunction eval = [f, k](const Point& z) {
      std::vector<cplx> tmp(k + 1);
      detail::radial_projection_at(f, z, static_cast<int>(k), tmp);
      return tmp[k];
    };
    out.emplace_back(out_grid, std::move(values), f.decay_class(), std::move(eval));
  }
  return out;
}

inline SampledField spectral_projection(const SampledField& f, int k,
                                        std::shared_ptr<const PlaneRule> out_grid = nullptr,
                                        Diagnostics* diag = nullptr) {
  return spectral_projections(f, k, std::move(out_grid), diag).back();
}

/// sum_{k <= K} Q_k / (2pi)^n on the projections' grid.
inline SampledField special_hermite_reconstruction(std::span<const SampledField> projections) {
  if (projections.empty()) throw std::invalid_argument("special_hermite_reconstruction: no projections");
  const auto& first = projections.front();
  const double c = expansion_constant(first.dim());
  std::vector<cplx> values(first.values().size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    CompensatedSum<cplx> s;
    for (const auto& q : projections) s.add(q.values()[i]);
    values[i] = c * s.value();
  }
  return SampledField(first.grid_ptr(), std::move(values), first.decay_class());
}

// Polar bridge -----------------------------------------------------------------------------

/// omega_{2n-1} int_0^inf (f x mu_r)(z) phi_k^{n-1}(r) r^{2n-1} dr, with the
/// integral carried by the radial-rule weights stored in the profile. Equals
/// Q_k(z). Warns when the integrand has not decayed at the last radius.
inline cplx polar_bridge(const MeanProfile& profile, int k, int n, Diagnostics* diag = nullptr,
                         double tail_tol = 1e-10) {
  if (profile.weights.size() != profile.radii.size())
    throw std::invalid_argument("polar_bridge: profile radii were not generated by a radial rule");
  if (profile.values.size() != profile.radii.size())
    throw std::invalid_argument("polar_bridge: profile values/radii size mismatch");
  if (profile.radii.empty()) return 0.0;
  CompensatedSum<cplx> acc;
  double peak = 0.0;
  double last = 0.0;
  for (std::size_t i = 0; i < profile.radii.size(); ++i) {
    const double r = profile.radii[i];
    const cplx term = profile.values[i] * laguerre_function({k, n - 1}, r);
    acc.add(profile.weights[i] * term);
    const double mag = std::abs(term) * std::pow(r, 2 * n - 1);
    peak = std::max(peak, mag);
    last = mag;
  }
  if (diag && peak > 0.0 && last / peak > tail_tol)
    diag->warn("polar_bridge: radial integrand not decayed at r = " + std::to_string(profile.radii.back()) +
               " (relative " + std::to_string(last / peak) + ")");
  return sphere_area(n) * acc.value();
}

// Tensor decomposition on C^2 ------------------------------------------------------------------

namespace detail {

/// Kernel rows K[b][u] = w_u phi_b^0(z - u_u) e^{-(i/2) Im(z conj(u_u))} for
/// one complex slot over the disc factor.
inline std::vector<cplx> slot_kernel(const DiskFactor& disk, cplx z, int max_degree) {
  const std::size_t fs = disk.size();
  const auto K = static_cast<std::size_t>(max_degree);
  std::vector<cplx> ker((K + 1) * fs);
  std::vector<double> lag(K + 1);
  for (std::size_t u = 0; u < fs; ++u) {
    const cplx uu = disk.nodes[u];
    const double x = 0.5 * std::norm(z - uu);
    const double phase = -0.5 * (z.imag() * uu.real() - z.real() * uu.imag());
    const cplx c = disk.weights[u] * std::exp(-0.5 * x) * std::polar(1.0, phase);
    laguerre_sequence(0, x, lag);
    for (std::size_t b = 0; b <= K; ++b) ker[b * fs + u] = c * lag[b];
  }
  return ker;
}

/// F_{z2,b2}(u1) for all u1 nodes and b2 = 0..k: partial projection in slot 2.
inline std::vector<cplx> partial_slot2(const SampledField& f, cplx z2, int k) {
  const auto& disk = f.grid().factor();
  const std::size_t fs = disk.size();
  const auto K = static_cast<std::size_t>(k);
  const auto ker = slot_kernel(disk, z2, k);
  std::vector<cplx> out((K + 1) * fs);
  const auto values = f.values();
  for (std::size_t b = 0; b <= K; ++b) {
    for (std::size_t u1 = 0; u1 < fs; ++u1) {
      CompensatedSum<cplx> s;
      for (std::size_t u2 = 0; u2 < fs; ++u2) s.add(values[u1 * fs + u2] * ker[b * fs + u2]);
      out[b * fs + u1] = s.value();
    }
  }
  return out;
}

/// Pieces (F_{z2,k-b1} x_1 phi_{b1}^0)(z1) for b1 = 0..k, given partial_slot2 output.
inline void pieces_from_partial(const DiskFactor& disk, std::span<const cplx> partial, cplx z1, int k,
                                std::span<cplx> out) {
  const std::size_t fs = disk.size();
  const auto ker = slot_kernel(disk, z1, k);
  for (int b1 = 0; b1 <= k; ++b1) {
    const auto b2 = static_cast<std::size_t>(k - b1);
    CompensatedSum<cplx> s;
    for (std::size_t u1 = 0; u1 < fs; ++u1)
      s.add(partial[b2 * fs + u1] * ker[static_cast<std::size_t>(b1) * fs + u1]);
    out[static_cast<std::size_t>(b1)] = s.value();
  }
}

}  // namespace detail

/// The diagonal pieces of Q_k on C^2: element b1 (b1 = 0..k) is the partial
/// twisted convolution in z1 against phi_{b1}^0 of the partial twisted
/// convolution in z2 against phi_{k-b1}^0. Their sum is Q_k because
/// phi_k^1(z1, z2) = sum_{b1+b2=k} phi_{b1}^0(z1) phi_{b2}^0(z2).
inline std::vector<SampledField> tensor_decompose_projection(const SampledField& f, int k,
                                                             std::shared_ptr<const PlaneRule> out_grid = nullptr) {
  if (f.dim() != 2) throw std::invalid_argument("tensor_decompose_projection: field must live on C^2");
  if (k < 0) throw std::invalid_argument("tensor_decompose_projection: negative degree");
  if (!out_grid) out_grid = f.grid_ptr();
  if (out_grid->dim() != 2) throw GridMismatch("tensor_decompose_projection: output grid must be on C^2");
  const auto& disk = f.grid().factor();
  const auto& out_disk = out_grid->factor();
  const std::size_t os = out_disk.size();
  const auto K1 = static_cast<std::size_t>(k) + 1;
  std::vector<cplx> table(os * os * K1);
  parallel_for(os, [&](std::size_t i2) {
    const auto partial = detail::partial_slot2(f, out_disk.nodes[i2], k);
    for (std::size_t i1 = 0; i1 < os; ++i1)
      detail::pieces_from_partial(disk, partial, out_disk.nodes[i1], k,
                                  std::span<cplx>(table.data() + (i1 * os + i2) * K1, K1));
  });
  std::vector<SampledField> pieces;
  for (std::size_t b1 = 0; b1 < K1; ++b1) {
    std::vector<cplx> values(os * os);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = table[i * K1 + b1];
    FieldFunction eval = [f, k, b1](const Point& z) {
      const auto partial = detail::partial_slot2(f, z[1], k);
      std::vector<cplx> tmp(static_cast<std::size_t>(k) + 1);
      detail::pieces_from_partial(f.grid().factor(), partial, z[0], k, tmp);
      return tmp[b1];
    };
    pieces.emplace_back(out_grid, std::move(values), f.decay_class(), std::move(eval));
  }
  return pieces;
}

}  // namespace tsmlab
