#pragma once

// Laguerre polynomials and functions, the special Hermite basis on C, and
// bigraded solid harmonics on C^n. All evaluators are pure.
//
// Conventions (frozen, see docs/conventions.md):
//   phi_k^{n-1}(z) = L_k^{n-1}(|z|^2/2) e^{-|z|^2/4}
//   phi_ab(z), b >= a: (2pi)^{-1/2} (a!/b!)^{1/2} (i conj(z)/sqrt2)^{b-a} L_a^{b-a}(|z|^2/2) e^{-|z|^2/4}
//   phi_ab(z), b <  a: (2pi)^{-1/2} (b!/a!)^{1/2} (i z/sqrt2)^{a-b}       L_b^{a-b}(|z|^2/2) e^{-|z|^2/4}
// With these, phi_ab x phi_k = 2pi delta_{ak} phi_ab, i.e. the spectral
// degree of phi_ab is a.

#include <boost/rational.hpp>

#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsmlab/core.hpp"

namespace tsmlab {

struct LaguerreSpec {
  int degree = 0;  // k
  int order = 0;   // alpha, equal to n-1 for the radial Laguerre functions

  void validate() const {
    if (degree < 0) throw std::invalid_argument("LaguerreSpec: degree must be >= 0");
    if (order < 0) throw std::invalid_argument("LaguerreSpec: order must be >= 0");
  }
};

namespace detail {
inline void check_laguerre_argument(double x) {
  if (!std::isfinite(x) || x < 0.0)
    throw std::domain_error("laguerre: argument must be finite and nonnegative, got " + std::to_string(x));
}
}  // namespace detail

/// Fills out[k] = L_k^order(x) for k = 0..out.size()-1 by the upward three-term
/// recurrence (k+1) L_{k+1} = (2k+1+a-x) L_k - (k+a) L_{k-1}.
inline void laguerre_sequence(int order, double x, std::span<double> out) {
  if (out.empty()) return;
  const double a = order;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 1.0 + a - x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double kd = static_cast<double>(k);
    out[k + 1] = ((2.0 * kd + 1.0 + a - x) * out[k] - (kd + a) * out[k - 1]) / (kd + 1.0);
  }
}

/// L_k^a(x), x >= 0.
inline double laguerre_polynomial(LaguerreSpec spec, double x) {
  spec.validate();
  detail::check_laguerre_argument(x);
  if (spec.degree == 0) return 1.0;
  const double a = spec.order;
  double prev = 1.0;
  double cur = 1.0 + a - x;
  for (int k = 1; k < spec.degree; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// phi_k^{order}(rho) = L_k^{order}(rho^2/2) e^{-rho^2/4}, with rho = |z|.
inline double laguerre_function(LaguerreSpec spec, double rho) {
  if (!std::isfinite(rho) || rho < 0.0)
    throw std::domain_error("laguerre_function: radius must be finite and nonnegative");
  const double x = 0.5 * rho * rho;
  return laguerre_polynomial(spec, x) * std::exp(-0.5 * x);
}

/// Binomial coefficient C(n, k) in double precision.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return n <= 60 ? std::round(c) : c;
}

// Special Hermite basis on C ------------------------------------------------

struct SpecialHermiteIndex {
  int alpha = 0;
  int beta = 0;
};

namespace detail {
/// sqrt(m! / (m+d)!)
inline double sqrt_factorial_ratio(int m, int d) {
  double r = 1.0;
  for (int j = 1; j <= d; ++j) r /= (m + j);
  return std::sqrt(r);
}
}  // namespace detail

inline cplx special_hermite_basis(SpecialHermiteIndex idx, cplx z) {
  if (idx.alpha < 0 || idx.beta < 0) throw std::invalid_argument("special_hermite_basis: negative index");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("special_hermite_basis: non-finite argument");
  const double x = 0.5 * std::norm(z);
  const double gauss = std::exp(-0.5 * x);
  const int lo = std::min(idx.alpha, idx.beta);
  const int d = std::abs(idx.beta - idx.alpha);
  const cplx base = idx.beta >= idx.alpha ? cplx(0.0, 1.0) * std::conj(z) / std::sqrt(2.0)
                                          : cplx(0.0, 1.0) * z / std::sqrt(2.0);
  cplx power = 1.0;
  for (int j = 0; j < d; ++j) power *= base;
  const double lag = laguerre_polynomial({lo, d}, x);
  return (1.0 / std::sqrt(2.0 * kPi)) * detail::sqrt_factorial_ratio(lo, d) * power * lag * gauss;
}

/// All phi_ab(z) with a, b <= max_index, stored row-major: out[a*(K+1)+b].
/// Shares one Laguerre recurrence per off-diagonal distance.
class SpecialHermiteTable {
 public:
  explicit SpecialHermiteTable(int max_index)
      : k_(max_index), values_(static_cast<std::size_t>((max_index + 1) * (max_index + 1))),
        lag_(static_cast<std::size_t>(max_index + 1)) {
    if (max_index < 0) throw std::invalid_argument("SpecialHermiteTable: negative size");
    ratio_.resize(static_cast<std::size_t>((k_ + 1) * (k_ + 1)));
    for (int m = 0; m <= k_; ++m)
      for (int d = 0; m + d <= k_; ++d) ratio_[idx(m, d)] = detail::sqrt_factorial_ratio(m, d);
  }

  int max_index() const { return k_; }

  void evaluate(cplx z) {
    const double x = 0.5 * std::norm(z);
    const double scale = std::exp(-0.5 * x) / std::sqrt(2.0 * kPi);
    const cplx up = cplx(0.0, 1.0) * std::conj(z) / std::sqrt(2.0);
    const cplx down = cplx(0.0, 1.0) * z / std::sqrt(2.0);
    cplx pow_up = 1.0;
    cplx pow_down = 1.0;
    for (int d = 0; d <= k_; ++d) {
      const auto count = static_cast<std::size_t>(k_ - d + 1);
      laguerre_sequence(d, x, std::span<double>(lag_.data(), count));
      for (int m = 0; m + d <= k_; ++m) {
        const double common = scale * ratio_[idx(m, d)] * lag_[static_cast<std::size_t>(m)];
        values_[idx(m, m + d)] = common * pow_up;
        if (d > 0) values_[idx(m + d, m)] = common * pow_down;
      }
      pow_up *= up;
      pow_down *= down;
    }
  }

  cplx operator()(int alpha, int beta) const { return values_[idx(alpha, beta)]; }
  std::span<const cplx> values() const { return values_; }

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a * (k_ + 1) + b); }

  int k_;
  std::vector<cplx> values_;
  std::vector<double> lag_;
  std::vector<double> ratio_;
};

// Bigraded solid harmonics ----------------------------------------------------

using Rational = boost::rational<long long>;

/// z^alpha conj(z)^beta on C^n.
struct Monomial {
  std::array<int, kMaxDim> alpha{};
  std::array<int, kMaxDim> beta{};

  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.alpha != b.alpha) return a.alpha > b.alpha;  // graded lex: z_1^p first
    return a.beta > b.beta;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.alpha == b.alpha && a.beta == b.beta;
  }
};

namespace detail {
inline void compositions(int total, int parts, std::array<int, kMaxDim>& cur, int pos,
                         std::vector<std::array<int, kMaxDim>>& out) {
  if (pos == parts - 1) {
    cur[static_cast<std::size_t>(pos)] = total;
    out.push_back(cur);
    return;
  }
  for (int v = total; v >= 0; --v) {
    cur[static_cast<std::size_t>(pos)] = v;
    compositions(total - v, parts, cur, pos + 1, out);
  }
  cur[static_cast<std::size_t>(pos)] = 0;
}
}  // namespace detail

/// Monomials of P_{p,q} on C^n in graded lexicographic order.
inline std::vector<Monomial> bigraded_monomials(int p, int q, int n) {
  std::vector<Monomial> out;
  if (p < 0 || q < 0) return out;
  std::vector<std::array<int, kMaxDim>> as, bs;
  std::array<int, kMaxDim> cur{};
  detail::compositions(p, n, cur, 0, as);
  detail::compositions(q, n, cur, 0, bs);
  for (const auto& a : as)
    for (const auto& b : bs) out.push_back({a, b});
  return out;
}

/// P(z) = sum c_ab z^a conj(z)^b, homogeneous of bidegree (p, q).
class SolidHarmonic {
 public:
  SolidHarmonic(int p, int q, int n, std::vector<Monomial> monomials, std::vector<Rational> coeffs)
      : p_(p), q_(q), n_(n), monomials_(std::move(monomials)), coeffs_(std::move(coeffs)) {
    if (monomials_.size() != coeffs_.size())
      throw std::invalid_argument("SolidHarmonic: coefficient count mismatch");
  }

  int p() const { return p_; }
  int q() const { return q_; }
  int dimension() const { return n_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  cplx operator()(const Point& z) const {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
      if (coeffs_[i].numerator() == 0) continue;
      cplx term = boost::rational_cast<double>(coeffs_[i]);
      for (int j = 0; j < n_; ++j) {
        for (int e = 0; e < monomials_[i].alpha[j]; ++e) term *= z[j];
        for (int e = 0; e < monomials_[i].beta[j]; ++e) term *= std::conj(z[j]);
      }
      sum += term;
    }
    return sum;
  }

  /// Delta = 4 sum_j d^2/(dz_j dconj(z_j)) applied exactly; result has bidegree (p-1, q-1).
  SolidHarmonic laplacian() const {
    std::map<Monomial, Rational> acc;
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
      for (int j = 0; j < n_; ++j) {
        const int a = monomials_[i].alpha[j];
        const int b = monomials_[i].beta[j];
        if (a == 0 || b == 0) continue;
        Monomial m = monomials_[i];
        m.alpha[j] -= 1;
        m.beta[j] -= 1;
        acc[m] += coeffs_[i] * Rational(4LL * a * b);
      }
    }
    std::vector<Monomial> ms;
    std::vector<Rational> cs;
    for (auto& [m, c] : acc) {
      ms.push_back(m);
      cs.push_back(c);
    }
    return SolidHarmonic(std::max(p_ - 1, 0), std::max(q_ - 1, 0), n_, std::move(ms), std::move(cs));
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.numerator() == 0; });
  }
  bool is_harmonic() const { return laplacian().is_zero(); }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
      if (coeffs_[i].numerator() == 0) continue;
      if (!s.empty()) s += " + ";
      s += "(" + std::to_string(coeffs_[i].numerator());
      if (coeffs_[i].denominator() != 1) s += "/" + std::to_string(coeffs_[i].denominator());
      s += ")";
      for (int j = 0; j < n_; ++j) {
        if (monomials_[i].alpha[j]) s += "z" + std::to_string(j + 1) + "^" + std::to_string(monomials_[i].alpha[j]);
        if (monomials_[i].beta[j]) s += "zb" + std::to_string(j + 1) + "^" + std::to_string(monomials_[i].beta[j]);
      }
    }
    return s.empty() ? "0" : s;
  }

 private:
  int p_, q_, n_;
  std::vector<Monomial> monomials_;
  std::vector<Rational> coeffs_;
};

/// dim H_{p,q}(C^n) = dim P_{p,q} - dim P_{p-1,q-1}.
inline int solid_harmonic_dimension(int p, int q, int n) {
  const auto dp = [n](int a, int b) -> int {
    if (a < 0 || b < 0) return 0;
    return static_cast<int>(binomial(a + n - 1, a) * binomial(b + n - 1, b));
  };
  return dp(p, q) - dp(p - 1, q - 1);
}

/// Basis of H_{p,q}(C^n) as the exact null space of Delta: P_{p,q} -> P_{p-1,q-1}.
/// Pivots are taken from the last monomial backwards, so each basis element
/// has a free monomial with coefficient 1 and only later monomials otherwise;
/// elements are ordered by their free monomial in graded lex order.
inline std::vector<SolidHarmonic> solid_harmonic_basis(int p, int q, int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("solid_harmonic_basis: n must be 1, 2 or 3");
  if (p < 0 || q < 0) throw std::invalid_argument("solid_harmonic_basis: negative bidegree");
  const auto cols = bigraded_monomials(p, q, n);
  const auto rows = bigraded_monomials(p - 1, q - 1, n);
  const std::size_t nc = cols.size();

  // Columns reversed so left-to-right elimination pivots on the latest monomials.
  std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(nc, Rational(0)));
  std::map<Monomial, std::size_t> row_of;
  for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;
  for (std::size_t c = 0; c < nc; ++c) {
    const std::size_t rc = nc - 1 - c;
    for (int j = 0; j < n; ++j) {
      const int al = cols[c].alpha[j], be = cols[c].beta[j];
      if (al == 0 || be == 0) continue;
      Monomial m = cols[c];
      m.alpha[j] -= 1;
      m.beta[j] -= 1;
      a[row_of.at(m)][rc] += Rational(4LL * al * be);
    }
  }

  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot(nc, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c].numerator() == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& v : a[r]) v *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c].numerator() == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t k = 0; k < nc; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_col_of_row.push_back(static_cast<int>(c));
    is_pivot[c] = true;
    ++r;
  }

  std::vector<SolidHarmonic> basis;
  // Free columns in original (grlex) order = reversed index descending.
  for (std::size_t c0 = 0; c0 < nc; ++c0) {
    const std::size_t rc = nc - 1 - c0;
    if (is_pivot[rc]) continue;
    std::vector<Rational> coeffs(nc, Rational(0));
    coeffs[c0] = 1;
    for (std::size_t row = 0; row < pivot_col_of_row.size(); ++row) {
      const auto pc = static_cast<std::size_t>(pivot_col_of_row[row]);
      coeffs[nc - 1 - pc] = -a[row][rc];
    }
    basis.emplace_back(p, q, n, cols, std::move(coeffs));
  }
  return basis;
}

}  // namespace tsmlab
