#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <initializer_list>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <exception>
#include <vector>

namespace tsmlab {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr int kMaxDim = 3;

/// A point of C^n, n <= 3. The dot product z.w is sum z_j w_j (no conjugation).
struct Point {
  std::array<cplx, kMaxDim> z{};
  int dim = 1;

  Point() = default;
  explicit Point(int n) : dim(n) {}
  Point(std::initializer_list<cplx> coords) : dim(static_cast<int>(coords.size())) {
    if (coords.size() == 0 || coords.size() > kMaxDim)
      throw std::invalid_argument("Point: dimension must be 1..3");
    std::copy(coords.begin(), coords.end(), z.begin());
  }

  cplx& operator[](int j) { return z[static_cast<std::size_t>(j)]; }
  const cplx& operator[](int j) const { return z[static_cast<std::size_t>(j)]; }

  double norm2() const {
    double s = 0.0;
    for (int j = 0; j < dim; ++j) s += std::norm(z[j]);
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }

  friend Point operator-(const Point& a, const Point& b) {
    Point out(a.dim);
    for (int j = 0; j < a.dim; ++j) out.z[j] = a.z[j] - b.z[j];
    return out;
  }
  friend Point operator+(const Point& a, const Point& b) {
    Point out(a.dim);
    for (int j = 0; j < a.dim; ++j) out.z[j] = a.z[j] + b.z[j];
    return out;
  }
  friend bool operator==(const Point& a, const Point& b) {
    if (a.dim != b.dim) return false;
    for (int j = 0; j < a.dim; ++j)
      if (a.z[j] != b.z[j]) return false;
    return true;
  }
};

inline std::string to_string(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (int j = 0; j < p.dim; ++j) {
    if (j) os << ", ";
    os << p[j].real() << (p[j].imag() < 0 ? "-" : "+") << std::abs(p[j].imag()) << 'i';
  }
  os << ')';
  return os.str();
}

/// (1/2) Im(z . conj(w)), the exponent of the twisting factor.
inline double half_symplectic(const Point& z, const Point& w) {
  double s = 0.0;
  for (int j = 0; j < z.dim; ++j) s += z[j].imag() * w[j].real() - z[j].real() * w[j].imag();
  return 0.5 * s;
}

/// e^{(i/2) Im(z . conj(w))}
inline cplx twist(const Point& z, const Point& w) { return std::polar(1.0, half_symplectic(z, w)); }

// Errors --------------------------------------------------------------------

class OutOfDomain : public std::runtime_error {
 public:
  OutOfDomain(const std::string& what, Point offending)
      : std::runtime_error(what + " at " + to_string(offending)), point_(offending) {}
  const Point& point() const noexcept { return point_; }

 private:
  Point point_;
};

class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IllConditioned : public std::runtime_error {
 public:
  IllConditioned(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Collects non-fatal warnings emitted by operators that "warn" rather than throw.
struct Diagnostics {
  std::vector<std::string> warnings;
  void warn(std::string msg) { warnings.push_back(std::move(msg)); }
};

// Compensated summation -----------------------------------------------------

/// Neumaier's variant of Kahan summation. Order of add() calls fixes the result.
template <class T>
class CompensatedSum;

template <>
class CompensatedSum<double> {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <>
class CompensatedSum<cplx> {
 public:
  void add(cplx x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_, im_;
};

// Parallelism ---------------------------------------------------------------

/// Worker cap: TSMLAB_THREADS if set and positive, else hardware concurrency.
inline int max_threads() {
  if (const char* env = std::getenv("TSMLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count). Each index is handled by exactly one
/// worker and writes only its own output slot, so results do not depend on
/// the thread count.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(max_threads()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += workers) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace tsmlab
