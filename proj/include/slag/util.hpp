#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace slag {

using Complex = std::complex<double>;
using C2 = Eigen::Vector2cd;

inline constexpr double pi = std::numbers::pi;

// Hermitian product sum_i v_i conj(w_i).
inline Complex herm(const C2& v, const C2& w) {
  return v[0] * std::conj(w[0]) + v[1] * std::conj(w[1]);
}

// Euclidean inner product on C^2 = R^4.
inline double inner(const C2& v, const C2& w) { return herm(v, w).real(); }

// Kaehler two-form omega(v, w) = -Im sum v_i conj(w_i).
inline double kaehler_omega(const C2& v, const C2& w) { return -herm(v, w).imag(); }

// Wrap an angle to (-pi, pi].
inline double wrap_angle(double x) {
  double y = std::remainder(x, 2.0 * pi);
  if (y <= -pi) y += 2.0 * pi;
  return y;
}

// Deterministic pairwise (cascade) summation; order-independent of the
// evaluation schedule used by callers that parallelize per-element work.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

// Halton low-discrepancy sequence, index >= 0.
inline double halton(std::size_t index, unsigned base) {
  double f = 1.0, r = 0.0;
  std::size_t i = index + 1;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

// Mean direction of a set of unit phases given by their angles.
double circular_mean(std::span<const double> angles);
// Root-mean-square angular deviation from the circular mean.
double circular_std(std::span<const double> angles);

struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Best rational approximation with denominator <= max_denominator,
// by continued fractions with semiconvergent refinement.
Rational best_rational(double x, long long max_denominator);

// ---- error taxonomy ----------------------------------------------------

struct SingularRadiusError : std::runtime_error {
  explicit SingularRadiusError(const std::string& m) : std::runtime_error(m) {}
};
struct SingularPointError : std::runtime_error {
  explicit SingularPointError(const std::string& m) : std::runtime_error(m) {}
};
struct NotLegendrianError : std::runtime_error {
  explicit NotLegendrianError(const std::string& m) : std::runtime_error(m) {}
};
struct DegenerateFrameError : std::runtime_error {
  explicit DegenerateFrameError(const std::string& m) : std::runtime_error(m) {}
};
struct InequalityViolatedError : std::runtime_error {
  explicit InequalityViolatedError(const std::string& m) : std::runtime_error(m) {}
};
struct EqualityCaseError : std::runtime_error {
  explicit EqualityCaseError(const std::string& m) : std::runtime_error(m) {}
};
struct NonConvergenceError : std::runtime_error {
  explicit NonConvergenceError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace slag
