#include "slag/util.hpp"

#include <cmath>

namespace slag {

double circular_mean(std::span<const double> angles) {
  std::vector<double> cs(angles.size()), ss(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    cs[i] = std::cos(angles[i]);
    ss[i] = std::sin(angles[i]);
  }
  const double c = pairwise_sum(cs);
  const double s = pairwise_sum(ss);
  return std::atan2(s, c);
}

double circular_std(std::span<const double> angles) {
  if (angles.empty()) return 0.0;
  const double mu = circular_mean(angles);
  std::vector<double> d2(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double d = wrap_angle(angles[i] - mu);
    d2[i] = d * d;
  }
  return std::sqrt(pairwise_sum(d2) / static_cast<double>(angles.size()));
}

Rational best_rational(double x, long long max_denominator) {
  if (max_denominator < 1) max_denominator = 1;
  const bool neg = x < 0;
  double y = std::abs(x);

  long long p0 = 0, q0 = 1;  // previous convergent
  long long p1 = 1, q1 = 0;  // current convergent
  double frac = y;
  for (int iter = 0; iter < 64; ++iter) {
    const double fa = std::floor(frac);
    if (fa > 9.0e18) break;
    const long long a = static_cast<long long>(fa);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > max_denominator || p2 < 0 || q2 < 0) {
      // Best semiconvergent that still fits the denominator bound.
      const long long k = (q1 > 0) ? (max_denominator - q0) / q1 : 0;
      const long long ps = k * p1 + p0;
      const long long qs = k * q1 + q0;
      Rational conv{p1, q1 == 0 ? 1 : q1};
      Rational semi{ps, qs == 0 ? 1 : qs};
      Rational best = conv;
      if (qs >= 1 && std::abs(semi.value() - y) < std::abs(conv.value() - y)) best = semi;
      if (neg) best.num = -best.num;
      return best;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double rem = frac - fa;
    if (rem < 1e-18 || std::abs(static_cast<double>(p1) / q1 - y) == 0.0) break;
    frac = 1.0 / rem;
  }
  Rational r{p1, q1 == 0 ? 1 : q1};
  if (neg) r.num = -r.num;
  return r;
}

}  // namespace slag
