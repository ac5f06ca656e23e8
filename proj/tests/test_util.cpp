#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "slag/util.hpp"

using namespace slag;

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.0) == doctest::Approx(0.0));
  CHECK(wrap_angle(pi) == doctest::Approx(pi));
  CHECK(wrap_angle(-pi) == doctest::Approx(pi));
  CHECK(wrap_angle(3.0 * pi) == doctest::Approx(pi));
  CHECK(wrap_angle(2.0 * pi) == doctest::Approx(0.0));
  CHECK(wrap_angle(-0.25) == doctest::Approx(-0.25));
  for (double x : {10.0, -17.3, 123.456}) {
    const double w = wrap_angle(x);
    CHECK(w > -pi);
    CHECK(w <= pi);
    CHECK(std::abs(std::remainder(w - x, 2 * pi)) < 1e-12);
  }
}

TEST_CASE("hermitian and symplectic forms") {
  const C2 v(Complex(1, 0), Complex(0, 0));
  const C2 w(Complex(0, 1), Complex(0, 0));
  CHECK(inner(v, v) == doctest::Approx(1.0));
  CHECK(inner(v, w) == doctest::Approx(0.0));
  CHECK(kaehler_omega(v, w) == doctest::Approx(1.0));
  CHECK(kaehler_omega(w, v) == doctest::Approx(-1.0));
}

TEST_CASE("pairwise_sum matches sequential accumulation") {
  std::vector<double> xs(1000);
  for (std::size_t i = 0; i < xs.size(); ++i)
    xs[i] = std::sin(0.1 * static_cast<double>(i)) / (1.0 + static_cast<double>(i));
  const double seq = std::accumulate(xs.begin(), xs.end(), 0.0);
  CHECK(pairwise_sum(xs) == doctest::Approx(seq).epsilon(1e-12));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{2.5}) == 2.5);
}

TEST_CASE("halton sequence, base 2 prefix") {
  CHECK(halton(0, 2) == doctest::Approx(0.5));
  CHECK(halton(1, 2) == doctest::Approx(0.25));
  CHECK(halton(2, 2) == doctest::Approx(0.75));
  CHECK(halton(0, 3) == doctest::Approx(1.0 / 3.0));
  for (int i = 0; i < 100; ++i) {
    CHECK(halton(i, 5) > 0.0);
    CHECK(halton(i, 5) < 1.0);
  }
}

TEST_CASE("circular statistics handle the wraparound") {
  const std::vector<double> tight = {pi - 0.1, -pi + 0.1};
  CHECK(std::abs(wrap_angle(circular_mean(tight) - pi)) < 1e-12);
  CHECK(circular_std(tight) == doctest::Approx(0.1).epsilon(1e-6));

  const std::vector<double> constant(50, 1.234);
  CHECK(circular_mean(constant) == doctest::Approx(1.234));
  CHECK(circular_std(constant) < 1e-12);
}

TEST_CASE("best rational approximations") {
  const Rational half = best_rational(0.5, 10);
  CHECK(half.num == 1);
  CHECK(half.den == 2);

  const Rational pi7 = best_rational(pi, 7);
  CHECK(pi7.num == 22);
  CHECK(pi7.den == 7);

  const Rational third = best_rational(1.0 / 3.0, 100);
  CHECK(third.num == 1);
  CHECK(third.den == 3);

  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const Rational golden = best_rational(phi, 100);
  CHECK(golden.num == 144);
  CHECK(golden.den == 89);

  const Rational neg = best_rational(-0.75, 50);
  CHECK(neg.num == -3);
  CHECK(neg.den == 4);
}
