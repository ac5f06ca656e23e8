#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slag/curves.hpp"

using namespace slag;
using curves::CurveKind;
using curves::CurveParams;
using curves::CurveSample;

namespace {

CurveParams params(int p, int q, double i1, double i2, CurveKind kind) {
  CurveParams prm;
  prm.p = p;
  prm.q = q;
  prm.init1 = i1;
  prm.init2 = i2;
  prm.kind = kind;
  return prm;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(params(-1, 0, 1, 1, CurveKind::Alpha).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(params(0, 0, 0.0, 1, CurveKind::Alpha).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(params(0, 0, 1, -2, CurveKind::Gamma).validate(),
                  std::invalid_argument);
  CHECK_NOTHROW(params(4, 4, 0.5, 2, CurveKind::Gamma).validate());
}

TEST_CASE("right-hand side at real initial data") {
  // alpha: z' = (i, i) at (1,1); gamma flips the sign of the second slot
  const C2 a = curves::curve_rhs(params(0, 0, 1, 1, CurveKind::Alpha),
                                 C2(Complex(1, 0), Complex(1, 0)));
  CHECK(std::abs(a[0] - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(a[1] - Complex(0, 1)) < 1e-15);
  const C2 g = curves::curve_rhs(params(0, 0, 1, 1, CurveKind::Gamma),
                                 C2(Complex(1, 0), Complex(1, 0)));
  CHECK(std::abs(g[0] - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(g[1] - Complex(0, -1)) < 1e-15);
}

TEST_CASE("p = q = 0 symmetric orbit integrates to cosh + i sinh") {
  const auto prm = params(0, 0, 1, 1, CurveKind::Alpha);
  const CurveSample s = curves::integrate_at(prm, {-0.75, 0.5}, 1e-12);
  const Complex expect(std::cosh(0.5), std::sinh(0.5));
  CHECK(std::abs(s.points[1][0] - expect) < 1e-10);
  CHECK(std::abs(s.points[1][1] - expect) < 1e-10);
  // real initial data gives the time-reversal symmetry z(-t) = conj(z(t))
  const CurveSample m = curves::integrate_at(prm, {0.75}, 1e-12);
  CHECK(std::abs(s.points[0][0] - std::conj(m.points[0][0])) < 1e-10);
}

TEST_CASE("conserved quantities stay flat and escape is reported") {
  const auto prm = params(2, 1, 1.2, 0.8, CurveKind::Alpha);
  const CurveSample s = curves::integrate_alpha(prm, 5.0, 1e-10);
  CHECK(s.truncated);  // finite-time escape for p + q >= 1
  CHECK(s.t_pos < 5.0);
  for (std::size_t k = 0; k < s.size(); ++k) {
    CHECK(std::abs(s.residual_conserved[k]) < 1e-8);
    CHECK(std::abs(s.residual_line[k]) < 1e-8);
  }

  const auto prg = params(2, 1, 1.2, 0.8, CurveKind::Gamma);
  const CurveSample g = curves::integrate_gamma(prg, 5.0, 1e-10);
  CHECK_FALSE(g.truncated);
  CHECK(g.t_neg == doctest::Approx(-5.0));
  CHECK(g.t_pos == doctest::Approx(5.0));
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(std::abs(g.residual_conserved[k]) < 1e-8);
    CHECK(std::abs(g.residual_line[k]) < 1e-8);
  }
}

TEST_CASE("kind mismatches are rejected") {
  CHECK_THROWS_AS(curves::integrate_alpha(params(0, 0, 1, 1, CurveKind::Gamma), 1, 1e-8),
                  std::invalid_argument);
  CHECK_THROWS_AS(curves::integrate_gamma(params(0, 0, 1, 1, CurveKind::Alpha), 1, 1e-8),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      curves::integrate_at(params(0, 0, 1, 1, CurveKind::Alpha), {1.0, 0.5}, 1e-8),
      std::invalid_argument);
}

TEST_CASE("closed-form alpha point satisfies both invariants") {
  const auto prm = params(2, 1, 1.1, 0.9, CurveKind::Alpha);
  for (double s : {-0.8, -0.2, 0.0, 0.3, 1.5}) {
    const C2 z = curves::alpha_closed_form(prm, s);
    CHECK(std::abs(z[0]) == doctest::Approx(std::sqrt(s * s + 1.1 * 1.1)));
    CHECK(std::abs(z[1]) == doctest::Approx(std::sqrt(s * s + 0.9 * 0.9)));
    const Complex mono = std::pow(z[0], 3) * std::pow(z[1], 2);
    CHECK(mono.real() == doctest::Approx(prm.monomial0()).epsilon(1e-9));
  }
  const C2 z0 = curves::alpha_closed_form(prm, 0.0);
  CHECK(z0[0] == Complex(1.1, 0.0));
  CHECK(z0[1] == Complex(0.9, 0.0));
}

TEST_CASE("lambda exponent values") {
  CHECK(curves::lambda_exponent(0, 0) == doctest::Approx(1.0));
  CHECK(curves::lambda_exponent(1, 0) == doctest::Approx(2.0));
  CHECK(curves::lambda_exponent(0, 1) == doctest::Approx(2.0));
  CHECK(curves::lambda_exponent(1, 1) == doctest::Approx(2.0));
  CHECK(curves::lambda_exponent(2, 1) == doctest::Approx(std::cbrt(18.0)));
}

TEST_CASE("special gamma orbit solves the system") {
  for (auto [p, q] : {std::pair{1, 0}, std::pair{2, 3}}) {
    const auto prm = curves::gamma_special_params(p, q);
    const double h = 1e-6;
    for (double t : {0.0, 0.4, 2.0}) {
      const C2 z = curves::gamma_special(p, q, t);
      const C2 zp = curves::gamma_special(p, q, t + h);
      const C2 zm = curves::gamma_special(p, q, t - h);
      const C2 rhs = curves::curve_rhs(prm, z);
      for (int j = 0; j < 2; ++j)
        CHECK(std::abs((zp[j] - zm[j]) / (2 * h) - rhs[j]) < 1e-7);
      const Complex mono = std::pow(z[0], p + 1) * std::pow(z[1], q + 1);
      CHECK(std::abs(mono.imag()) < 1e-13);
      CHECK(mono.real() == doctest::Approx(prm.monomial0()));
    }
  }
  const auto b = curves::gamma_special_params(1, 0);
  CHECK(b.init1 == doctest::Approx(1.0));
  CHECK(b.init2 == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("critical radii: strict and equality branches") {
  // b = (1, 1/2): S = 5/4, R = 1/4; S^2 x(1-x) = R has roots 0.2 and 0.8
  const auto two = curves::critical_radii(0, 0, 1.0, 0.5);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(two[1] == doctest::Approx(0.8).epsilon(1e-10));

  const auto one = curves::critical_radii(0, 0, 1.0, 1.0);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(0.5));

  CHECK_THROWS_AS(curves::critical_radii(0, 0, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("radial period oracle at b = (1, 1/2)") {
  const auto rep = curves::gamma_period(0, 0, 1.0, 0.5);
  CHECK(rep.period == doctest::Approx(pi).epsilon(1e-9));
  CHECK(rep.period_ode == doctest::Approx(rep.period).epsilon(1e-7));
  CHECK(rep.winding_integrals[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rep.winding_integrals[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("quadrature and event periods agree off the symmetric case") {
  const auto rep = curves::gamma_period(1, 0, 1.0, 0.8);
  CHECK(rep.period_ode == doctest::Approx(rep.period).epsilon(1e-7));
  CHECK(rep.winding_integrals[0] > 0.0);
  CHECK(rep.winding_integrals[1] > 0.0);
}

TEST_CASE("closedness classification") {
  const auto closed = curves::gamma_closedness(0, 0, 1.0, 0.5, 1e-6, 64);
  REQUIRE(closed.closed.has_value());
  CHECK((*closed.closed)[0].num == 1);
  CHECK((*closed.closed)[0].den == 2);
  CHECK((*closed.closed)[1].num == 1);
  CHECK((*closed.closed)[1].den == 2);

  const auto open = curves::gamma_closedness(1, 0, 1.0, 0.8, 1e-6, 200);
  CHECK_FALSE(open.closed.has_value());
  CHECK(open.closed_error[0] > 1e-6);
}

TEST_CASE("equality case has no isolated turning radii") {
  CHECK_THROWS_AS(curves::gamma_period(0, 0, 1.0, 1.0), EqualityCaseError);
}

TEST_CASE("principal cone curve") {
  CHECK(std::abs(curves::gamma_c_curve(2, 1.0, 0.0) - Complex(1, 0)) < 1e-15);
  for (int n : {2, 3, 5})
    for (double s : {-2.0, 0.3, 4.0}) {
      const Complex g = curves::gamma_c_curve(n, 1.5, s);
      CHECK(std::abs(std::pow(g, n) - Complex(1.5, s)) < 1e-12);
      const double h = 1e-6;
      const Complex fd = (curves::gamma_c_curve(n, 1.5, s + h) -
                          curves::gamma_c_curve(n, 1.5, s - h)) /
                         (2 * h);
      CHECK(std::abs(fd - curves::gamma_c_derivative(n, 1.5, s)) < 1e-8);
    }
  CHECK_THROWS_AS(curves::gamma_c_curve(2, 0.0, 0.0), SingularPointError);
  CHECK_THROWS_AS(curves::gamma_c_curve(1, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(curves::gamma_c_curve(2, -1.0, 0.0), std::invalid_argument);
}
