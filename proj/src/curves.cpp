#include "slag/curves.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>

namespace slag::curves {

namespace {

using State = std::array<double, 4>;
namespace odeint = boost::numeric::odeint;
using boost::math::quadrature::gauss_kronrod;

// Conservation monitoring in double precision loses absolute accuracy once
// the monomial z1^{p+1} z2^{q+1} grows large; the alpha flow escapes to
// infinity in finite time for p+q >= 1, so integration is truncated there.
constexpr double kMonomialCap = 1.0e4;
constexpr double kRadiusGuard = 1.0e-12;

C2 to_c2(const State& x) { return C2(Complex(x[0], x[1]), Complex(x[2], x[3])); }

Complex monomial(const CurveParams& prm, const C2& z) {
  return std::pow(z[0], prm.p + 1) * std::pow(z[1], prm.q + 1);
}

struct CurveSystem {
  CurveParams prm;
  double dir;  // +1 forward, -1 integrates z(-tau)

  void operator()(const State& x, State& dxdt, double /*t*/) const {
    const C2 z = to_c2(x);
    const double r1 = std::abs(z[0]), r2 = std::abs(z[1]);
    if (r1 < kRadiusGuard || r2 < kRadiusGuard)
      throw SingularRadiusError("curve radius collapsed below guard (|z_j| < 1e-12)");
    const Complex m = std::conj(monomial(prm, z));
    const double s2 = (prm.kind == CurveKind::Gamma) ? -1.0 : 1.0;
    const Complex d1 = Complex(0, 1) * m / std::conj(z[0]);
    const Complex d2 = s2 * Complex(0, 1) * m / std::conj(z[1]);
    dxdt[0] = dir * d1.real();
    dxdt[1] = dir * d1.imag();
    dxdt[2] = dir * d2.real();
    dxdt[3] = dir * d2.imag();
  }
};

auto make_stepper(double tol) {
  const double eps = std::max(tol * 1e-3, 1e-14);
  return odeint::make_controlled(eps, eps, odeint::runge_kutta_fehlberg78<State>());
}

// Advance the state from tau to tau_target (tau_target > tau) in internal
// time; returns false if the monomial cap stopped the integration first.
template <class Stepper>
bool advance_to(Stepper& stepper, const CurveSystem& sys, State& x, double& tau,
                double tau_target, double& dt) {
  while (tau < tau_target) {
    double h = std::min(dt, tau_target - tau);
    int rejects = 0;
    while (true) {
      const auto res = stepper.try_step(sys, x, tau, h);
      if (res == odeint::success) break;
      if (++rejects > 200 || h < 1e-15)
        throw NonConvergenceError("step-size control failed near t = " +
                                  std::to_string(tau));
      h = std::min(h, tau_target - tau);
    }
    dt = std::clamp(h, 1e-12, 0.25);
    if (sys.prm.kind == CurveKind::Alpha &&
        std::abs(monomial(sys.prm, to_c2(x))) > kMonomialCap)
      return false;
  }
  return true;
}

void push_sample(CurveSample& out, double t, const C2& z) {
  out.ts.push_back(t);
  out.points.push_back(z);
  const auto& prm = out.params;
  const double r1 = std::norm(z[0]), r2 = std::norm(z[1]);
  const double quad = (prm.kind == CurveKind::Gamma) ? r1 + r2 : r1 - r2;
  out.residual_conserved.push_back(quad - prm.quadratic0());
  out.residual_line.push_back(monomial(prm, z).real() - prm.monomial0());
}

// One-sided integration over internal time [0, t_max]; signed_dir carries the
// physical direction so recorded times are signed.
CurveSample integrate_dir(const CurveParams& prm, double t_max, double tol,
                          double signed_dir) {
  CurveSample out;
  out.params = prm;
  out.tol = tol;
  CurveSystem sys{prm, signed_dir};
  auto stepper = make_stepper(tol);
  State x{prm.init1, 0.0, prm.init2, 0.0};
  double tau = 0.0, dt = 1e-3;
  push_sample(out, 0.0, to_c2(x));
  while (tau < t_max) {
    const double target = std::min(t_max, tau + 0.05);
    const bool ok = advance_to(stepper, sys, x, tau, target, dt);
    push_sample(out, signed_dir * tau, to_c2(x));
    if (!ok) {
      out.truncated = true;
      break;
    }
  }
  return out;
}

CurveSample integrate_both(const CurveParams& prm, double t_max, double tol) {
  prm.validate();
  if (!(t_max > 0) || !(tol > 0))
    throw std::invalid_argument("integrate: t_max and tol must be positive");
  CurveSample neg = integrate_dir(prm, t_max, tol, -1.0);
  CurveSample pos = integrate_dir(prm, t_max, tol, +1.0);
  CurveSample out;
  out.params = prm;
  out.tol = tol;
  out.truncated = neg.truncated || pos.truncated;
  out.t_neg = neg.ts.back();
  out.t_pos = pos.ts.back();
  for (std::size_t i = neg.size(); i-- > 1;) {
    out.ts.push_back(neg.ts[i]);
    out.points.push_back(neg.points[i]);
    out.residual_conserved.push_back(neg.residual_conserved[i]);
    out.residual_line.push_back(neg.residual_line[i]);
  }
  for (std::size_t i = 0; i < pos.size(); ++i) {
    out.ts.push_back(pos.ts[i]);
    out.points.push_back(pos.points[i]);
    out.residual_conserved.push_back(pos.residual_conserved[i]);
    out.residual_line.push_back(pos.residual_line[i]);
  }
  return out;
}

}  // namespace

void CurveParams::validate() const {
  if (p < 0 || q < 0) throw std::invalid_argument("curve exponents must be >= 0");
  if (!(init1 > 0) || !(init2 > 0))
    throw std::invalid_argument("curve initial data must be strictly positive");
}

double CurveParams::monomial0() const {
  return std::pow(init1, p + 1) * std::pow(init2, q + 1);
}

double CurveParams::quadratic0() const {
  return (kind == CurveKind::Gamma) ? init1 * init1 + init2 * init2
                                    : init1 * init1 - init2 * init2;
}

C2 curve_rhs(const CurveParams& params, const C2& z) {
  const Complex m = std::conj(std::pow(z[0], params.p + 1) * std::pow(z[1], params.q + 1));
  const double s2 = (params.kind == CurveKind::Gamma) ? -1.0 : 1.0;
  return C2(Complex(0, 1) * m / std::conj(z[0]),
            s2 * Complex(0, 1) * m / std::conj(z[1]));
}

CurveSample integrate_alpha(const CurveParams& params, double t_max, double tol) {
  if (params.kind != CurveKind::Alpha)
    throw std::invalid_argument("integrate_alpha requires kind = Alpha");
  return integrate_both(params, t_max, tol);
}

CurveSample integrate_gamma(const CurveParams& params, double t_max, double tol) {
  if (params.kind != CurveKind::Gamma)
    throw std::invalid_argument("integrate_gamma requires kind = Gamma");
  return integrate_both(params, t_max, tol);
}

CurveSample integrate_at(const CurveParams& params, const std::vector<double>& ts,
                         double tol) {
  params.validate();
  if (!(tol > 0)) throw std::invalid_argument("integrate_at: tol must be positive");
  if (!std::is_sorted(ts.begin(), ts.end()))
    throw std::invalid_argument("integrate_at: times must be increasing");

  CurveSample out;
  out.params = params;
  out.tol = tol;

  // Negative targets, most negative first, via the time-reversed system.
  std::vector<std::pair<double, C2>> rows(ts.size());
  for (double dirsign : {-1.0, 1.0}) {
    CurveSystem sys{params, dirsign};
    auto stepper = make_stepper(tol);
    State x{params.init1, 0.0, params.init2, 0.0};
    double tau = 0.0, dt = 1e-3;
    if (dirsign < 0) {
      for (std::size_t i = ts.size(); i-- > 0;) {
        if (ts[i] >= 0) continue;
        if (!advance_to(stepper, sys, x, tau, -ts[i], dt))
          throw NonConvergenceError("integrate_at: state cap reached before t = " +
                                    std::to_string(ts[i]));
        rows[i] = {ts[i], to_c2(x)};
      }
    } else {
      for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] < 0) continue;
        if (!advance_to(stepper, sys, x, tau, ts[i], dt))
          throw NonConvergenceError("integrate_at: state cap reached before t = " +
                                    std::to_string(ts[i]));
        rows[i] = {ts[i], to_c2(x)};
      }
    }
  }
  for (const auto& [t, z] : rows) push_sample(out, t, z);
  out.t_neg = ts.empty() ? 0.0 : ts.front();
  out.t_pos = ts.empty() ? 0.0 : ts.back();
  return out;
}

double lambda_exponent(int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("lambda_exponent: p, q >= 0");
  if (p + q == 0) return 1.0;  // any lambda works at p = q = 0; fix lambda = 1
  return std::pow(std::pow(p + 1.0, p) * std::pow(q + 1.0, q), 1.0 / (p + q));
}

C2 alpha_closed_form(const CurveParams& params, double s) {
  params.validate();
  const double a1 = params.init1, a2 = params.init2;
  const int p = params.p, q = params.q;
  const double as = std::abs(s);
  const double rho1 = std::sqrt(s * s + a1 * a1);
  const double rho2 = std::sqrt(s * s + a2 * a2);
  if (as == 0.0) return C2(Complex(a1, 0), Complex(a2, 0));

  // bracket(x) = (x^2+a1^2)^{p+1} (x^2+a2^2)^{q+1} - a1^{2(p+1)} a2^{2(q+1)}
  //            = F0 * expm1(L(x)); the series branch keeps full precision
  // where the naive difference cancels.
  const double c2 = (p + 1) / (a1 * a1) + (q + 1) / (a2 * a2);
  const double c4 = -((p + 1) / (2 * a1 * a1 * a1 * a1) + (q + 1) / (2 * a2 * a2 * a2 * a2));
  const double x_switch = 1e-3 * std::min(a1, a2);

  auto theta_integrand = [&](double aj2) {
    return [=](double x) {
      if (x < x_switch) {
        const double w = c2 + (c4 + 0.5 * c2 * c2) * x * x;
        return 1.0 / ((x * x + aj2) * std::sqrt(w));
      }
      const double L = (p + 1) * std::log1p(x * x / (a1 * a1)) +
                       (q + 1) * std::log1p(x * x / (a2 * a2));
      return x / ((x * x + aj2) * std::sqrt(std::expm1(L)));
    };
  };

  auto theta = [&](double aj2) {
    const double v = gauss_kronrod<double, 31>::integrate(theta_integrand(aj2), 0.0,
                                                          as, 12, 1e-12);
    return (s < 0 ? -v : v);
  };
  const double th1 = theta(a1 * a1);
  const double th2 = theta(a2 * a2);
  return C2(rho1 * std::polar(1.0, th1), rho2 * std::polar(1.0, th2));
}

CurveParams gamma_special_params(int p, int q) {
  const double lam = lambda_exponent(p, q);
  CurveParams prm;
  prm.p = p;
  prm.q = q;
  prm.init1 = std::sqrt((p + 1) / lam);
  prm.init2 = std::sqrt((q + 1) / lam);
  prm.kind = CurveKind::Gamma;
  return prm;
}

C2 gamma_special(int p, int q, double t) {
  const CurveParams prm = gamma_special_params(p, q);
  const double w1 = std::sqrt((q + 1.0) / (p + 1.0));
  const double w2 = std::sqrt((p + 1.0) / (q + 1.0));
  return C2(prm.init1 * std::polar(1.0, w1 * t), prm.init2 * std::polar(1.0, -w2 * t));
}

namespace {

struct RadialProblem {
  int p, q, n;
  double S;  // b1^2 + b2^2
  double R;  // b1^{2(p+1)} b2^{2(q+1)}

  double G(double x) const {
    return std::pow(S, n) * std::pow(x, p + 1) * std::pow(1.0 - x, q + 1) - R;
  }
  double Gprime(double x) const {
    return std::pow(S, n) * ((p + 1) * std::pow(x, p) * std::pow(1.0 - x, q + 1) -
                             (q + 1) * std::pow(x, p + 1) * std::pow(1.0 - x, q));
  }
};

RadialProblem make_radial(int p, int q, double b1, double b2) {
  if (p < 0 || q < 0) throw std::invalid_argument("critical_radii: p, q >= 0");
  if (!(b1 > 0) || !(b2 > 0)) throw std::invalid_argument("critical_radii: b > 0");
  RadialProblem rp;
  rp.p = p;
  rp.q = q;
  rp.n = p + q + 2;
  rp.S = b1 * b1 + b2 * b2;
  rp.R = std::pow(b1, 2 * (p + 1)) * std::pow(b2, 2 * (q + 1));
  return rp;
}

double bisect(const RadialProblem& rp, double lo, double hi) {
  double flo = rp.G(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = rp.G(mid);
    if ((fm >= 0) == (flo >= 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> critical_radii(int p, int q, double b1, double b2) {
  const RadialProblem rp = make_radial(p, q, b1, b2);
  const double xstar = (p + 1.0) / rp.n;
  const double fmax = rp.G(xstar);
  if (fmax < -1e-12 * rp.R)
    throw InequalityViolatedError(
        "no critical radii: n^n b1^{2(p+1)} b2^{2(q+1)} exceeds the bound");
  if (std::abs(fmax) <= 1e-12 * rp.R) return {xstar};
  return {bisect(rp, 0.0, xstar), bisect(rp, xstar, 1.0)};
}

namespace {

// G(x)/((x - x1)(x2 - x)), evaluated through the analytic slope near the
// turning radii where the direct quotient cancels.
double g_hat(const RadialProblem& rp, double x1, double x2, double x) {
  const double w = x2 - x1;
  const double d1 = x - x1, d2 = x2 - x;
  const double near = 1e-7 * w;
  if (d1 < near) return rp.Gprime(x1) / w;
  if (d2 < near) return -rp.Gprime(x2) / w;
  return rp.G(x) / (d1 * d2);
}

double turning_quadrature(const RadialProblem& rp, double x1, double x2,
                          double weight_pow_x, double weight_pow_1mx) {
  // x = mid + half*sin(phi) removes the inverse-sqrt endpoint singularity.
  const double mid = 0.5 * (x1 + x2), half = 0.5 * (x2 - x1);
  auto f = [&](double phi) {
    const double x = mid + half * std::sin(phi);
    double w = std::sqrt(g_hat(rp, x1, x2, x));
    if (weight_pow_x != 0.0) w *= x;
    if (weight_pow_1mx != 0.0) w *= (1.0 - x);
    return 1.0 / w;
  };
  return gauss_kronrod<double, 31>::integrate(f, -0.5 * pi, 0.5 * pi, 12, 1e-11);
}

// Im(gamma1^{p+1} gamma2^{q+1}) changes sign exactly at the critical times of
// the radii; consecutive sign changes are half a radial period apart.
double period_by_events(const CurveParams& prm, double t_guess) {
  const double tol = 1e-11;
  CurveSystem sys{prm, +1.0};
  auto stepper = make_stepper(tol);
  State x{prm.init1, 0.0, prm.init2, 0.0};
  double tau = 0.0, dt = 1e-3;

  auto event = [&prm](const State& st) {
    const C2 z = to_c2(st);
    return (std::pow(z[0], prm.p + 1) * std::pow(z[1], prm.q + 1)).imag();
  };

  const double scan_dt = t_guess / 256.0;
  std::vector<double> crossings;
  double prev_tau = 0.0, prev_e = 0.0;
  State prev_state = x;
  bool armed = false;
  const double arm_level = 1e-10 * prm.monomial0();
  for (int k = 1; k <= 512 && crossings.size() < 2; ++k) {
    const double target = k * scan_dt;
    advance_to(stepper, sys, x, tau, target, dt);
    const double e = event(x);
    if (!armed) {
      if (std::abs(e) > arm_level) armed = true;
    } else if ((e >= 0) != (prev_e >= 0)) {
      // bisection on [prev_tau, tau], re-advancing from the bracket state
      double lo = prev_tau, hi = tau;
      State lo_state = prev_state;
      double lo_e = prev_e;
      for (int it = 0; it < 80 && hi - lo > 1e-13 * t_guess; ++it) {
        State mstate = lo_state;
        auto mstepper = make_stepper(tol);
        double mtau = lo, mdt = std::min(dt, hi - lo);
        advance_to(mstepper, sys, mstate, mtau, 0.5 * (lo + hi), mdt);
        const double me = event(mstate);
        if ((me >= 0) == (lo_e >= 0)) {
          lo = mtau;
          lo_state = mstate;
          lo_e = me;
        } else {
          hi = mtau;
        }
      }
      crossings.push_back(0.5 * (lo + hi));
    }
    prev_tau = tau;
    prev_e = e;
    prev_state = x;
  }
  if (crossings.size() < 2)
    throw NonConvergenceError("period event detection found fewer than two critical times");
  return 2.0 * (crossings[1] - crossings[0]);
}

}  // namespace

PeriodReport gamma_period(int p, int q, double b1, double b2) {
  const auto radii = critical_radii(p, q, b1, b2);
  if (radii.size() < 2)
    throw EqualityCaseError(
        "equality case: nu constant, radii already periodic with any period");
  const RadialProblem rp = make_radial(p, q, b1, b2);
  const double x1 = radii[0], x2 = radii[1];

  PeriodReport rep;
  rep.critical_radii = radii;
  rep.period = rp.S * turning_quadrature(rp, x1, x2, 0.0, 0.0);

  CurveParams prm;
  prm.p = p;
  prm.q = q;
  prm.init1 = b1;
  prm.init2 = b2;
  prm.kind = CurveKind::Gamma;
  rep.period_ode = period_by_events(prm, rep.period);

  const double pref = std::pow(b1, p + 1) * std::pow(b2, q + 1) / (2.0 * pi);
  rep.winding_integrals[0] = pref * turning_quadrature(rp, x1, x2, 1.0, 0.0);
  rep.winding_integrals[1] = pref * turning_quadrature(rp, x1, x2, 0.0, 1.0);
  return rep;
}

PeriodReport gamma_closedness(int p, int q, double b1, double b2, double tol,
                              long long max_denominator) {
  if (!(tol > 0)) throw std::invalid_argument("gamma_closedness: tol > 0");
  PeriodReport rep = gamma_period(p, q, b1, b2);
  std::array<Rational, 2> approx;
  bool ok = true;
  for (int j = 0; j < 2; ++j) {
    approx[j] = best_rational(rep.winding_integrals[j], max_denominator);
    rep.closed_error[j] = std::abs(approx[j].value() - rep.winding_integrals[j]);
    ok = ok && rep.closed_error[j] <= tol;
  }
  if (ok) rep.closed = approx;
  return rep;
}

Complex gamma_c_curve(int n, double c, double s) {
  if (n < 2) throw std::invalid_argument("gamma_c_curve: n >= 2 required");
  if (c < 0) throw std::invalid_argument("gamma_c_curve: c >= 0 required");
  if (c == 0.0 && s == 0.0)
    throw SingularPointError("gamma_c_curve: cone vertex c = s = 0");
  const double r = std::pow(s * s + c * c, 1.0 / (2.0 * n));
  return std::polar(r, std::atan2(s, c) / n);
}

Complex gamma_c_derivative(int n, double c, double s) {
  const Complex g = gamma_c_curve(n, c, s);
  return Complex(0, 1) * g / (static_cast<double>(n) * Complex(c, s));
}

}  // namespace slag::curves
