#pragma once

#include <array>
#include <optional>
#include <vector>

#include "slag/util.hpp"

namespace slag::curves {

enum class CurveKind { Alpha, Gamma };

struct CurveParams {
  int p = 0;
  int q = 0;
  double init1 = 1.0;  // a1 or b1
  double init2 = 1.0;  // a2 or b2
  CurveKind kind = CurveKind::Alpha;

  void validate() const;
  // Conserved monomial value at t = 0: init1^{p+1} init2^{q+1}.
  double monomial0() const;
  // Conserved quadratic value at t = 0: init1^2 -+ init2^2 per kind.
  double quadratic0() const;
};

/// A discretely sampled curve in C^2 together with per-sample drifts of the
/// two conserved quantities.
struct CurveSample {
  CurveParams params;
  std::vector<double> ts;
  std::vector<C2> points;
  std::vector<double> residual_conserved;  // drift of |z1|^2 -+ |z2|^2
  std::vector<double> residual_line;       // drift of Re(z1^{p+1} z2^{q+1})
  double tol = 0.0;
  // Interval actually reached; truncated = true when the state cap stopped
  // the integration before +-t_max (finite-time escape of the alpha flow).
  double t_neg = 0.0;
  double t_pos = 0.0;
  bool truncated = false;

  std::size_t size() const { return ts.size(); }
};

struct PeriodReport {
  double period = 0.0;      // turning-point quadrature
  double period_ode = 0.0;  // event detection on the integrated orbit
  std::vector<double> critical_radii;           // x = cos^2(nu) values in [0,1]
  std::array<double, 2> winding_integrals{0.0, 0.0};
  std::optional<std::array<Rational, 2>> closed;  // populated by gamma_closedness
  std::array<double, 2> closed_error{0.0, 0.0};
};

// Right-hand side of the defining first-order system at a point z.
C2 curve_rhs(const CurveParams& params, const C2& z);

// Integrate the alpha system on [-t_max, t_max] (truncated at the maximal
// interval where double-precision conservation monitoring is meaningful).
CurveSample integrate_alpha(const CurveParams& params, double t_max, double tol);

// Same for the gamma system; the state is bounded so no truncation occurs,
// but a collapsing radius |gamma_j| -> 0 raises SingularRadiusError.
CurveSample integrate_gamma(const CurveParams& params, double t_max, double tol);

// Integrate to a caller-supplied increasing list of times (may be negative).
CurveSample integrate_at(const CurveParams& params, const std::vector<double>& ts,
                         double tol);

// Closed-form alpha point at arc-like parameter s (signed; odd phases).
C2 alpha_closed_form(const CurveParams& params, double s);

// lambda with lambda^{p+q} = (p+1)^p (q+1)^q; lambda = 1 when p = q = 0.
double lambda_exponent(int p, int q);

// The explicit closed gamma orbit through b = (sqrt(p+1), sqrt(q+1))/sqrt(lambda).
C2 gamma_special(int p, int q, double t);
CurveParams gamma_special_params(int p, int q);

// Roots x in [0,1] of (b1^2+b2^2)^n x^{p+1} (1-x)^{q+1} = b1^{2(p+1)} b2^{2(q+1)}.
// Two roots in the strict-inequality case, one double root at equality.
std::vector<double> critical_radii(int p, int q, double b1, double b2);

// Radial period of the gamma orbit, by quadrature between the turning radii,
// cross-checked by event detection on the integrated orbit.
PeriodReport gamma_period(int p, int q, double b1, double b2);

// Closedness classification: winding integrals, best rational approximations
// bounded by max_denominator, closed iff both match within tol.
PeriodReport gamma_closedness(int p, int q, double b1, double b2, double tol,
                              long long max_denominator);

// Principal branch solution of gamma^n(s) = c + i s, c >= 0.
Complex gamma_c_curve(int n, double c, double s);
Complex gamma_c_derivative(int n, double c, double s);

}  // namespace slag::curves
