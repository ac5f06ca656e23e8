#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace slag::verify {

/// Outcome of one verification suite: the worst observed deviation, the
/// tolerance it was held to, and suite-specific diagnostics.
struct CheckResult {
  std::string name;
  bool passed = false;
  double observed = 0.0;
  double tolerance = 0.0;
  nlohmann::json details = nlohmann::json::object();
};

// Conserved quantities of the two curve systems stay within `tol` of their
// initial values across `count` deterministic parameter draws, |t| <= t_max.
CheckResult verify_conservation(int count = 50, double t_max = 5.0,
                                double ode_tol = 1e-10, double tol = 1e-8);

// Wrapped beta + p arg(phi1) + q arg(phi2) below tol_condition and symplectic
// residual below tol_symplectic on product-surface grids.
CheckResult verify_angle_constancy(int surface_count = 20, int grid = 50,
                                   double tol_condition = 1e-6,
                                   double tol_symplectic = 1e-8);

// Ambient phase constancy (circular std of arg over >= `samples` draws) and
// the determinant factorization identity, across four factor configurations.
CheckResult verify_ambient(int samples = 500, double tol_std = 1e-6,
                           double tol_identity = 1e-8);

// Cylinder membership residuals on product surfaces for p, q <= 4.
CheckResult verify_corollary2(double tol = 1e-8);

// Total curvature of the p = q = 0, a = (1,1) cylinder within rel_tol of
// -4*pi, with a half-grid ratio consistent with second-order convergence.
CheckResult verify_curvature(double rel_tol = 0.05, double ratio_lo = 3.2,
                             double ratio_hi = 5.0);

// Matrix-orbit residuals for all variants; GL level anchored to c/n^{n^2/2}.
CheckResult verify_orbits(int draws = 100, double tol = 1e-10);

// Dirichlet solver: bilinear exactness, harmonic-oracle convergence factor
// under grid halving, monotone residual logs, first-order self-consistency.
CheckResult verify_pde(double exact_tol = 1e-12, double factor_lo = 3.5,
                       double factor_hi = 4.5);

// Non-Legendrian and non-orbit probes must be rejected or flagged.
CheckResult verify_negative_controls();

// Every suite, in acceptance order.
std::vector<CheckResult> verify_all();

// Versioned report document for a set of suite results.
nlohmann::json report_json(const std::vector<CheckResult>& results);

}  // namespace slag::verify
