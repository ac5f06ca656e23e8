#include "slag/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "slag/ambient.hpp"
#include "slag/curves.hpp"
#include "slag/legendrian.hpp"
#include "slag/matrix_orbits.hpp"
#include "slag/pde.hpp"
#include "slag/surfaces.hpp"
#include "slag/util.hpp"

namespace slag::verify {

using curves::CurveKind;
using curves::CurveParams;
using curves::CurveSample;
using legendrian::LegendrianMap;
using surfaces::SurfaceGrid;
namespace orbits = slag::matrix_orbits;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1.0);
  return out;
}

// Deterministic "random" parameter draws via the Halton sequence.
int draw_exponent(std::size_t i, unsigned base) {
  return static_cast<int>(halton(i, base) * 5.0);  // 0..4
}

double draw_in(std::size_t i, unsigned base, double lo, double hi) {
  return lo + (hi - lo) * halton(i, base);
}

// Symmetric t-interval safely inside the reach of the alpha flow (which
// escapes in finite time for p + q >= 1).
std::vector<double> safe_alpha_times(const CurveParams& prm, double t_want, int n) {
  const CurveSample probe = curves::integrate_alpha(prm, t_want, 1e-8);
  const double reach = 0.9 * std::min(-probe.t_neg, probe.t_pos);
  return linspace(-reach, reach, n);
}

CurveSample closed_form_alpha(const CurveParams& prm, const std::vector<double>& ts) {
  CurveSample out;
  out.params = prm;
  for (double t : ts) {
    out.ts.push_back(t);
    out.points.push_back(curves::alpha_closed_form(prm, t));
    out.residual_conserved.push_back(0.0);
    out.residual_line.push_back(0.0);
  }
  out.t_neg = ts.front();
  out.t_pos = ts.back();
  return out;
}

CurveSample closed_form_gamma_special(int p, int q, const std::vector<double>& ts) {
  CurveSample out;
  out.params = curves::gamma_special_params(p, q);
  for (double t : ts) {
    out.ts.push_back(t);
    out.points.push_back(curves::gamma_special(p, q, t));
    out.residual_conserved.push_back(0.0);
    out.residual_line.push_back(0.0);
  }
  out.t_neg = ts.front();
  out.t_pos = ts.back();
  return out;
}

}  // namespace

CheckResult verify_conservation(int count, double t_max, double ode_tol, double tol) {
  CheckResult res;
  res.name = "conservation";
  res.tolerance = tol;
  double worst_alpha = 0.0, worst_gamma = 0.0;
  int truncated = 0;
  for (int i = 0; i < count; ++i) {
    CurveParams prm;
    prm.p = draw_exponent(i, 2);
    prm.q = draw_exponent(i, 3);
    prm.init1 = draw_in(i, 5, 0.5, 2.0);
    prm.init2 = draw_in(i, 7, 0.5, 2.0);

    prm.kind = CurveKind::Alpha;
    const CurveSample alpha = curves::integrate_alpha(prm, t_max, ode_tol);
    if (alpha.truncated) ++truncated;
    for (std::size_t k = 0; k < alpha.size(); ++k)
      worst_alpha = std::max({worst_alpha, std::abs(alpha.residual_conserved[k]),
                              std::abs(alpha.residual_line[k])});

    prm.kind = CurveKind::Gamma;
    const CurveSample gamma = curves::integrate_gamma(prm, t_max, ode_tol);
    for (std::size_t k = 0; k < gamma.size(); ++k)
      worst_gamma = std::max({worst_gamma, std::abs(gamma.residual_conserved[k]),
                              std::abs(gamma.residual_line[k])});
  }
  res.observed = std::max(worst_alpha, worst_gamma);
  res.passed = res.observed < tol;
  res.details = {{"parameter_sets", count},
                 {"t_max", t_max},
                 {"ode_tol", ode_tol},
                 {"worst_alpha_drift", worst_alpha},
                 {"worst_gamma_drift", worst_gamma},
                 {"alpha_runs_truncated", truncated}};
  return res;
}

CheckResult verify_angle_constancy(int surface_count, int grid, double tol_condition,
                                   double tol_symplectic) {
  CheckResult res;
  res.name = "angle_constancy";
  res.tolerance = tol_condition;
  double worst_cond = 0.0, worst_symp = 0.0;
  for (int i = 0; i < surface_count; ++i) {
    CurveParams pa;
    pa.p = draw_exponent(i, 2);
    pa.q = draw_exponent(i, 3);
    pa.init1 = draw_in(i, 5, 0.6, 1.6);
    pa.init2 = draw_in(i, 7, 0.6, 1.6);
    pa.kind = CurveKind::Alpha;

    CurveParams pg = pa;
    pg.init1 = draw_in(i, 11, 0.6, 1.4);
    pg.init2 = draw_in(i, 13, 0.6, 1.4);
    pg.kind = CurveKind::Gamma;

    const CurveSample alpha =
        curves::integrate_at(pa, safe_alpha_times(pa, 0.8, grid), 1e-10);
    const CurveSample gamma =
        curves::integrate_at(pg, linspace(-1.5, 1.5, grid), 1e-10);
    const auto rep = surfaces::angle_condition(surfaces::product_surface(alpha, gamma));
    worst_cond = std::max(worst_cond, rep.max_abs_condition);
    worst_symp = std::max(worst_symp, rep.max_abs_symplectic);
  }
  res.observed = worst_cond;
  res.passed = worst_cond < tol_condition && worst_symp < tol_symplectic;
  res.details = {{"surfaces", surface_count},
                 {"grid", grid},
                 {"max_condition", worst_cond},
                 {"max_symplectic", worst_symp},
                 {"tol_symplectic", tol_symplectic}};
  return res;
}

CheckResult verify_ambient(int samples, double tol_std, double tol_identity) {
  CheckResult res;
  res.name = "ambient_phase";
  res.tolerance = tol_std;

  struct Combo {
    int p, q;
    LegendrianMap psi, varphi;
    double a1, a2, b1, b2;
    const char* label;
  };
  const std::vector<Combo> combos = {
      {2, 2, legendrian::geodesic_sphere(2), legendrian::legendrian_torus(3), 1.0, 1.2,
       0.9, 0.8, "(2,2) sphere/torus"},
      {1, 0, legendrian::great_circle(), legendrian::geodesic_sphere(0), 1.1, 0.9, 1.0,
       1.1, "(1,0) circle/point"},
      {0, 1, legendrian::geodesic_sphere(0), legendrian::legendrian_torus(2), 0.9, 1.2,
       1.2, 0.7, "(0,1) point/torus"},
      {3, 2, legendrian::geodesic_sphere(3), legendrian::geodesic_sphere(2), 1.0, 1.0,
       1.0, 0.9, "(3,2) sphere/sphere"}};

  const int m = std::max(3, static_cast<int>(std::ceil(std::sqrt(samples))));
  double worst_std = 0.0, worst_identity = 0.0, worst_ortho = 0.0;
  nlohmann::json per_combo = nlohmann::json::array();

  for (const Combo& cb : combos) {
    CurveParams pa;
    pa.p = cb.p;
    pa.q = cb.q;
    pa.init1 = cb.a1;
    pa.init2 = cb.a2;
    pa.kind = CurveKind::Alpha;
    CurveParams pg = pa;
    pg.init1 = cb.b1;
    pg.init2 = cb.b2;
    pg.kind = CurveKind::Gamma;

    const CurveSample alpha =
        curves::integrate_at(pa, safe_alpha_times(pa, 0.8, m), 1e-10);
    const CurveSample gamma = curves::integrate_at(pg, linspace(-1.0, 1.0, m), 1e-10);
    const SurfaceGrid surf = surfaces::product_surface(alpha, gamma);

    std::vector<double> angles;
    double combo_identity = 0.0;
    std::size_t k = 0;
    const unsigned xb[] = {2, 3, 5, 7}, yb[] = {11, 13, 17};
    for (int iu = 0; iu < m; ++iu)
      for (int ju = 0; ju < m; ++ju, ++k) {
        Eigen::VectorXd x(cb.p), y(cb.q);
        for (int d = 0; d < cb.p; ++d) x[d] = 0.3 + (pi - 0.6) * halton(k, xb[d]);
        for (int d = 0; d < cb.q; ++d) y[d] = 0.3 + (pi - 0.6) * halton(k, yb[d]);
        const auto amb =
            ambient::assemble_theorem1(surf, cb.psi, cb.varphi, iu, ju, x, y);
        angles.push_back(std::arg(amb.phase));
        worst_ortho = std::max(worst_ortho, amb.orthonormality_residual);
        combo_identity = std::max(
            combo_identity,
            ambient::phase_identity_check(surf, cb.psi, cb.varphi, iu, ju, x, y));
      }
    const double cstd = circular_std(angles);
    worst_std = std::max(worst_std, cstd);
    worst_identity = std::max(worst_identity, combo_identity);
    per_combo.push_back({{"config", cb.label},
                         {"samples", angles.size()},
                         {"circular_std", cstd},
                         {"max_identity_residual", combo_identity}});
  }

  // Single-curve product families: phase constancy over (s, x).
  for (int n : {2, 3}) {
    const LegendrianMap psi =
        (n == 2) ? legendrian::great_circle() : legendrian::legendrian_torus(3);
    std::vector<double> angles;
    std::size_t k = 0;
    for (double s : linspace(-2.0, 2.0, 20))
      for (int j = 0; j < 25; ++j, ++k) {
        Eigen::VectorXd x(psi.domain_dim);
        const unsigned xb[] = {2, 3};
        for (int d = 0; d < psi.domain_dim; ++d)
          x[d] = 0.3 + (pi - 0.6) * halton(k, xb[d]);
        angles.push_back(std::arg(ambient::assemble_prop_a(n, 1.0, psi, s, x).phase));
      }
    const double cstd = circular_std(angles);
    worst_std = std::max(worst_std, cstd);
    per_combo.push_back({{"config", std::string("cone family n=") + std::to_string(n)},
                         {"samples", angles.size()},
                         {"circular_std", cstd}});
  }

  res.observed = worst_std;
  res.passed = worst_std < tol_std && worst_identity < tol_identity;
  res.details = {{"per_config", per_combo},
                 {"max_identity_residual", worst_identity},
                 {"tol_identity", tol_identity},
                 {"max_frame_orthonormality", worst_ortho}};
  return res;
}

CheckResult verify_corollary2(double tol) {
  CheckResult res;
  res.name = "corollary2_membership";
  res.tolerance = tol;
  double worst = 0.0;
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q)
      for (const auto& [a1, a2] : {std::pair{1.0, 1.0}, std::pair{1.0, 2.0}}) {
        CurveParams pa;
        pa.p = p;
        pa.q = q;
        pa.init1 = a1;
        pa.init2 = a2;
        pa.kind = CurveKind::Alpha;
        const CurveSample alpha = closed_form_alpha(pa, linspace(-1.0, 1.0, 21));
        const CurveSample gamma =
            closed_form_gamma_special(p, q, linspace(0.0, 2.0 * pi, 21));
        const SurfaceGrid surf = surfaces::product_surface(alpha, gamma);
        for (const C2& z : surf.points.data) {
          const auto r = surfaces::sigma_a_membership(z, p, q, a1, a2);
          worst = std::max({worst, std::abs(r[0]), std::abs(r[1])});
        }
      }
  res.observed = worst;
  res.passed = worst < tol;
  res.details = {{"exponent_range", 4}, {"initial_data", {"(1,1)", "(1,2)"}}};
  return res;
}

CheckResult verify_curvature(double rel_tol, double ratio_lo, double ratio_hi) {
  CheckResult res;
  res.name = "total_curvature";
  res.tolerance = rel_tol;

  // p = q = 0, a = (1,1): alpha(t) = cosh t + i sinh t in both components,
  // gamma(s) = (e^{is}, e^{-is}); grid closed over a full s-period.
  const int nt = 241, ns = 201;
  SurfaceGrid surf;
  surf.p = 0;
  surf.q = 0;
  surf.provenance = surfaces::Provenance::External;
  surf.ts = linspace(-6.0, 6.0, nt);
  surf.ss = linspace(0.0, 2.0 * pi, ns);
  surf.points = surfaces::Grid<C2>(nt, ns);
  surf.d_t = surfaces::Grid<C2>(nt, ns);
  surf.d_s = surfaces::Grid<C2>(nt, ns);
  for (int i = 0; i < nt; ++i) {
    const double t = surf.ts[i];
    const Complex al(std::cosh(t), std::sinh(t));
    const Complex dal = Complex(0, 1) * std::conj(al);
    for (int j = 0; j < ns; ++j) {
      const Complex e = std::polar(1.0, surf.ss[j]);
      const Complex ec = std::conj(e);
      surf.points.at(i, j) = C2(al * e, al * ec);
      surf.d_t.at(i, j) = C2(dal * e, dal * ec);
      surf.d_s.at(i, j) = C2(Complex(0, 1) * al * e, Complex(0, -1) * al * ec);
    }
  }
  // Exact closure so the periodic s-stencil engages.
  for (int i = 0; i < nt; ++i) {
    surf.points.at(i, ns - 1) = surf.points.at(i, 0);
    surf.d_t.at(i, ns - 1) = surf.d_t.at(i, 0);
    surf.d_s.at(i, ns - 1) = surf.d_s.at(i, 0);
  }

  const auto rep = surfaces::total_curvature(surf);
  const double target = -4.0 * pi;
  const double err = std::abs(rep.value - target);
  const double err_half = std::abs(rep.half_grid_value - target);
  const double ratio = err_half / std::max(err, 1e-300);

  res.observed = err / std::abs(target);
  res.passed = res.observed < rel_tol && ratio > ratio_lo && ratio < ratio_hi;
  res.details = {{"value", rep.value},
                 {"half_grid_value", rep.half_grid_value},
                 {"target", target},
                 {"richardson_ratio", ratio},
                 {"ratio_window", {ratio_lo, ratio_hi}},
                 {"grid", {nt, ns}}};
  return res;
}

CheckResult verify_orbits(int draws, double tol) {
  CheckResult res;
  res.name = "matrix_orbits";
  res.tolerance = tol;
  double worst_level = 0.0, worst_unitary = 0.0, worst_structure = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double c = std::array{0.5, 1.0, 2.0}[i % 3];
    const double s = draw_in(i, 5, -3.0, 3.0);

    {
      const int n = 2 + i % 2;
      const auto A = orbits::su_sample(n, 1000 + i);
      const auto pt = orbits::orbit_point(orbits::OrbitVariant::GL, n, c, s, A);
      const double target = c / std::pow(n, n * n / 2.0);
      const auto r = orbits::orbit_residual(pt, target);
      worst_unitary = std::max(worst_unitary, r[0]);
      worst_level = std::max(worst_level, r[1]);
    }
    {
      const int n = 2 + i % 2;
      const auto A = orbits::su_sample(n, 2000 + i);
      const auto pt = orbits::orbit_point(orbits::OrbitVariant::Sym, n, c, s, A);
      worst_unitary = std::max(worst_unitary, pt.residual_unitary);
      worst_structure =
          std::max(worst_structure, (pt.matrix - pt.matrix.transpose()).norm());
    }
    {
      const int n = 1 + i % 3;
      const auto A = orbits::su_sample(2 * n, 3000 + i);
      const auto pt = orbits::orbit_point(orbits::OrbitVariant::Skew, n, c, s, A);
      worst_unitary = std::max(worst_unitary, pt.residual_unitary);
      worst_structure =
          std::max(worst_structure, (pt.matrix + pt.matrix.transpose()).norm());
    }
  }
  res.observed = std::max(worst_unitary, worst_level);
  res.passed = res.observed < tol && worst_structure < 1e-12;
  res.details = {{"draws", draws},
                 {"worst_gl_level_error", worst_level},
                 {"worst_unitary_residual", worst_unitary},
                 {"worst_structure_residual", worst_structure}};
  return res;
}

CheckResult verify_pde(double exact_tol, double factor_lo, double factor_hi) {
  CheckResult res;
  res.name = "pde_dirichlet";
  res.tolerance = exact_tol;

  bool monotone = true, all_converged = true;
  auto check_log = [&](const pde::SolveReport& rep) {
    all_converged = all_converged && rep.converged;
    for (std::size_t k = 1; k < rep.residual_history.size(); ++k)
      monotone =
          monotone && rep.residual_history[k] <= rep.residual_history[k - 1] + 1e-15;
  };

  // Bilinear boundary data is an exact discrete solution for any exponents.
  const auto bilinear = [](double x, double y) { return x * y + 2 * x - y; };
  const auto g0 = pde::make_grid(1, 2, 1.0, 1.0, 0, 1, 0, 1, 33, 33, bilinear);
  const auto [sol0, rep0] = pde::solve_dirichlet(g0, 1e-10, 50);
  check_log(rep0);
  double bilinear_err = 0.0;
  for (int i = 0; i < sol0.nx(); ++i)
    for (int j = 0; j < sol0.ny(); ++j)
      bilinear_err =
          std::max(bilinear_err, std::abs(sol0.h(i, j) - bilinear(sol0.x(i), sol0.y(j))));

  // Degree-4 harmonic oracle at p = q = 0 (the equation is exactly Laplace
  // there); the discrete error is O(dx^2), so halving the spacing should
  // shrink it by ~4.
  const auto quartic = [](double x, double y) {
    return x * x * x * x - 6 * x * x * y * y + y * y * y * y;
  };
  auto harmonic_err = [&](int nodes) {
    const auto g = pde::make_grid(0, 0, 1e-6, 1e-6, 0, 1, 0, 1, nodes, nodes, quartic);
    const auto [sol, rep] = pde::solve_dirichlet(g, 1e-11, 50);
    check_log(rep);
    double err = 0.0;
    for (int i = 0; i < sol.nx(); ++i)
      for (int j = 0; j < sol.ny(); ++j)
        err = std::max(err, std::abs(sol.h(i, j) - quartic(sol.x(i), sol.y(j))));
    return err;
  };
  const double err_coarse = harmonic_err(33);
  const double err_fine = harmonic_err(65);
  const double factor = err_coarse / std::max(err_fine, 1e-300);

  // Genuinely nonlinear run: first-order self-consistency of the
  // reconstructed fields.
  const auto g2 = pde::make_grid(1, 0, 0.5, 0.5, 1, 2, 1, 2, 33, 33,
                                 [](double x, double y) { return x * y; });
  const auto [sol2, rep2] = pde::solve_dirichlet(g2, 1e-10, 60);
  check_log(rep2);
  const auto fields2 = pde::reconstruct_graph(sol2);
  const auto [r1, r2] = pde::cr_residual(fields2, 1, 0);
  const double cr_max = std::max(r1.cwiseAbs().maxCoeff(), r2.cwiseAbs().maxCoeff());
  const double cr_bound = 5.0 * g2.dx * g2.dx;

  // Nonlinear curved-boundary run exercising the damped iteration.
  const auto g3 = pde::make_grid(1, 1, 1.0, 1.0, 0.5, 1.5, 0.5, 1.5, 33, 33,
                                 [](double x, double y) { return x * x * y; });
  const auto [sol3, rep3] = pde::solve_dirichlet(g3, 1e-9, 60);
  check_log(rep3);

  res.observed = bilinear_err;
  res.passed = bilinear_err <= exact_tol && factor > factor_lo && factor < factor_hi &&
               monotone && all_converged && cr_max < cr_bound;
  res.details = {{"bilinear_error", bilinear_err},
                 {"harmonic_error_coarse", err_coarse},
                 {"harmonic_error_fine", err_fine},
                 {"convergence_factor", factor},
                 {"factor_window", {factor_lo, factor_hi}},
                 {"cr_residual_max", cr_max},
                 {"cr_residual_bound", cr_bound},
                 {"monotone_logs", monotone},
                 {"all_converged", all_converged},
                 {"nonlinear_final_residual", rep3.final_residual}};
  return res;
}

CheckResult verify_negative_controls() {
  CheckResult res;
  res.name = "negative_controls";
  res.tolerance = 0.1;

  const LegendrianMap hopf = legendrian::hopf_circle();
  Eigen::VectorXd t1(1);
  t1[0] = 0.7;
  const double hopf_residual = legendrian::legendrian_residual_max(hopf, t1);

  bool prop_a_rejected = false;
  try {
    ambient::assemble_prop_a(2, 1.0, hopf, 0.3, t1);
  } catch (const NotLegendrianError&) {
    prop_a_rejected = true;
  }

  bool theorem1_rejected = false;
  try {
    CurveParams pa;
    pa.p = 1;
    pa.q = 0;
    pa.kind = CurveKind::Alpha;
    CurveParams pg = pa;
    pg.kind = CurveKind::Gamma;
    const CurveSample alpha =
        curves::integrate_at(pa, linspace(-0.3, 0.3, 5), 1e-10);
    const CurveSample gamma = curves::integrate_at(pg, linspace(-0.3, 0.3, 5), 1e-10);
    const SurfaceGrid surf = surfaces::product_surface(alpha, gamma);
    ambient::assemble_theorem1(surf, hopf, legendrian::geodesic_sphere(0), 2, 2, t1,
                               Eigen::VectorXd(0));
  } catch (const NotLegendrianError&) {
    theorem1_rejected = true;
  }

  // Non-orbit matrix probe: a non-conformal stretch of a unitary must be
  // flagged by the unitarity residual.
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(2, 2);
  D(0, 0) = 2.0;
  D(1, 1) = 0.5;
  const auto probe = orbits::orbit_point(orbits::OrbitVariant::GL, 2, 1.0, 0.3,
                                         D * orbits::su_sample(2, 42));
  const double orbit_flag = probe.residual_unitary;

  res.observed = std::min(hopf_residual, orbit_flag);
  res.passed = hopf_residual > 0.1 && prop_a_rejected && theorem1_rejected &&
               orbit_flag > 0.1;
  res.details = {{"hopf_legendrian_residual", hopf_residual},
                 {"cone_assembly_rejected", prop_a_rejected},
                 {"product_assembly_rejected", theorem1_rejected},
                 {"non_orbit_unitarity_residual", orbit_flag}};
  return res;
}

std::vector<CheckResult> verify_all() {
  return {verify_conservation(), verify_angle_constancy(), verify_ambient(),
          verify_corollary2(),   verify_curvature(),       verify_orbits(),
          verify_pde(),          verify_negative_controls()};
}

nlohmann::json report_json(const std::vector<CheckResult>& results) {
  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  for (const CheckResult& r : results) {
    checks.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"observed", r.observed},
                      {"tolerance", r.tolerance},
                      {"details", r.details}});
    all = all && r.passed;
  }
  return {{"schema_version", 1}, {"all_passed", all}, {"checks", checks}};
}

}  // namespace slag::verify
