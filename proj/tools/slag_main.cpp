#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "slag/ambient.hpp"
#include "slag/curves.hpp"
#include "slag/io.hpp"
#include "slag/legendrian.hpp"
#include "slag/matrix_orbits.hpp"
#include "slag/pde.hpp"
#include "slag/surfaces.hpp"
#include "slag/util.hpp"
#include "slag/verify.hpp"

namespace {

using namespace slag;
using curves::CurveKind;
using curves::CurveParams;
using curves::CurveSample;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1.0);
  return out;
}

std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos)
    throw CLI::ValidationError("--grid", "expected ROWSxCOLS, e.g. 50x50");
  int a = 0, b = 0;
  try {
    a = std::stoi(s.substr(0, x));
    b = std::stoi(s.substr(x + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--grid", "expected ROWSxCOLS, e.g. 50x50");
  }
  if (a < 2 || b < 2) throw CLI::ValidationError("--grid", "grid must be at least 2x2");
  return {a, b};
}

std::function<double(double, double)> boundary_catalog(const std::string& name) {
  static const std::map<std::string, std::function<double(double, double)>> cat = {
      {"bilinear", [](double x, double y) { return x * y + 2 * x - y; }},
      {"xy", [](double x, double y) { return x * y; }},
      {"x2", [](double x, double) { return x * x; }},
      {"harmonic3", [](double x, double y) { return x * x * x - 3 * x * y * y; }},
      {"harmonic4",
       [](double x, double y) {
         return x * x * x * x - 6 * x * x * y * y + y * y * y * y;
       }}};
  const auto it = cat.find(name);
  if (it == cat.end())
    throw CLI::ValidationError(
        "--boundary", "unknown boundary '" + name +
                          "' (catalog: bilinear, xy, x2, harmonic3, harmonic4)");
  return it->second;
}

// Dense edge file: one "i j value" triple per border node of an nx x ny grid.
void apply_boundary_file(pde::PotentialGrid& grid, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--boundary-file", "cannot open " + path);
  Eigen::MatrixXd seen = Eigen::MatrixXd::Zero(grid.nx(), grid.ny());
  int i = 0, j = 0;
  double v = 0.0;
  while (in >> i >> j >> v) {
    if (i < 0 || i >= grid.nx() || j < 0 || j >= grid.ny())
      throw CLI::ValidationError("--boundary-file", "node index out of range");
    if (i != 0 && i != grid.nx() - 1 && j != 0 && j != grid.ny() - 1)
      throw CLI::ValidationError("--boundary-file", "interior node in edge file");
    grid.h(i, j) = v;
    seen(i, j) = 1.0;
  }
  for (int a = 0; a < grid.nx(); ++a)
    for (int b = 0; b < grid.ny(); ++b) {
      const bool border = a == 0 || a == grid.nx() - 1 || b == 0 || b == grid.ny() - 1;
      if (border && seen(a, b) == 0.0)
        throw CLI::ValidationError("--boundary-file", "border node (" +
                                       std::to_string(a) + "," + std::to_string(b) +
                                       ") missing from edge file");
    }
}

void export_grid_csv(const pde::PotentialGrid& g, const std::string& path) {
  std::ostringstream out;
  out << "x,y,h\n";
  char buf[128];
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.x(i), g.y(j), g.h(i, j));
      out << buf;
    }
  io::atomic_write(path, out.str());
}

CurveSample build_curve(CurveKind kind, const CurveParams& prm, double t_max,
                        double tol) {
  return kind == CurveKind::Alpha ? curves::integrate_alpha(prm, t_max, tol)
                                  : curves::integrate_gamma(prm, t_max, tol);
}

int run(int argc, char** argv) {
  CLI::App app{"Toolkit for product constructions of special Lagrangian immersions"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI-style file");

  // ---- curve ------------------------------------------------------------
  auto* curve = app.add_subcommand("curve", "Integrate a profile curve, write CSV");
  std::string curve_kind;
  CurveParams cp;
  bool special = false;
  double t_max = 5.0, ode_tol = 1e-10;
  std::string out_csv = "curve.csv";
  curve->add_option("kind", curve_kind, "alpha or gamma")
      ->required()
      ->check(CLI::IsMember({"alpha", "gamma"}));
  curve->add_option("--p", cp.p, "first exponent")->check(CLI::NonNegativeNumber);
  curve->add_option("--q", cp.q, "second exponent")->check(CLI::NonNegativeNumber);
  curve->add_option("--init1", cp.init1, "initial radius 1 (> 0)");
  curve->add_option("--init2", cp.init2, "initial radius 2 (> 0)");
  curve->add_flag("--special", special,
                  "use the closed-orbit initial data (gamma only)");
  curve->add_option("--t-max", t_max, "half-width of the time interval");
  curve->add_option("--tol", ode_tol, "integrator tolerance");
  curve->add_option("--out", out_csv, "output CSV path");

  // ---- surface ----------------------------------------------------------
  auto* surface = app.add_subcommand("surface", "Build a product surface, write OBJ");
  int sp = 0, sq = 0;
  std::vector<double> aa{1.0, 1.0}, bb{1.0, 1.0};
  std::string sgrid = "50x50", projection = "re1-im1-re2", out_obj = "surface.obj";
  double t_half = 0.5, s_half = 1.5;
  surface->add_option("--p", sp)->check(CLI::NonNegativeNumber);
  surface->add_option("--q", sq)->check(CLI::NonNegativeNumber);
  surface->add_option("--a", aa, "alpha initial data a1,a2")->delimiter(',')->expected(2);
  surface->add_option("--b", bb, "gamma initial data b1,b2")->delimiter(',')->expected(2);
  surface->add_option("--grid", sgrid, "grid shape ROWSxCOLS");
  surface->add_option("--t-half", t_half, "half-width of the t interval");
  surface->add_option("--s-half", s_half, "half-width of the s interval");
  surface->add_option("--projection", projection,
                      "re1-im1-re2 | re1-re2-im2 | moduli-phase");
  surface->add_option("--out", out_obj, "output OBJ path");

  // ---- orbit ------------------------------------------------------------
  auto* orbit = app.add_subcommand("orbit", "Evaluate a matrix-orbit point");
  std::string variant = "gl";
  int on = 2;
  double oc = 1.0, os = 0.0, otol = 1e-10;
  std::uint64_t seed = 1;
  std::string orbit_out;
  orbit->add_option("--variant", variant, "gl | sym | skew")
      ->check(CLI::IsMember({"gl", "sym", "skew"}));
  orbit->add_option("--n", on, "orbit size parameter");
  orbit->add_option("--c", oc, "level constant (>= 0)");
  orbit->add_option("--s", os, "curve parameter");
  orbit->add_option("--seed", seed, "seed for the unitary sample");
  orbit->add_option("--tol", otol, "residual tolerance");
  orbit->add_option("--out", orbit_out, "optional JSON report path");

  // ---- pde --------------------------------------------------------------
  auto* pdecmd = app.add_subcommand("pde", "Potential-equation tools");
  auto* solve = pdecmd->add_subcommand("solve", "Solve the Dirichlet problem");
  int pp = 0, pq = 0, pmax_iter = 50;
  double pa1 = 1.0, pa2 = 1.0, ptol = 1e-10;
  std::vector<double> domain{0.0, 1.0, 0.0, 1.0};
  std::string pgrid = "33x33", boundary = "bilinear", boundary_file, out_h;
  solve->add_option("--p", pp)->check(CLI::NonNegativeNumber);
  solve->add_option("--q", pq)->check(CLI::NonNegativeNumber);
  solve->add_option("--a1", pa1, "regularizer (must be > 0)");
  solve->add_option("--a2", pa2, "regularizer (must be > 0)");
  solve->add_option("--domain", domain, "x0,x1,y0,y1")->delimiter(',')->expected(4);
  solve->add_option("--grid", pgrid, "grid shape ROWSxCOLS");
  solve->add_option("--boundary", boundary, "boundary catalog entry");
  solve->add_option("--boundary-file", boundary_file, "dense edge-value file");
  solve->add_option("--tol", ptol, "residual tolerance");
  solve->add_option("--max-iter", pmax_iter, "iteration cap");
  solve->add_option("--out", out_h, "output CSV path for h");

  // ---- verify -----------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite = "all";
  std::string report_path;
  int vgrid_p = -1, vgrid_q = -1;
  std::vector<double> va{1.0, 1.0};
  std::string vgrid = "50x50";
  verify->add_option("suite", suite, "suite name")
      ->check(CLI::IsMember({"conservation", "corollary1", "ambient", "corollary2",
                             "curvature", "orbits", "pde", "negative-controls",
                             "all"}));
  verify->add_option("--out", report_path, "JSON report path");
  verify->add_option("--p", vgrid_p, "single-configuration exponent (corollary2)");
  verify->add_option("--q", vgrid_q, "single-configuration exponent (corollary2)");
  verify->add_option("--a", va, "single-configuration initial data a1,a2")
      ->delimiter(',')
      ->expected(2);
  verify->add_option("--grid", vgrid, "sample grid for single-configuration runs");

  // ---- ambient ----------------------------------------------------------
  auto* ambientcmd =
      app.add_subcommand("ambient", "Phase-constancy report for the assembled families");
  std::string ambient_out;
  int ambient_samples = 500;
  ambientcmd->add_option("--samples", ambient_samples, "minimum sample count");
  ambientcmd->add_option("--out", ambient_out, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*curve) {
      cp.kind = curve_kind == "alpha" ? CurveKind::Alpha : CurveKind::Gamma;
      if (special) {
        if (cp.kind != CurveKind::Gamma) {
          std::cerr << "error: --special applies to gamma curves only\n";
          return kExitUsage;
        }
        const CurveParams sp2 = curves::gamma_special_params(cp.p, cp.q);
        cp.init1 = sp2.init1;
        cp.init2 = sp2.init2;
      }
      const CurveSample sample = build_curve(cp.kind, cp, t_max, ode_tol);
      io::export_csv(sample, out_csv);
      std::cout << "wrote " << out_csv << " (" << sample.size() << " samples)\n";
      return kExitOk;
    }

    if (*surface) {
      const auto [nt, ns] = parse_grid(sgrid);
      CurveParams pa;
      pa.p = sp;
      pa.q = sq;
      pa.init1 = aa[0];
      pa.init2 = aa[1];
      pa.kind = CurveKind::Alpha;
      CurveParams pg = pa;
      pg.init1 = bb[0];
      pg.init2 = bb[1];
      pg.kind = CurveKind::Gamma;
      const CurveSample alpha =
          curves::integrate_at(pa, linspace(-t_half, t_half, nt), 1e-10);
      const CurveSample gamma =
          curves::integrate_at(pg, linspace(-s_half, s_half, ns), 1e-10);
      const auto surf = surfaces::product_surface(alpha, gamma);
      io::export_obj(surf, io::parse_projection(projection), out_obj);
      std::cout << "wrote " << out_obj << " (" << nt * ns << " vertices)\n";
      return kExitOk;
    }

    if (*orbit) {
      const auto var = variant == "gl"    ? matrix_orbits::OrbitVariant::GL
                       : variant == "sym" ? matrix_orbits::OrbitVariant::Sym
                                          : matrix_orbits::OrbitVariant::Skew;
      const int size = matrix_orbits::matrix_size(var, on);
      const auto A = matrix_orbits::su_sample(size, seed);
      const auto pt = matrix_orbits::orbit_point(var, on, oc, os, A);
      nlohmann::json doc = {{"schema_version", io::kReportSchemaVersion},
                            {"variant", variant},
                            {"n", on},
                            {"c", oc},
                            {"s", os},
                            {"seed", seed},
                            {"residual_unitary", pt.residual_unitary},
                            {"level", pt.level},
                            {"tolerance", otol},
                            {"passed", pt.residual_unitary < otol}};
      if (!orbit_out.empty()) io::write_json(doc, orbit_out);
      std::cout << doc.dump(2) << "\n";
      return pt.residual_unitary < otol ? kExitOk : kExitVerifyFailed;
    }

    if (*solve) {
      const auto [nx, ny] = parse_grid(pgrid);
      if (!(pa1 > 0) || !(pa2 > 0)) {
        std::cerr << "error: --a1 and --a2 must be strictly positive (the "
                     "potential equation degenerates on the axes otherwise)\n";
        return kExitUsage;
      }
      auto grid = pde::make_grid(pp, pq, pa1, pa2, domain[0], domain[1], domain[2],
                                 domain[3], nx, ny, boundary_catalog(boundary));
      if (!boundary_file.empty()) apply_boundary_file(grid, boundary_file);
      const auto [sol, rep] = pde::solve_dirichlet(grid, ptol, pmax_iter);
      if (!out_h.empty()) export_grid_csv(sol, out_h);
      std::cout << (rep.converged ? "converged" : "did not converge") << " after "
                << rep.iterations << " iterations, final residual "
                << rep.final_residual << "\n";
      return rep.converged ? kExitOk : kExitVerifyFailed;
    }

    if (*ambientcmd) {
      const auto r = slag::verify::verify_ambient(ambient_samples);
      const auto doc = slag::verify::report_json({r});
      if (!ambient_out.empty()) io::write_json(doc, ambient_out);
      std::cout << doc.dump(2) << "\n";
      return r.passed ? kExitOk : kExitVerifyFailed;
    }

    if (*verify) {
      std::vector<slag::verify::CheckResult> results;
      if (suite == "corollary2" && vgrid_p >= 0 && vgrid_q >= 0) {
        // Single-configuration membership run.
        const auto [nt, ns] = parse_grid(vgrid);
        CurveParams pa;
        pa.p = vgrid_p;
        pa.q = vgrid_q;
        pa.init1 = va[0];
        pa.init2 = va[1];
        pa.kind = CurveKind::Alpha;
        double worst = 0.0;
        for (int i = 0; i < nt; ++i) {
          const C2 a = curves::alpha_closed_form(pa, -1.0 + 2.0 * i / (nt - 1.0));
          for (int j = 0; j < ns; ++j) {
            const C2 g =
                curves::gamma_special(vgrid_p, vgrid_q, 2.0 * pi * j / (ns - 1.0));
            const auto r = surfaces::sigma_a_membership(
                C2(a[0] * g[0], a[1] * g[1]), vgrid_p, vgrid_q, va[0], va[1]);
            worst = std::max({worst, std::abs(r[0]), std::abs(r[1])});
          }
        }
        slag::verify::CheckResult r;
        r.name = "corollary2_membership";
        r.tolerance = 1e-8;
        r.observed = worst;
        r.passed = worst < r.tolerance;
        r.details = {{"p", vgrid_p}, {"q", vgrid_q}, {"a", va}, {"grid", vgrid}};
        results.push_back(r);
      } else if (suite == "conservation") {
        results.push_back(slag::verify::verify_conservation());
      } else if (suite == "corollary1") {
        results.push_back(slag::verify::verify_angle_constancy());
      } else if (suite == "ambient") {
        results.push_back(slag::verify::verify_ambient());
      } else if (suite == "corollary2") {
        results.push_back(slag::verify::verify_corollary2());
      } else if (suite == "curvature") {
        results.push_back(slag::verify::verify_curvature());
      } else if (suite == "orbits") {
        results.push_back(slag::verify::verify_orbits());
      } else if (suite == "pde") {
        results.push_back(slag::verify::verify_pde());
      } else if (suite == "negative-controls") {
        results.push_back(slag::verify::verify_negative_controls());
      } else {
        results = slag::verify::verify_all();
      }
      const auto doc = slag::verify::report_json(results);
      if (!report_path.empty()) io::write_json(doc, report_path);
      std::cout << doc.dump(2) << "\n";
      return doc["all_passed"].get<bool>() ? kExitOk : kExitVerifyFailed;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
