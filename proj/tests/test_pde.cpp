#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "slag/pde.hpp"

using namespace slag;
using pde::GraphFields;
using pde::PotentialGrid;

namespace {

using Fn = std::function<double(double, double)>;

GraphFields make_fields(int p, int q, double x0, double x1, double y0, double y1,
                        int n, const Fn& ffn, const Fn& gfn) {
  GraphFields out;
  out.p = p;
  out.q = q;
  out.x0 = x0;
  out.y0 = y0;
  out.dx = (x1 - x0) / (n - 1);
  out.dy = (y1 - y0) / (n - 1);
  out.f.resize(n, n);
  out.g.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.f(i, j) = ffn(out.x(i), out.y(j));
      out.g(i, j) = gfn(out.x(i), out.y(j));
    }
  return out;
}

}  // namespace

TEST_CASE("first-order residuals vanish on exact solutions") {
  // affine fields solve the system for every (p, q)
  const auto affine = make_fields(
      2, 3, 0.5, 1.5, -0.5, 0.5, 9, [](double x, double) { return 2 * x + 3; },
      [](double, double y) { return 2 * y + 5; });
  const auto [ra1, ra2] = pde::cr_residual(affine, 2, 3);
  CHECK(ra1.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(ra2.cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  // p = q = 0 reduces to the Cauchy-Riemann system; f = x^2 - y^2, g = 2xy
  const auto holo = make_fields(
      0, 0, -1, 1, -1, 1, 11, [](double x, double y) { return x * x - y * y; },
      [](double x, double y) { return 2 * x * y; });
  const auto [rh1, rh2] = pde::cr_residual(holo, 0, 0);
  CHECK(rh1.cwiseAbs().maxCoeff() < 1e-13);
  CHECK(rh2.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("first-order residuals on a constant-residual probe") {
  // p = 1, q = 0, f = x, g = -y/4:
  //   R1 = f_x - g_y = 1 + 1/4 = 5/4, R2 = 0 since g_x = f_y = 0
  const auto probe = make_fields(
      1, 0, 0.5, 1.5, 0.5, 1.5, 9, [](double x, double) { return x; },
      [](double, double y) { return -y / 4; });
  const auto [r1, r2] = pde::cr_residual(probe, 1, 0);
  CHECK((r1.array() - 1.25).abs().maxCoeff() < 1e-13);
  CHECK(r2.cwiseAbs().maxCoeff() < 1e-13);

  GraphFields bad = probe;
  bad.g.resize(4, 4);
  CHECK_THROWS_AS(pde::cr_residual(bad, 1, 0), std::invalid_argument);
}

TEST_CASE("potential residual on closed forms") {
  const auto bil = pde::make_grid(3, 2, 1.0, 1.0, 0.0, 1.0, 0.0, 1.0, 9, 9,
                                  [](double x, double y) { return 4 * x * y + x - 2 * y; });
  CHECK(pde::potential_residual(bil).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  const auto harm = pde::make_grid(0, 0, 0.0, 0.0, -1.0, 1.0, -1.0, 1.0, 11, 11,
                                   [](double x, double y) { return x * x - y * y; });
  CHECK(pde::potential_residual(harm).cwiseAbs().maxCoeff() < 1e-12);

  // p = 1, q = 0, a1 = a2 = 1, h = x^2: weight_x = 1, h_xx = 2, h_yy = 0
  const auto sq = pde::make_grid(1, 0, 1.0, 1.0, 0.0, 1.0, 0.0, 1.0, 9, 9,
                                 [](double x, double) { return x * x; });
  CHECK((pde::potential_residual(sq).array() - 2.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("solver input validation") {
  const auto grid = pde::make_grid(1, 0, 0.0, 0.5, 0.0, 1.0, 0.0, 1.0, 9, 9,
                                   [](double x, double y) { return x * y; });
  CHECK_THROWS_AS(pde::solve_dirichlet(grid, 1e-10, 50), std::invalid_argument);
  const auto ok = pde::make_grid(1, 0, 0.5, 0.5, 0.0, 1.0, 0.0, 1.0, 9, 9,
                                 [](double x, double y) { return x * y; });
  CHECK_THROWS_AS(pde::solve_dirichlet(ok, -1.0, 50), std::invalid_argument);
  CHECK_THROWS_AS(pde::solve_dirichlet(ok, 1e-10, 0), std::invalid_argument);

  PotentialGrid tiny;
  tiny.h.resize(2, 2);
  CHECK_THROWS_AS(tiny.validate(), std::invalid_argument);
  PotentialGrid badspacing;
  badspacing.h.resize(5, 5);
  badspacing.dx = 0.0;
  CHECK_THROWS_AS(badspacing.validate(), std::invalid_argument);
}

TEST_CASE("bilinear boundary data is solved exactly") {
  const auto bdry = pde::make_grid(2, 1, 0.7, 0.4, 0.0, 2.0, -1.0, 1.0, 17, 17,
                                   [](double x, double y) { return x * y + 2 * x - y; });
  const auto [sol, rep] = pde::solve_dirichlet(bdry, 1e-10, 50);
  CHECK(rep.converged);
  CHECK((sol.h - bdry.h).cwiseAbs().maxCoeff() < 1e-10);
  // accepted residuals are nonincreasing
  for (std::size_t k = 1; k < rep.residual_history.size(); ++k)
    CHECK(rep.residual_history[k] <= rep.residual_history[k - 1] + 1e-15);
}

TEST_CASE("nonlinear solve away from the axes") {
  const double dx = 1.0 / 16;
  const auto bdry = pde::make_grid(1, 0, 0.5, 0.5, 1.0, 2.0, 1.0, 2.0, 17, 17,
                                   [](double x, double y) { return x * y; });
  const auto [sol, rep] = pde::solve_dirichlet(bdry, 1e-10, 60);
  CHECK(rep.converged);
  CHECK(rep.final_residual < 1e-10);

  const GraphFields fields = pde::reconstruct_graph(sol);
  const auto [r1, r2] = pde::cr_residual(fields, 1, 0);
  CHECK(r1.cwiseAbs().maxCoeff() == doctest::Approx(0.0));  // mixed partials commute
  CHECK(r2.cwiseAbs().maxCoeff() < 5 * dx * dx);
}

TEST_CASE("discretization error shrinks at second order") {
  auto quartic = [](double x, double y) {
    return x * x * x * x - 6 * x * x * y * y + y * y * y * y;
  };
  double errs[2];
  const int sizes[2] = {17, 33};
  for (int k = 0; k < 2; ++k) {
    const auto bdry = pde::make_grid(0, 0, 1e-6, 1e-6, -1.0, 1.0, -1.0, 1.0,
                                     sizes[k], sizes[k], quartic);
    const auto [sol, rep] = pde::solve_dirichlet(bdry, 1e-12, 60);
    CHECK(rep.converged);
    Eigen::MatrixXd exact(sizes[k], sizes[k]);
    for (int i = 0; i < sizes[k]; ++i)
      for (int j = 0; j < sizes[k]; ++j) exact(i, j) = quartic(bdry.x(i), bdry.y(j));
    errs[k] = (sol.h - exact).cwiseAbs().maxCoeff();
  }
  CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("graph reconstruction from simple potentials") {
  const auto hxy = pde::make_grid(0, 0, 1.0, 1.0, 0.0, 1.0, 0.0, 2.0, 9, 9,
                                  [](double x, double y) { return x * y; });
  const GraphFields fxy = pde::reconstruct_graph(hxy);
  for (int i = 0; i < fxy.f.rows(); ++i)
    for (int j = 0; j < fxy.f.cols(); ++j) {
      const double x = fxy.x(i), y = fxy.y(j);
      CHECK(fxy.f(i, j) == doctest::Approx(x));   // h_y
      CHECK(fxy.g(i, j) == doctest::Approx(y));   // h_x
      const C2 z = fxy.phi_hat.at(i, j);
      CHECK(std::abs(z[0] - Complex(y, y)) < 1e-13);
      CHECK(std::abs(z[1] - Complex(x, -x)) < 1e-13);
    }

  const auto hx2 = pde::make_grid(0, 0, 1.0, 1.0, 0.0, 1.0, 0.0, 1.0, 9, 9,
                                  [](double x, double) { return x * x; });
  const GraphFields fx2 = pde::reconstruct_graph(hx2);
  for (int i = 0; i < fx2.f.rows(); ++i)
    for (int j = 0; j < fx2.f.cols(); ++j) {
      const double x = fx2.x(i), y = fx2.y(j);
      CHECK(fx2.f(i, j) == doctest::Approx(0.0));
      CHECK(fx2.g(i, j) == doctest::Approx(2 * x));
      const C2 z = fx2.phi_hat.at(i, j);
      CHECK(std::abs(z[0] - Complex(2 * x, y)) < 1e-13);
      CHECK(std::abs(z[1] - Complex(0, -x)) < 1e-13);
    }
}
