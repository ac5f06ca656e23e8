#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "slag/surfaces.hpp"
#include "slag/util.hpp"

namespace slag::pde {

/// Uniform rectangular grid carrying the scalar potential h with
/// h_x = g, h_y = f; indices are (i, j) = (x, y).
struct PotentialGrid {
  Eigen::MatrixXd h;  // rows index x, cols index y
  double x0 = 0.0, y0 = 0.0;
  double dx = 1.0, dy = 1.0;
  int p = 0, q = 0;
  double a1 = 0.0, a2 = 0.0;  // ellipticity regularizers

  double x(int i) const { return x0 + i * dx; }
  double y(int j) const { return y0 + j * dy; }
  int nx() const { return static_cast<int>(h.rows()); }
  int ny() const { return static_cast<int>(h.cols()); }
  void validate() const;
};

/// First-order fields on the interior of a PotentialGrid, plus the assembled
/// graph immersion phi_hat = (g + iy, f - ix).
struct GraphFields {
  Eigen::MatrixXd f, g;          // interior nodes of the source grid
  surfaces::Grid<C2> phi_hat;
  double x0 = 0.0, y0 = 0.0;     // coordinates of f(0,0)
  double dx = 1.0, dy = 1.0;
  int p = 0, q = 0;

  double x(int i) const { return x0 + i * dx; }
  double y(int j) const { return y0 + j * dy; }
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double final_residual = 0.0;
  std::vector<double> residual_history;  // accepted max-norm residuals, nonincreasing
  int fallback_sweeps = 0;               // Gauss-Seidel rescues taken
};

// Residuals of the first-order system on the interior of the fields:
//   R1 = f_x - g_y
//   R2 = (q+1)^2 (f^2 + x^2)^{q/(q+1)} g_x + (p+1)^2 (g^2 + y^2)^{p/(p+1)} f_y
// by central differences.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> cr_residual(const GraphFields& fields,
                                                        int p, int q);

// Interior residual of
//   (q+1)^2 (h_y^2 + x^2 + a1^2)^{q/(q+1)} h_xx
//     + (p+1)^2 (h_x^2 + y^2 + a2^2)^{p/(p+1)} h_yy
// with second-order central differences.
Eigen::MatrixXd potential_residual(const PotentialGrid& grid);

// Fill a grid by sampling fn(x, y) at every node (boundary source / oracle).
PotentialGrid make_grid(int p, int q, double a1, double a2, double x0, double x1,
                        double y0, double y1, int nx, int ny,
                        const std::function<double(double, double)>& fn);

// Solve the Dirichlet problem on the rectangle carried by `boundary` (border
// entries of boundary.h are the data; the interior is ignored). Frozen
// coefficient linearization with a sparse direct solve, Armijo damping on the
// max-norm residual, Gauss-Seidel fallback when the damped step stalls.
// Requires a1, a2 > 0. Convergence failure is reported, not thrown.
std::pair<PotentialGrid, SolveReport> solve_dirichlet(const PotentialGrid& boundary,
                                                      double tol, int max_iter);

// f = h_y, g = h_x by central differences on the interior; phi_hat pointwise.
GraphFields reconstruct_graph(const PotentialGrid& grid);

}  // namespace slag::pde
