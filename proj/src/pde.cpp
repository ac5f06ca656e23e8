#include "slag/pde.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <stdexcept>

namespace slag::pde {

namespace {

double weight_x(int q, double a1, double hy, double x) {
  return (q + 1.0) * (q + 1.0) * std::pow(hy * hy + x * x + a1 * a1, q / (q + 1.0));
}

double weight_y(int p, double a2, double hx, double y) {
  return (p + 1.0) * (p + 1.0) * std::pow(hx * hx + y * y + a2 * a2, p / (p + 1.0));
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// Transfinite (Coons) blend of the four boundary edges; exact for bilinear
// data and agrees with the border everywhere.
void coons_fill(Eigen::MatrixXd& h) {
  const int nx = static_cast<int>(h.rows()), ny = static_cast<int>(h.cols());
  for (int i = 1; i < nx - 1; ++i) {
    const double u = static_cast<double>(i) / (nx - 1);
    for (int j = 1; j < ny - 1; ++j) {
      const double v = static_cast<double>(j) / (ny - 1);
      h(i, j) = (1 - u) * h(0, j) + u * h(nx - 1, j) + (1 - v) * h(i, 0) +
                v * h(i, ny - 1) -
                ((1 - u) * (1 - v) * h(0, 0) + u * (1 - v) * h(nx - 1, 0) +
                 (1 - u) * v * h(0, ny - 1) + u * v * h(nx - 1, ny - 1));
    }
  }
}

struct FrozenCoeffs {
  Eigen::MatrixXd wx, wy;  // interior-sized
};

FrozenCoeffs freeze(const PotentialGrid& g) {
  const int nx = g.nx(), ny = g.ny();
  FrozenCoeffs c;
  c.wx.resize(nx - 2, ny - 2);
  c.wy.resize(nx - 2, ny - 2);
  for (int i = 1; i < nx - 1; ++i)
    for (int j = 1; j < ny - 1; ++j) {
      const double hx = (g.h(i + 1, j) - g.h(i - 1, j)) / (2 * g.dx);
      const double hy = (g.h(i, j + 1) - g.h(i, j - 1)) / (2 * g.dy);
      c.wx(i - 1, j - 1) = weight_x(g.q, g.a1, hy, g.x(i));
      c.wy(i - 1, j - 1) = weight_y(g.p, g.a2, hx, g.y(j));
    }
  return c;
}

// Solve  wx d_xx + wy d_yy = -R  for the interior correction d (zero on the
// boundary) with the coefficients frozen.
Eigen::MatrixXd frozen_step(const PotentialGrid& g, const FrozenCoeffs& c,
                            const Eigen::MatrixXd& R) {
  const int mi = g.nx() - 2, mj = g.ny() - 2;
  const double ix2 = 1.0 / (g.dx * g.dx), iy2 = 1.0 / (g.dy * g.dy);
  auto idx = [mj](int i, int j) { return i * mj + j; };

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(5) * mi * mj);
  Eigen::VectorXd rhs(mi * mj);
  for (int i = 0; i < mi; ++i)
    for (int j = 0; j < mj; ++j) {
      const double wx = c.wx(i, j) * ix2, wy = c.wy(i, j) * iy2;
      trips.emplace_back(idx(i, j), idx(i, j), -2 * (wx + wy));
      if (i > 0) trips.emplace_back(idx(i, j), idx(i - 1, j), wx);
      if (i < mi - 1) trips.emplace_back(idx(i, j), idx(i + 1, j), wx);
      if (j > 0) trips.emplace_back(idx(i, j), idx(i, j - 1), wy);
      if (j < mj - 1) trips.emplace_back(idx(i, j), idx(i, j + 1), wy);
      rhs[idx(i, j)] = -R(i, j);
    }

  Eigen::SparseMatrix<double> A(mi * mj, mi * mj);
  A.setFromTriplets(trips.begin(), trips.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
  if (lu.info() != Eigen::Success)
    throw NonConvergenceError("solve_dirichlet: singular linearized system");
  const Eigen::VectorXd d = lu.solve(rhs);

  Eigen::MatrixXd delta(mi, mj);
  for (int i = 0; i < mi; ++i)
    for (int j = 0; j < mj; ++j) delta(i, j) = d[idx(i, j)];
  return delta;
}

void apply_interior(PotentialGrid& g, const Eigen::MatrixXd& delta, double lambda) {
  g.h.block(1, 1, g.nx() - 2, g.ny() - 2) += lambda * delta;
}

// Lexicographic Gauss-Seidel sweeps on the frozen stencil (deterministic
// schedule); used when the damped direct step fails to reduce the residual.
void gauss_seidel(PotentialGrid& g, int sweeps) {
  const int nx = g.nx(), ny = g.ny();
  const double ix2 = 1.0 / (g.dx * g.dx), iy2 = 1.0 / (g.dy * g.dy);
  for (int sweep = 0; sweep < sweeps; ++sweep)
    for (int i = 1; i < nx - 1; ++i)
      for (int j = 1; j < ny - 1; ++j) {
        const double hx = (g.h(i + 1, j) - g.h(i - 1, j)) / (2 * g.dx);
        const double hy = (g.h(i, j + 1) - g.h(i, j - 1)) / (2 * g.dy);
        const double wx = weight_x(g.q, g.a1, hy, g.x(i)) * ix2;
        const double wy = weight_y(g.p, g.a2, hx, g.y(j)) * iy2;
        g.h(i, j) = (wx * (g.h(i + 1, j) + g.h(i - 1, j)) +
                     wy * (g.h(i, j + 1) + g.h(i, j - 1))) /
                    (2 * (wx + wy));
      }
}

}  // namespace

void PotentialGrid::validate() const {
  if (!(dx > 0) || !(dy > 0))
    throw std::invalid_argument("PotentialGrid: spacings must be positive");
  if (nx() < 3 || ny() < 3)
    throw std::invalid_argument("PotentialGrid: need at least a 3x3 grid");
  if (p < 0 || q < 0) throw std::invalid_argument("PotentialGrid: p, q must be >= 0");
  if (a1 < 0 || a2 < 0)
    throw std::invalid_argument("PotentialGrid: regularizers must be nonnegative");
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> cr_residual(const GraphFields& fields,
                                                        int p, int q) {
  const int nx = static_cast<int>(fields.f.rows());
  const int ny = static_cast<int>(fields.f.cols());
  if (fields.g.rows() != nx || fields.g.cols() != ny)
    throw std::invalid_argument("cr_residual: f and g shapes differ");
  if (nx < 3 || ny < 3) throw std::invalid_argument("cr_residual: grid too small");

  Eigen::MatrixXd r1(nx - 2, ny - 2), r2(nx - 2, ny - 2);
  for (int i = 1; i < nx - 1; ++i)
    for (int j = 1; j < ny - 1; ++j) {
      const double fx = (fields.f(i + 1, j) - fields.f(i - 1, j)) / (2 * fields.dx);
      const double fy = (fields.f(i, j + 1) - fields.f(i, j - 1)) / (2 * fields.dy);
      const double gx = (fields.g(i + 1, j) - fields.g(i - 1, j)) / (2 * fields.dx);
      const double gy = (fields.g(i, j + 1) - fields.g(i, j - 1)) / (2 * fields.dy);
      const double f = fields.f(i, j), g = fields.g(i, j);
      const double x = fields.x(i), y = fields.y(j);
      r1(i - 1, j - 1) = fx - gy;
      r2(i - 1, j - 1) = weight_x(q, 0.0, f, x) * gx + weight_y(p, 0.0, g, y) * fy;
    }
  return {r1, r2};
}

Eigen::MatrixXd potential_residual(const PotentialGrid& grid) {
  grid.validate();
  const int nx = grid.nx(), ny = grid.ny();
  Eigen::MatrixXd r(nx - 2, ny - 2);
  for (int i = 1; i < nx - 1; ++i)
    for (int j = 1; j < ny - 1; ++j) {
      const double hx = (grid.h(i + 1, j) - grid.h(i - 1, j)) / (2 * grid.dx);
      const double hy = (grid.h(i, j + 1) - grid.h(i, j - 1)) / (2 * grid.dy);
      const double hxx =
          (grid.h(i + 1, j) - 2 * grid.h(i, j) + grid.h(i - 1, j)) / (grid.dx * grid.dx);
      const double hyy =
          (grid.h(i, j + 1) - 2 * grid.h(i, j) + grid.h(i, j - 1)) / (grid.dy * grid.dy);
      r(i - 1, j - 1) = weight_x(grid.q, grid.a1, hy, grid.x(i)) * hxx +
                        weight_y(grid.p, grid.a2, hx, grid.y(j)) * hyy;
    }
  return r;
}

PotentialGrid make_grid(int p, int q, double a1, double a2, double x0, double x1,
                        double y0, double y1, int nx, int ny,
                        const std::function<double(double, double)>& fn) {
  if (nx < 3 || ny < 3) throw std::invalid_argument("make_grid: need at least 3x3");
  if (!(x1 > x0) || !(y1 > y0))
    throw std::invalid_argument("make_grid: empty rectangle");
  PotentialGrid g;
  g.p = p;
  g.q = q;
  g.a1 = a1;
  g.a2 = a2;
  g.x0 = x0;
  g.y0 = y0;
  g.dx = (x1 - x0) / (nx - 1);
  g.dy = (y1 - y0) / (ny - 1);
  g.h.resize(nx, ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) g.h(i, j) = fn(g.x(i), g.y(j));
  g.validate();
  return g;
}

std::pair<PotentialGrid, SolveReport> solve_dirichlet(const PotentialGrid& boundary,
                                                      double tol, int max_iter) {
  boundary.validate();
  if (!(boundary.a1 > 0) || !(boundary.a2 > 0))
    throw std::invalid_argument(
        "solve_dirichlet: a1 and a2 must be strictly positive (the equation "
        "loses ellipticity on the axes otherwise)");
  if (!(tol > 0) || max_iter < 1)
    throw std::invalid_argument("solve_dirichlet: tol > 0 and max_iter >= 1 required");

  PotentialGrid g = boundary;
  coons_fill(g.h);

  SolveReport rep;
  Eigen::MatrixXd R = potential_residual(g);
  double norm = max_abs(R);
  rep.residual_history.push_back(norm);

  for (int iter = 0; iter < max_iter; ++iter) {
    if (norm < tol) {
      rep.converged = true;
      break;
    }
    const FrozenCoeffs c = freeze(g);
    const Eigen::MatrixXd delta = frozen_step(g, c, R);

    bool accepted = false;
    double lambda = 1.0;
    for (int k = 0; k < 40; ++k, lambda *= 0.5) {
      PotentialGrid trial = g;
      apply_interior(trial, delta, lambda);
      const Eigen::MatrixXd Rt = potential_residual(trial);
      const double nt = max_abs(Rt);
      if (nt <= (1.0 - 1e-4 * lambda) * norm) {
        g = std::move(trial);
        R = Rt;
        norm = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      PotentialGrid trial = g;
      gauss_seidel(trial, 50);
      const Eigen::MatrixXd Rt = potential_residual(trial);
      const double nt = max_abs(Rt);
      if (nt < norm) {
        g = std::move(trial);
        R = Rt;
        norm = nt;
        ++rep.fallback_sweeps;
      } else {
        break;  // stalled; report the residual reached
      }
    }
    rep.residual_history.push_back(norm);
    rep.iterations = iter + 1;
  }
  if (norm < tol) rep.converged = true;
  rep.final_residual = norm;
  return {std::move(g), rep};
}

GraphFields reconstruct_graph(const PotentialGrid& grid) {
  grid.validate();
  const int nx = grid.nx(), ny = grid.ny();
  GraphFields out;
  out.p = grid.p;
  out.q = grid.q;
  out.dx = grid.dx;
  out.dy = grid.dy;
  out.x0 = grid.x(1);
  out.y0 = grid.y(1);
  out.f.resize(nx - 2, ny - 2);
  out.g.resize(nx - 2, ny - 2);
  out.phi_hat = surfaces::Grid<C2>(nx - 2, ny - 2);
  for (int i = 1; i < nx - 1; ++i)
    for (int j = 1; j < ny - 1; ++j) {
      const double f = (grid.h(i, j + 1) - grid.h(i, j - 1)) / (2 * grid.dy);
      const double gg = (grid.h(i + 1, j) - grid.h(i - 1, j)) / (2 * grid.dx);
      out.f(i - 1, j - 1) = f;
      out.g(i - 1, j - 1) = gg;
      out.phi_hat.at(i - 1, j - 1) =
          C2(Complex(gg, grid.y(j)), Complex(f, -grid.x(i)));
    }
  return out;
}

}  // namespace slag::pde
