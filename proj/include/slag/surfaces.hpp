#pragma once

#include <array>
#include <vector>

#include "slag/curves.hpp"
#include "slag/util.hpp"

namespace slag::surfaces {

template <class T>
struct Grid {
  int nt = 0, ns = 0;
  std::vector<T> data;

  Grid() = default;
  Grid(int nt_, int ns_) : nt(nt_), ns(ns_), data(static_cast<std::size_t>(nt_) * ns_) {}
  T& at(int i, int j) { return data[static_cast<std::size_t>(i) * ns + j]; }
  const T& at(int i, int j) const { return data[static_cast<std::size_t>(i) * ns + j]; }
};

enum class Provenance { Corollary1, Graph, External };

/// Rectangular (t,s) grid of C^2 points with first-derivative data.
struct SurfaceGrid {
  std::vector<double> ts, ss;
  Grid<C2> points, d_t, d_s;
  int p = 0, q = 0;
  Provenance provenance = Provenance::External;
};

struct AngleReport {
  Grid<double> beta;        // Lagrangian angle per point, in (-pi, pi]
  Grid<double> symplectic;  // omega(phi_t, phi_s)
  Grid<double> condition;   // wrap(beta + p arg(phi1) + q arg(phi2))
  double max_abs_symplectic = 0.0;
  double max_abs_condition = 0.0;
};

struct CurvatureReport {
  double value = 0.0;
  double half_grid_value = 0.0;  // same estimator on the stride-2 subgrid
};

// Pointwise products of an alpha and a gamma curve, with analytic tangents.
SurfaceGrid product_surface(const curves::CurveSample& alpha,
                            const curves::CurveSample& gamma);

// omega(v, w) = -Im sum v_i conj(w_i).
double symplectic_residual(const C2& v, const C2& w);

// arg of det[v w] normalized by the real 2-frame area
// |v ^ w| = sqrt(|v|^2 |w|^2 - <v,w>^2 - omega(v,w)^2).
double lagrangian_angle(const C2& v, const C2& w);

AngleReport angle_condition(const SurfaceGrid& surface);

// Residuals of the two defining equations of the cylinder family Sigma_a.
std::array<double, 2> sigma_a_membership(const C2& z, int p, int q, double a1,
                                         double a2);

// Integral of K dA over the grid interior; Gauss curvature by the Brioschi
// formula on central differences of the first fundamental form.
CurvatureReport total_curvature(const SurfaceGrid& surface);

}  // namespace slag::surfaces
