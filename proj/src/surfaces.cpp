#include "slag/surfaces.hpp"

#include <cmath>

namespace slag::surfaces {

using curves::CurveKind;

SurfaceGrid product_surface(const curves::CurveSample& alpha,
                            const curves::CurveSample& gamma) {
  if (alpha.params.kind != CurveKind::Alpha || gamma.params.kind != CurveKind::Gamma)
    throw std::invalid_argument("product_surface: expected (Alpha, Gamma) samples");
  if (alpha.params.p != gamma.params.p || alpha.params.q != gamma.params.q)
    throw std::invalid_argument("product_surface: mismatched exponents (p,q)");

  const int nt = static_cast<int>(alpha.size());
  const int ns = static_cast<int>(gamma.size());
  SurfaceGrid out;
  out.ts = alpha.ts;
  out.ss = gamma.ts;
  out.p = alpha.params.p;
  out.q = alpha.params.q;
  out.provenance = Provenance::Corollary1;
  out.points = Grid<C2>(nt, ns);
  out.d_t = Grid<C2>(nt, ns);
  out.d_s = Grid<C2>(nt, ns);

  for (int i = 0; i < nt; ++i) {
    const C2& a = alpha.points[i];
    const C2 da = curves::curve_rhs(alpha.params, a);
    for (int j = 0; j < ns; ++j) {
      const C2& g = gamma.points[j];
      const C2 dg = curves::curve_rhs(gamma.params, g);
      out.points.at(i, j) = C2(a[0] * g[0], a[1] * g[1]);
      out.d_t.at(i, j) = C2(da[0] * g[0], da[1] * g[1]);
      out.d_s.at(i, j) = C2(a[0] * dg[0], a[1] * dg[1]);
    }
  }
  return out;
}

double symplectic_residual(const C2& v, const C2& w) { return kaehler_omega(v, w); }

double lagrangian_angle(const C2& v, const C2& w) {
  const double ip = inner(v, w);
  const double om = kaehler_omega(v, w);
  const double area2 = inner(v, v) * inner(w, w) - ip * ip - om * om;
  if (!(area2 > 1e-28))
    throw DegenerateFrameError("lagrangian_angle: |v ^ w| below 1e-14");
  const Complex det = v[0] * w[1] - v[1] * w[0];
  return std::arg(det);
}

AngleReport angle_condition(const SurfaceGrid& surface) {
  const int nt = surface.points.nt, ns = surface.points.ns;
  AngleReport rep;
  rep.beta = Grid<double>(nt, ns);
  rep.symplectic = Grid<double>(nt, ns);
  rep.condition = Grid<double>(nt, ns);
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < ns; ++j) {
      const C2& z = surface.points.at(i, j);
      if (std::abs(z[0]) < 1e-12 || std::abs(z[1]) < 1e-12)
        throw SingularPointError("angle_condition: grid point with phi_1 = 0 or phi_2 = 0");
      const C2& vt = surface.d_t.at(i, j);
      const C2& vs = surface.d_s.at(i, j);
      const double beta = lagrangian_angle(vt, vs);
      const double om = symplectic_residual(vt, vs);
      const double cond =
          wrap_angle(beta + surface.p * std::arg(z[0]) + surface.q * std::arg(z[1]));
      rep.beta.at(i, j) = beta;
      rep.symplectic.at(i, j) = om;
      rep.condition.at(i, j) = cond;
      rep.max_abs_symplectic = std::max(rep.max_abs_symplectic, std::abs(om));
      rep.max_abs_condition = std::max(rep.max_abs_condition, std::abs(cond));
    }
  }
  return rep;
}

std::array<double, 2> sigma_a_membership(const C2& z, int p, int q, double a1,
                                         double a2) {
  const double lam = curves::lambda_exponent(p, q);
  const double r1 = std::norm(z[0]) / (p + 1.0) - std::norm(z[1]) / (q + 1.0) -
                    (a1 * a1 - a2 * a2) / lam;
  const double target = std::pow(a1, p + 1) * std::pow(a2, q + 1) *
                        std::sqrt((p + 1.0) * (q + 1.0)) / lam;
  const double r2 = (std::pow(z[0], p + 1) * std::pow(z[1], q + 1)).real() - target;
  return {r1, r2};
}

namespace {

double uniform_spacing(const std::vector<double>& xs, const char* label) {
  if (xs.size() < 3) throw std::invalid_argument("total_curvature: grid too small");
  const double h = xs[1] - xs[0];
  for (std::size_t i = 1; i + 1 < xs.size(); ++i)
    if (std::abs((xs[i + 1] - xs[i]) - h) > 1e-8 * std::abs(h))
      throw std::invalid_argument(std::string("total_curvature: non-uniform ") + label +
                                  " spacing");
  return h;
}

double det3(const Eigen::Matrix3d& m) { return m.determinant(); }

// A closed s-direction is recognized by an exactly repeated last column; the
// stencils then wrap and the trapezoid covers the full period.
bool s_periodic(const SurfaceGrid& surf) {
  const int nt = surf.points.nt, ns = surf.points.ns;
  if (ns < 5) return false;
  for (int i = 0; i < nt; ++i)
    if ((surf.points.at(i, 0) - surf.points.at(i, ns - 1)).norm() > 1e-12 ||
        (surf.d_t.at(i, 0) - surf.d_t.at(i, ns - 1)).norm() > 1e-12 ||
        (surf.d_s.at(i, 0) - surf.d_s.at(i, ns - 1)).norm() > 1e-12)
      return false;
  return true;
}

double curvature_integral(const SurfaceGrid& surf) {
  const int nt = surf.points.nt, ns = surf.points.ns;
  const double dt = uniform_spacing(surf.ts, "t");
  const double ds = uniform_spacing(surf.ss, "s");
  const bool per = s_periodic(surf);
  const int jm = per ? ns - 1 : ns;  // unique columns

  Grid<double> E(nt, ns), F(nt, ns), G(nt, ns);
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < ns; ++j) {
      const C2& vt = surf.d_t.at(i, j);
      const C2& vs = surf.d_s.at(i, j);
      E.at(i, j) = inner(vt, vt);
      F.at(i, j) = inner(vt, vs);
      G.at(i, j) = inner(vs, vs);
    }
  }

  auto jw = [per, jm](int j) { return per ? (j % jm + jm) % jm : j; };
  auto du = [&](const Grid<double>& f, int i, int j) {
    return (f.at(i + 1, j) - f.at(i - 1, j)) / (2 * dt);
  };
  auto dv = [&](const Grid<double>& f, int i, int j) {
    return (f.at(i, jw(j + 1)) - f.at(i, jw(j - 1))) / (2 * ds);
  };
  auto duu = [&](const Grid<double>& f, int i, int j) {
    return (f.at(i + 1, j) - 2 * f.at(i, j) + f.at(i - 1, j)) / (dt * dt);
  };
  auto dvv = [&](const Grid<double>& f, int i, int j) {
    return (f.at(i, jw(j + 1)) - 2 * f.at(i, j) + f.at(i, jw(j - 1))) / (ds * ds);
  };
  auto duv = [&](const Grid<double>& f, int i, int j) {
    return (f.at(i + 1, jw(j + 1)) - f.at(i + 1, jw(j - 1)) -
            f.at(i - 1, jw(j + 1)) + f.at(i - 1, jw(j - 1))) /
           (4 * dt * ds);
  };

  // Trapezoid over interior nodes; border rows carry the one-sided stencil
  // error and are excluded (the wrapped s-direction has no border).
  const int j_lo = per ? 0 : 1;
  const int j_hi = per ? jm : ns - 1;
  std::vector<double> contrib;
  contrib.reserve(static_cast<std::size_t>(nt - 2) * (j_hi - j_lo));
  for (int i = 1; i < nt - 1; ++i) {
    for (int j = j_lo; j < j_hi; ++j) {
      const double e = E.at(i, j), f = F.at(i, j), g = G.at(i, j);
      const double det = e * g - f * f;
      if (!(det > 0))
        throw DegenerateFrameError("total_curvature: degenerate metric (EG - F^2 <= 0)");

      Eigen::Matrix3d m1, m2;
      m1 << -0.5 * dvv(E, i, j) + duv(F, i, j) - 0.5 * duu(G, i, j), 0.5 * du(E, i, j),
          du(F, i, j) - 0.5 * dv(E, i, j),
          dv(F, i, j) - 0.5 * du(G, i, j), e, f,
          0.5 * dv(G, i, j), f, g;
      m2 << 0.0, 0.5 * dv(E, i, j), 0.5 * du(G, i, j),
          0.5 * dv(E, i, j), e, f,
          0.5 * du(G, i, j), f, g;
      const double K = (det3(m1) - det3(m2)) / (det * det);

      const double wi = (i == 1 || i == nt - 2) ? 0.5 : 1.0;
      const double wj = (!per && (j == 1 || j == ns - 2)) ? 0.5 : 1.0;
      contrib.push_back(K * std::sqrt(det) * wi * wj * dt * ds);
    }
  }
  return pairwise_sum(contrib);
}

SurfaceGrid stride2(const SurfaceGrid& surf) {
  SurfaceGrid out;
  out.p = surf.p;
  out.q = surf.q;
  out.provenance = surf.provenance;
  const int nt = (surf.points.nt + 1) / 2, ns = (surf.points.ns + 1) / 2;
  out.points = Grid<C2>(nt, ns);
  out.d_t = Grid<C2>(nt, ns);
  out.d_s = Grid<C2>(nt, ns);
  for (int i = 0; i < nt; ++i) out.ts.push_back(surf.ts[2 * i]);
  for (int j = 0; j < ns; ++j) out.ss.push_back(surf.ss[2 * j]);
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < ns; ++j) {
      out.points.at(i, j) = surf.points.at(2 * i, 2 * j);
      out.d_t.at(i, j) = surf.d_t.at(2 * i, 2 * j);
      out.d_s.at(i, j) = surf.d_s.at(2 * i, 2 * j);
    }
  return out;
}

}  // namespace

CurvatureReport total_curvature(const SurfaceGrid& surface) {
  CurvatureReport rep;
  rep.value = curvature_integral(surface);
  if (surface.points.nt >= 7 && surface.points.ns >= 7)
    rep.half_grid_value = curvature_integral(stride2(surface));
  else
    rep.half_grid_value = rep.value;
  return rep;
}

}  // namespace slag::surfaces
