#include "slag/ambient.hpp"

#include <cmath>

namespace slag::ambient {

using legendrian::LegendrianMap;
using surfaces::SurfaceGrid;

namespace {

constexpr double kLegendrianGate = 1e-6;

double real_dot(const Eigen::VectorXcd& v, const Eigen::VectorXcd& w) {
  return (v.array() * w.conjugate().array()).sum().real();
}

void check_legendrian(const LegendrianMap& map, const Eigen::VectorXd& params,
                      const char* which) {
  if (map.domain_dim == 0) return;
  if (legendrian::legendrian_residual_max(map, params) > kLegendrianGate)
    throw NotLegendrianError(std::string("assembly rejected: factor map '") + which +
                             "' fails the Legendrian condition at the sample point");
}

void finish(AmbientFrame& out) {
  const Complex det = Eigen::PartialPivLU<Eigen::MatrixXcd>(out.frame).determinant();
  out.det_modulus = std::abs(det);
  if (out.det_modulus < 1e-12)
    throw DegenerateFrameError("ambient frame has vanishing determinant");
  out.phase = det / out.det_modulus;

  const int n = static_cast<int>(out.frame.cols());
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double g = real_dot(out.frame.col(i), out.frame.col(j));
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  out.orthonormality_residual = worst;
}

}  // namespace

Eigen::MatrixXcd real_gram_schmidt(const Eigen::MatrixXcd& cols) {
  Eigen::MatrixXcd q = cols;
  for (int j = 0; j < q.cols(); ++j) {
    for (int k = 0; k < j; ++k)
      q.col(j) -= real_dot(q.col(j), q.col(k)) * q.col(k);
    const double nrm = std::sqrt(real_dot(q.col(j), q.col(j)));
    if (nrm < 1e-10)
      throw DegenerateFrameError("gram-schmidt: degenerate tangent basis (chart pole?)");
    q.col(j) /= nrm;
  }
  return q;
}

AmbientFrame assemble_theorem1(const SurfaceGrid& surface, const LegendrianMap& psi,
                               const LegendrianMap& varphi, int iu, int ju,
                               const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const int p = psi.domain_dim, q = varphi.domain_dim;
  if (p != surface.p || q != surface.q)
    throw std::invalid_argument("assemble_theorem1: factor dimensions must match (p,q)");
  const int n = p + q + 2;
  const int m1 = psi.ambient_complex_dim;   // p + 1
  const int m2 = varphi.ambient_complex_dim;

  const C2 phi = surface.points.at(iu, ju);
  if (std::abs(phi[0]) < 1e-12 || std::abs(phi[1]) < 1e-12)
    throw SingularPointError("assemble_theorem1: singular point (phi_1 = 0 or phi_2 = 0)");

  check_legendrian(psi, x, "psi");
  check_legendrian(varphi, y, "varphi");

  const Eigen::VectorXcd pv = psi.eval(x);
  const Eigen::VectorXcd fv = varphi.eval(y);

  AmbientFrame out;
  out.metric_blocks = Eigen::Vector3d(1.0, std::abs(phi[0]), std::abs(phi[1]));
  out.point.resize(n);
  out.point.head(m1) = phi[0] * pv;
  out.point.tail(m2) = phi[1] * fv;

  // Surface 2-frame, orthonormalized in C^2 then pushed through the factors.
  Eigen::MatrixXcd surf2(2, 2);
  surf2.col(0) = surface.d_t.at(iu, ju);
  surf2.col(1) = surface.d_s.at(iu, ju);
  surf2 = real_gram_schmidt(surf2);

  out.frame = Eigen::MatrixXcd::Zero(n, n);
  for (int c = 0; c < 2; ++c) {
    out.frame.col(c).head(m1) = surf2(0, c) * pv;
    out.frame.col(c).tail(m2) = surf2(1, c) * fv;
  }
  if (p > 0) {
    const Eigen::MatrixXcd tb = real_gram_schmidt(psi.tangent(x));
    const Complex u1 = phi[0] / std::abs(phi[0]);
    for (int c = 0; c < p; ++c) out.frame.col(2 + c).head(m1) = u1 * tb.col(c);
  }
  if (q > 0) {
    const Eigen::MatrixXcd tc = real_gram_schmidt(varphi.tangent(y));
    const Complex u2 = phi[1] / std::abs(phi[1]);
    for (int c = 0; c < q; ++c) out.frame.col(2 + p + c).tail(m2) = u2 * tc.col(c);
  }
  finish(out);
  return out;
}

AmbientFrame assemble_prop_a(int curve_n, double c, const LegendrianMap& psi, double s,
                             const Eigen::VectorXd& x) {
  if (psi.ambient_complex_dim != curve_n)
    throw std::invalid_argument("assemble_prop_a: psi must map into S^{2n-1} in C^n");
  check_legendrian(psi, x, "psi");

  const Complex g = curves::gamma_c_curve(curve_n, c, s);
  const Complex dg = curves::gamma_c_derivative(curve_n, c, s);
  const Eigen::VectorXcd pv = psi.eval(x);

  AmbientFrame out;
  out.metric_blocks = Eigen::Vector3d(1.0, std::abs(g), std::abs(g));
  out.point = g * pv;
  out.frame = Eigen::MatrixXcd::Zero(curve_n, curve_n);
  out.frame.col(0) = (dg / std::abs(dg)) * pv;
  if (curve_n > 1) {
    const Eigen::MatrixXcd tb = real_gram_schmidt(psi.tangent(x));
    const Complex u = g / std::abs(g);
    for (int cix = 0; cix + 1 < curve_n; ++cix) out.frame.col(1 + cix) = u * tb.col(cix);
  }
  finish(out);
  return out;
}

double phase_identity_check(const SurfaceGrid& surface, const LegendrianMap& psi,
                            const LegendrianMap& varphi, int iu, int ju,
                            const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const AmbientFrame amb = assemble_theorem1(surface, psi, varphi, iu, ju, x, y);
  const int p = psi.domain_dim, q = varphi.domain_dim;

  const C2 phi = surface.points.at(iu, ju);
  const double beta =
      surfaces::lagrangian_angle(surface.d_t.at(iu, ju), surface.d_s.at(iu, ju));

  auto factor_det = [](const LegendrianMap& map, const Eigen::VectorXd& prms) {
    const int m = map.ambient_complex_dim;
    Eigen::MatrixXcd b(m, m);
    b.col(0) = map.eval(prms);
    if (map.domain_dim > 0)
      b.rightCols(m - 1) = real_gram_schmidt(map.tangent(prms));
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(b).determinant();
  };

  const Complex rhs = ((p % 2 == 0) ? 1.0 : -1.0) *
                      std::polar(1.0, beta + p * std::arg(phi[0]) + q * std::arg(phi[1])) *
                      factor_det(psi, x) * factor_det(varphi, y);
  return std::abs(amb.phase - rhs);
}

}  // namespace slag::ambient
