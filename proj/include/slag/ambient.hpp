#pragma once

#include "slag/legendrian.hpp"
#include "slag/surfaces.hpp"
#include "slag/util.hpp"

namespace slag::ambient {

/// One point of an assembled n-fold: the ambient point, the orthonormalized
/// frame (columns), and the unit-determinant phase.
struct AmbientFrame {
  Eigen::VectorXcd point;
  Eigen::MatrixXcd frame;  // n x n, columns are the frame vectors
  Complex phase;           // det(frame) / |det(frame)|
  double det_modulus = 0.0;
  double orthonormality_residual = 0.0;
  Eigen::Vector3d metric_blocks;  // (1, |phi1|, |phi2|)
};

// Phi(u, x, y) = (phi1(u) psi(x), phi2(u) varphi(y)) at grid node (iu, ju)
// of the surface, with factor parameters x, y.
AmbientFrame assemble_theorem1(const surfaces::SurfaceGrid& surface,
                               const legendrian::LegendrianMap& psi,
                               const legendrian::LegendrianMap& varphi, int iu, int ju,
                               const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Phi(s, x) = gamma_c(s) psi(x) with gamma_c the principal solution of
// gamma^n = c + i s.
AmbientFrame assemble_prop_a(int curve_n, double c,
                             const legendrian::LegendrianMap& psi, double s,
                             const Eigen::VectorXd& x);

// |phase - (-1)^p e^{i(beta + p arg phi1 + q arg phi2)} det B det C|.
double phase_identity_check(const surfaces::SurfaceGrid& surface,
                            const legendrian::LegendrianMap& psi,
                            const legendrian::LegendrianMap& varphi, int iu, int ju,
                            const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Modified Gram-Schmidt under the real inner product Re sum v_i conj(w_i);
// real-scalar combinations only, so complex phases are preserved.
Eigen::MatrixXcd real_gram_schmidt(const Eigen::MatrixXcd& cols);

}  // namespace slag::ambient
