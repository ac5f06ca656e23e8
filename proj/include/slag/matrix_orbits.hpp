#pragma once

#include <array>
#include <cstdint>

#include "slag/util.hpp"

namespace slag::matrix_orbits {

enum class OrbitVariant {
  GL,    // B conj(B)^t = |det B|^{2/n} I,  level Re((det B)^n)
  Sym,   // symmetric, B conj(B) = |det B|^{2/n} I, level Re((det B)^n)
  Skew,  // skew 2n x 2n, B conj(B) = -|det B|^{1/n} I, level Re((det B)^{2n})
};

// Complex dimension of the ambient matrix space; the gamma_c exponent for the
// Proposition A curve of each variant.
int curve_exponent(OrbitVariant variant, int n);

// Matrix size of points of the given variant (2n for Skew).
int matrix_size(OrbitVariant variant, int n);

struct OrbitPoint {
  Eigen::MatrixXcd matrix;
  OrbitVariant variant = OrbitVariant::GL;
  int n = 2;
  double residual_unitary = 0.0;  // Frobenius norm of the conformal-unitarity defect
  double level = 0.0;             // Re((det B)^n) (Re((det B)^{2n}) for Skew)
};

// Deterministic pseudo-random special unitary matrix (Gaussian + QR + phase
// correction); identical output for identical (n, seed).
Eigen::MatrixXcd su_sample(int n, std::uint64_t seed);

// A point of the orbit family at curve parameter s on the level curve
// Re(gamma^m) = c; A must be special unitary of size matrix_size(variant, n).
OrbitPoint orbit_point(OrbitVariant variant, int n, double c, double s,
                       const Eigen::MatrixXcd& A);

// (conformal-unitarity residual, |level - target_level|).
std::array<double, 2> orbit_residual(const OrbitPoint& point, double target_level);

}  // namespace slag::matrix_orbits
