#include "slag/matrix_orbits.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "slag/curves.hpp"

namespace slag::matrix_orbits {

namespace {

// Platform-independent Gaussian pairs: mt19937_64 bits mapped to (0,1)
// uniforms explicitly, then Box-Muller (std::normal_distribution is not
// reproducible across standard libraries).
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    do {
      u = uniform();
    } while (u <= 0.0);
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * pi * v);
    have_spare_ = true;
    return r * std::cos(2.0 * pi * v);
  }

 private:
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

Eigen::MatrixXcd skew_j(int n) {
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -Eigen::MatrixXcd::Identity(n, n);
  j.bottomLeftCorner(n, n) = Eigen::MatrixXcd::Identity(n, n);
  return j;
}

}  // namespace

int curve_exponent(OrbitVariant variant, int n) {
  if (n < 1) throw std::invalid_argument("curve_exponent: n must be positive");
  switch (variant) {
    case OrbitVariant::GL:
      return n * n;
    case OrbitVariant::Sym:
      return n * (n + 1) / 2;
    case OrbitVariant::Skew:
      return 2 * n * n;
  }
  throw std::invalid_argument("curve_exponent: unknown variant");
}

int matrix_size(OrbitVariant variant, int n) {
  return variant == OrbitVariant::Skew ? 2 * n : n;
}

Eigen::MatrixXcd su_sample(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("su_sample: n must be positive");
  GaussianStream gauss(seed);
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = gauss();
      const double im = gauss();
      g(i, j) = Complex(re, im);
    }

  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge so the factorization is the unique one with positive
  // R diagonal; this makes Q Haar-distributed rather than QR-biased.
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double m = std::abs(d);
    if (m < 1e-300) throw DegenerateFrameError("su_sample: rank-deficient sample");
    q.col(j) *= d / m;
  }
  // Rotate one column to land in the special unitary group.
  const Complex det = Eigen::PartialPivLU<Eigen::MatrixXcd>(q).determinant();
  q.col(0) *= std::conj(det) / std::abs(det);
  return q;
}

OrbitPoint orbit_point(OrbitVariant variant, int n, double c, double s,
                       const Eigen::MatrixXcd& A) {
  const int min_n = variant == OrbitVariant::Skew ? 1 : 2;
  if (n < min_n)
    throw std::invalid_argument("orbit_point: n too small for this variant");
  const int size = matrix_size(variant, n);
  if (A.rows() != size || A.cols() != size)
    throw std::invalid_argument("orbit_point: A has the wrong size for this variant");
  const Complex gamma = curves::gamma_c_curve(curve_exponent(variant, n), c, s);

  OrbitPoint out;
  out.variant = variant;
  out.n = n;
  switch (variant) {
    case OrbitVariant::GL:
      out.matrix = (gamma / std::sqrt(double(n))) * A;
      break;
    case OrbitVariant::Sym:
      out.matrix = (gamma / std::sqrt(double(n))) * (A * A.transpose());
      break;
    case OrbitVariant::Skew:
      out.matrix = (gamma / std::sqrt(2.0 * n)) * (A * skew_j(n) * A.transpose());
      break;
  }

  const Eigen::MatrixXcd& b = out.matrix;
  const double det_mod = std::abs(Eigen::PartialPivLU<Eigen::MatrixXcd>(b).determinant());
  const double scale = std::pow(det_mod, 2.0 / size);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(size, size);
  switch (variant) {
    case OrbitVariant::GL:
      out.residual_unitary = (b * b.adjoint() - scale * id).norm();
      break;
    case OrbitVariant::Sym:
      out.residual_unitary = (b * b.conjugate() - scale * id).norm();
      break;
    case OrbitVariant::Skew:
      out.residual_unitary = (b * b.conjugate() + scale * id).norm();
      break;
  }
  const Complex det = Eigen::PartialPivLU<Eigen::MatrixXcd>(b).determinant();
  out.level = std::pow(det, size).real();
  return out;
}

std::array<double, 2> orbit_residual(const OrbitPoint& point, double target_level) {
  return {point.residual_unitary, std::abs(point.level - target_level)};
}

}  // namespace slag::matrix_orbits
