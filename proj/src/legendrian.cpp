#include "slag/legendrian.hpp"

#include <cmath>

namespace slag::legendrian {

namespace {

// Spherical-angle chart of S^p in R^{p+1}:
//   x_i = cos(t_i) prod_{j<i} sin(t_j),  i = 1..p,   x_{p+1} = prod_{j<=p} sin(t_j).
Eigen::VectorXd sphere_point(const Eigen::VectorXd& t) {
  const int p = static_cast<int>(t.size());
  Eigen::VectorXd x(p + 1);
  double prod = 1.0;
  for (int i = 0; i < p; ++i) {
    x[i] = prod * std::cos(t[i]);
    prod *= std::sin(t[i]);
  }
  x[p] = prod;
  return x;
}

Eigen::MatrixXd sphere_tangent(const Eigen::VectorXd& t) {
  const int p = static_cast<int>(t.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(p + 1, p);
  for (int i = 0; i <= p; ++i) {
    const int nsin = (i < p) ? i : p;  // number of leading sin factors in x_i
    for (int k = 0; k < p; ++k) {
      if (k > nsin || (i == p && k == p)) continue;
      double v = 1.0;
      for (int j = 0; j < nsin; ++j) v *= (j == k) ? std::cos(t[j]) : std::sin(t[j]);
      if (i < p) v *= (k == i) ? -std::sin(t[i]) : std::cos(t[i]);
      d(i, k) = v;
    }
  }
  return d;
}

}  // namespace

LegendrianMap geodesic_sphere(int p) {
  if (p < 0) throw std::invalid_argument("geodesic_sphere: p >= 0");
  LegendrianMap m;
  m.domain_dim = p;
  m.ambient_complex_dim = p + 1;
  if (p == 0) {
    m.eval = [](const Eigen::VectorXd&) {
      Eigen::VectorXcd z(1);
      z[0] = 1.0;
      return z;
    };
    m.tangent = [](const Eigen::VectorXd&) { return Eigen::MatrixXcd(1, 0); };
    return m;
  }
  m.eval = [](const Eigen::VectorXd& t) {
    return sphere_point(t).cast<Complex>().eval();
  };
  m.tangent = [](const Eigen::VectorXd& t) {
    return sphere_tangent(t).cast<Complex>().eval();
  };
  return m;
}

LegendrianMap great_circle() {
  LegendrianMap m;
  m.domain_dim = 1;
  m.ambient_complex_dim = 2;
  const double inv = 1.0 / std::sqrt(2.0);
  m.eval = [inv](const Eigen::VectorXd& t) {
    Eigen::VectorXcd z(2);
    z[0] = inv * std::polar(1.0, t[0]);
    z[1] = inv * std::polar(1.0, -t[0]);
    return z;
  };
  m.tangent = [inv](const Eigen::VectorXd& t) {
    Eigen::MatrixXcd d(2, 1);
    d(0, 0) = inv * Complex(0, 1) * std::polar(1.0, t[0]);
    d(1, 0) = inv * Complex(0, -1) * std::polar(1.0, -t[0]);
    return d;
  };
  return m;
}

LegendrianMap legendrian_torus(int mm) {
  if (mm < 2) throw std::invalid_argument("legendrian_torus: m >= 2");
  LegendrianMap m;
  m.domain_dim = mm - 1;
  m.ambient_complex_dim = mm;
  const double inv = 1.0 / std::sqrt(static_cast<double>(mm));
  m.eval = [inv, mm](const Eigen::VectorXd& t) {
    Eigen::VectorXcd z(mm);
    double sum = 0.0;
    for (int i = 0; i < mm - 1; ++i) {
      z[i] = inv * std::polar(1.0, t[i]);
      sum += t[i];
    }
    z[mm - 1] = inv * std::polar(1.0, -sum);
    return z;
  };
  m.tangent = [inv, mm](const Eigen::VectorXd& t) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(mm, mm - 1);
    double sum = 0.0;
    for (int i = 0; i < mm - 1; ++i) sum += t[i];
    const Complex last = inv * Complex(0, -1) * std::polar(1.0, -sum);
    for (int k = 0; k < mm - 1; ++k) {
      d(k, k) = inv * Complex(0, 1) * std::polar(1.0, t[k]);
      d(mm - 1, k) = last;
    }
    return d;
  };
  return m;
}

LegendrianMap hopf_circle() {
  LegendrianMap m;
  m.domain_dim = 1;
  m.ambient_complex_dim = 2;
  m.eval = [](const Eigen::VectorXd& t) {
    Eigen::VectorXcd z(2);
    z[0] = std::polar(1.0, t[0]);
    z[1] = 0.0;
    return z;
  };
  m.tangent = [](const Eigen::VectorXd& t) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 1);
    d(0, 0) = Complex(0, 1) * std::polar(1.0, t[0]);
    return d;
  };
  return m;
}

double legendrian_residual(const LegendrianMap& map, const Eigen::VectorXd& params,
                           int tangent_index) {
  if (tangent_index < 0 || tangent_index >= map.domain_dim)
    throw std::out_of_range("legendrian_residual: tangent index out of range");
  const Eigen::VectorXcd z = map.eval(params);
  const Eigen::VectorXcd v = map.tangent(params).col(tangent_index);
  // <v, Jz> = Im sum v_k conj(z_k)
  return (v.array() * z.conjugate().array()).sum().imag();
}

double legendrian_residual_max(const LegendrianMap& map, const Eigen::VectorXd& params) {
  double worst = 0.0;
  for (int i = 0; i < map.domain_dim; ++i)
    worst = std::max(worst, std::abs(legendrian_residual(map, params, i)));
  return worst;
}

}  // namespace slag::legendrian
