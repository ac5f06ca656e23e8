#pragma once

#include <functional>

#include "slag/util.hpp"

namespace slag::legendrian {

/// A parameterized immersion into an odd sphere S^{2m-1} in C^m, with its
/// coordinate tangent basis. eval returns a unit vector; tangent returns the
/// m x k matrix of partial derivatives.
struct LegendrianMap {
  int domain_dim = 0;          // k
  int ambient_complex_dim = 1; // m
  std::function<Eigen::VectorXcd(const Eigen::VectorXd&)> eval;
  std::function<Eigen::MatrixXcd(const Eigen::VectorXd&)> tangent;
};

// Totally geodesic S^p in S^{2p+1}, image in the real subspace R^{p+1}.
// p = 0 returns the component eval == 1.
LegendrianMap geodesic_sphere(int p);

// t -> (e^{it}, e^{-it})/sqrt(2), the minimal Legendrian great circle in S^3.
LegendrianMap great_circle();

// Flat (m-1)-torus in S^{2m-1}: (1/sqrt m)(e^{i t1},...,e^{i t_{m-1}}, e^{-i sum}).
LegendrianMap legendrian_torus(int m);

// Hopf-fiber circle t -> (e^{it}, 0): NOT Legendrian; negative control.
LegendrianMap hopf_circle();

// <t_i, Jz> at z = eval(params); vanishes iff the sampled direction is
// Legendrian.
double legendrian_residual(const LegendrianMap& map, const Eigen::VectorXd& params,
                           int tangent_index);

// Max |<t_i, Jz>| over all tangent indices at params.
double legendrian_residual_max(const LegendrianMap& map, const Eigen::VectorXd& params);

}  // namespace slag::legendrian
