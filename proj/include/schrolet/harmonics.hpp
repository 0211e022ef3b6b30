#pragma once
#include <Eigen/Dense>
#include <vector>

#include "schrolet/util.hpp"

namespace schrolet {

using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

struct EulerZYZ {
  double alpha = 0, beta = 0, gamma = 0;
};

/// Element of SO(2) (angle) or SO(3) (matrix).
struct Rotation {
  int d = 2;
  double angle = 0.0;
  Eigen::Matrix3d M = Eigen::Matrix3d::Identity();

  static Rotation identity(int d);
  static Rotation planar(double phi);
  static Rotation euler(double alpha, double beta, double gamma);
  static Rotation axis_angle(const Eigen::Vector3d& axis, double angle);

  Rotation inverse() const;
  /// z-y-z angles with R = Rz(alpha) Ry(beta) Rz(gamma); alpha + gamma (beta < pi/2) or
  /// alpha - gamma (beta > pi/2) is recovered without the sin(beta) division.
  EulerZYZ euler_angles() const;
  /// Distance to another rotation (angle difference mod 2pi, or max matrix entry).
  double distance(const Rotation& o) const;
};

Rotation operator*(const Rotation& a, const Rotation& b);

struct AngularLabel {
  int d = 2;
  int index = 0;  // n in Z for d = 2, i >= 0 for d = 3
  friend bool operator==(const AngularLabel& a, const AngularLabel& b) { return a.d == b.d && a.index == b.index; }
};

/// Dimension of degree-i spherical harmonics on S^{d-1}.
int dim_h(int d, int i);
/// Dimension of the carrier space of a label: 1 for d = 2, 2i+1 for d = 3.
int label_dim(const AngularLabel& l);

/// Point on S^{d-1}: angle theta for d = 2, unit vector for d = 3.
struct SpherePoint {
  double theta = 0.0;
  Eigen::Vector3d x = Eigen::Vector3d::UnitZ();
  static SpherePoint angle(double t) { return SpherePoint{t, {std::cos(t), std::sin(t), 0.0}}; }
  static SpherePoint unit(const Eigen::Vector3d& v) { return SpherePoint{0.0, v.normalized()}; }
};

/// Orthonormal basis function: e^{in theta}/sqrt(2 pi) (d = 2, m = 0) or Y_i^m without
/// Condon-Shortley phase (d = 3).
cplx sph_basis_eval(const AngularLabel& l, int m, const SpherePoint& s);

/// All Y_i^m, m = -i..i, at one point (coordinate index m + i).
VecC sph_basis_all(int i, const Eigen::Vector3d& x);

double wigner_small_d(int l, int mp, int m, double beta);

/// Matrix of rho_i(R) in the basis above: (rho(R) Y)(s) = Y(R^{-1} s).
MatC rho_matrix(const AngularLabel& l, const Rotation& R);

/// Product rule on S^2: Gauss-Legendre in cos(theta) times uniform phi; weights sum to 4 pi.
struct SphereRule {
  std::vector<Eigen::Vector3d> points;
  std::vector<double> weights;
};
SphereRule sphere_rule(int n_theta, int n_phi);

}  // namespace schrolet
