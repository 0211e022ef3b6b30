#include "schrolet/harmonics.hpp"

#include <cmath>

namespace schrolet {

namespace {

Eigen::Matrix3d rz(double t) {
  Eigen::Matrix3d m;
  m << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
  return m;
}

Eigen::Matrix3d ry(double t) {
  Eigen::Matrix3d m;
  m << std::cos(t), 0, std::sin(t), 0, 1, 0, -std::sin(t), 0, std::cos(t);
  return m;
}

double wrap(double t) {
  t = std::fmod(t, 2 * kPi);
  return t < 0 ? t + 2 * kPi : t;
}

// associated Legendre P_l^m(x), m >= 0, no Condon-Shortley phase
double assoc_legendre(int l, int m, double x) {
  double pmm = 1.0;
  double s = std::sqrt(std::max(0.0, (1 - x) * (1 + x)));
  for (int k = 1; k <= m; ++k) pmm *= (2 * k - 1) * s;
  if (l == m) return pmm;
  double pm1 = x * (2 * m + 1) * pmm;
  if (l == m + 1) return pm1;
  double pl = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pl = (x * (2 * ll - 1) * pm1 - (ll + m - 1) * pmm) / (ll - m);
    pmm = pm1;
    pm1 = pl;
  }
  return pl;
}

}  // namespace

Rotation Rotation::identity(int d) {
  if (d != 2 && d != 3) fail("rotation dimension must be 2 or 3");
  Rotation r;
  r.d = d;
  return r;
}

Rotation Rotation::planar(double phi) {
  Rotation r;
  r.d = 2;
  r.angle = phi;
  r.M = rz(phi);
  return r;
}

Rotation Rotation::euler(double alpha, double beta, double gamma) {
  Rotation r;
  r.d = 3;
  r.M = rz(alpha) * ry(beta) * rz(gamma);
  return r;
}

Rotation Rotation::axis_angle(const Eigen::Vector3d& axis, double angle) {
  Rotation r;
  r.d = 3;
  r.M = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
  return r;
}

Rotation Rotation::inverse() const {
  Rotation r = *this;
  r.angle = -angle;
  r.M = M.transpose();
  return r;
}

Rotation operator*(const Rotation& a, const Rotation& b) {
  if (a.d != b.d) fail("rotation dimension mismatch");
  Rotation r;
  r.d = a.d;
  r.angle = a.angle + b.angle;
  r.M = a.M * b.M;
  return r;
}

EulerZYZ Rotation::euler_angles() const {
  const auto& R = M;
  double sb = std::hypot(R(0, 2), R(1, 2));
  double beta = std::atan2(sb, R(2, 2));
  double gamma = sb == 0.0 ? 0.0 : std::atan2(R(2, 1), -R(2, 0));
  double alpha;
  if (R(2, 2) >= 0)
    alpha = std::atan2(R(1, 0) - R(0, 1), R(0, 0) + R(1, 1)) - gamma;
  else
    alpha = std::atan2(-(R(1, 0) + R(0, 1)), R(1, 1) - R(0, 0)) + gamma;
  return {wrap(alpha), beta, wrap(gamma)};
}

double Rotation::distance(const Rotation& o) const {
  if (d != o.d) fail("rotation dimension mismatch");
  if (d == 2) {
    double t = wrap(angle - o.angle);
    return std::min(t, 2 * kPi - t);
  }
  return (M - o.M).cwiseAbs().maxCoeff();
}

int dim_h(int d, int i) {
  if (d < 2 || i < 0) fail("dim_h: need d >= 2, i >= 0");
  if (i == 0) return 1;
  if (i == 1) return d;
  auto binom = [](int n, int k) {
    if (k < 0 || n < k) return 0LL;
    long long r = 1;
    for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
  };
  return static_cast<int>(binom(d + i - 1, d - 1) - binom(d + i - 3, d - 1));
}

int label_dim(const AngularLabel& l) {
  if (l.d == 2) return 1;
  if (l.d == 3) {
    if (l.index < 0) fail("d=3 label index must be >= 0");
    return 2 * l.index + 1;
  }
  fail("angular label dimension must be 2 or 3");
}

cplx sph_basis_eval(const AngularLabel& l, int m, const SpherePoint& s) {
  if (l.d == 2) {
    if (m != 0) fail("sph_basis_eval: m must be 0 for d=2");
    return std::polar(1.0 / std::sqrt(2 * kPi), l.index * s.theta);
  }
  if (l.d != 3) fail("sph_basis_eval: d must be 2 or 3");
  int i = l.index;
  if (i < 0 || std::abs(m) > i) fail("sph_basis_eval: |m| > i");
  const auto& x = s.x;
  double ct = std::clamp(x(2) / x.norm(), -1.0, 1.0);
  double phi = std::atan2(x(1), x(0));
  int am = std::abs(m);
  double lognorm = 0.5 * (std::log((2 * i + 1) / (4 * kPi)) + std::lgamma(i - am + 1.0) - std::lgamma(i + am + 1.0));
  return std::polar(std::exp(lognorm) * assoc_legendre(i, am, ct), m * phi);
}

VecC sph_basis_all(int i, const Eigen::Vector3d& x) {
  VecC v(2 * i + 1);
  SpherePoint s = SpherePoint::unit(x);
  for (int m = -i; m <= i; ++m) v(m + i) = sph_basis_eval({3, i}, m, s);
  return v;
}

double wigner_small_d(int l, int mp, int m, double beta) {
  if (std::abs(mp) > l || std::abs(m) > l) return 0.0;
  if (beta == 0.0) return mp == m ? 1.0 : 0.0;
  double c = std::cos(beta / 2), s = std::sin(beta / 2);
  double lf = 0.5 * (std::lgamma(l + mp + 1.0) + std::lgamma(l - mp + 1.0) + std::lgamma(l + m + 1.0) + std::lgamma(l - m + 1.0));
  int smin = std::max(0, m - mp), smax = std::min(l + m, l - mp);
  double acc = 0.0;
  for (int k = smin; k <= smax; ++k) {
    double den = std::lgamma(l + m - k + 1.0) + std::lgamma(k + 1.0) + std::lgamma(mp - m + k + 1.0) + std::lgamma(l - mp - k + 1.0);
    double sign = ((mp - m + k) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * std::exp(lf - den) * std::pow(c, 2 * l + m - mp - 2 * k) * std::pow(s, mp - m + 2 * k);
  }
  return acc;
}

MatC rho_matrix(const AngularLabel& l, const Rotation& R) {
  if (l.d != R.d) fail("rho_matrix: dimension mismatch");
  if (l.d == 2) {
    MatC r(1, 1);
    r(0, 0) = std::polar(1.0, -l.index * R.angle);
    return r;
  }
  int i = l.index;
  auto e = R.euler_angles();
  auto sgn = [](int m) { return (m > 0 && m % 2 != 0) ? -1.0 : 1.0; };
  MatC r(2 * i + 1, 2 * i + 1);
  for (int mp = -i; mp <= i; ++mp)
    for (int m = -i; m <= i; ++m)
      r(mp + i, m + i) = sgn(mp) * sgn(m) * wigner_small_d(i, mp, m, e.beta) * std::polar(1.0, -(mp * e.alpha + m * e.gamma));
  return r;
}

SphereRule sphere_rule(int n_theta, int n_phi) {
  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);
  SphereRule r;
  for (int a = 0; a < n_theta; ++a) {
    double st = std::sqrt(std::max(0.0, 1 - x[a] * x[a]));
    for (int b = 0; b < n_phi; ++b) {
      double ph = 2 * kPi * b / n_phi;
      r.points.emplace_back(st * std::cos(ph), st * std::sin(ph), x[a]);
      r.weights.push_back(w[a] * 2 * kPi / n_phi);
    }
  }
  return r;
}

}  // namespace schrolet
