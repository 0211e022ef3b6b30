#pragma once
#include <functional>
#include <vector>

#include "schrolet/group.hpp"
#include "schrolet/radial.hpp"

namespace schrolet {

/// Samples of f^ on the cell-centred grid xi_q = (q - (N-1)/2) h, h = 2 Xi / N, in [-Xi, Xi]^d.
struct CartesianSignal {
  int d = 2;
  int N = 0;
  double Xi = 1.0;
  std::vector<cplx> values;  // row-major, last axis fastest

  CartesianSignal() = default;
  CartesianSignal(int d_, int N_, double Xi_);
  double h() const { return 2 * Xi / N; }
  double coord(int q) const { return (q - (N - 1) / 2.0) * h(); }
  std::size_t size() const { return values.size(); }
  Eigen::Vector3d point(std::size_t idx) const;  // unused trailing coordinates are 0
  double norm_sq() const;
  /// Tensor Lagrange interpolation with `order` points per axis; 0 outside the grid.
  cplx interp(const Eigen::Vector3d& xi, int order) const;

  template <class F>
  static CartesianSignal from_fn(int d, int N, double Xi, F&& fn) {
    CartesianSignal s(d, N, Xi);
    for (std::size_t i = 0; i < s.size(); ++i) s.values[i] = fn(s.point(i));
    return s;
  }
};

/// Multiplier e^{-2 pi i b xi.xi}.
CartesianSignal propagate(const CartesianSignal& f, double b);

/// pi^(b,a,R) f(xi) = a^{d/4} e^{-2 pi i b xi.xi} f(a^{1/2} R^{-1} xi), interpolated with
/// `order` points per axis (2 = multilinear). Throws if more than `loss_tol` relative mass
/// of f is pushed off the grid.
CartesianSignal pi_hat_apply(const GroupElement& x, const CartesianSignal& f, int order = 2, double loss_tol = 1e-10);

/// Element of (+)_i L^2(R+, H_i): per label, label_dim radial coordinates.
struct SequenceSignal {
  int d = 2;
  RadialGrid grid;
  std::vector<AngularLabel> labels;
  std::vector<std::vector<RadialFunction>> comps;

  SequenceSignal() = default;
  SequenceSignal(int d_, const RadialGrid& g, std::vector<AngularLabel> ls);
  static SequenceSignal labels_2d(const RadialGrid& g, int nmax);  // n in [-nmax, nmax]
  static SequenceSignal labels_3d(const RadialGrid& g, int imax);  // i in [0, imax]

  int label_pos(const AngularLabel& l) const;  // -1 if inactive
  double norm_sq() const;
  bool same_shape(const SequenceSignal& o) const;
};

cplx inner(const SequenceSignal& f, const SequenceSignal& g);
SequenceSignal operator+(const SequenceSignal& f, const SequenceSignal& g);
SequenceSignal operator*(cplx s, const SequenceSignal& f);
double max_abs_diff(const SequenceSignal& f, const SequenceSignal& g);

struct PiPrimeResult {
  SequenceSignal f;
  double dropped_mass = 0.0;
};

/// (pi'(b,a,R) f)_i(w) = a^{1/2} e^{-2 pi i b w} rho_i(R) f_i(a w), a on the grid lattice.
PiPrimeResult pi_prime_apply(const GroupElement& x, const SequenceSignal& f);

struct AdapterOptions {
  int order = 6;             // Cartesian interpolation points per axis
  int angular_points = 0;    // 0 = automatic
  bool check_resolution = true;
};

/// S f = (Id (x) P_i) J f^ with J g(w, s) = w^{(d-2)/4} g(sqrt(w) s) / sqrt(2).
SequenceSignal to_sequence(const CartesianSignal& f, const RadialGrid& grid, const std::vector<AngularLabel>& labels,
                           const AdapterOptions& opt = {});
/// Same from an analytic f^ (no Cartesian interpolation).
SequenceSignal to_sequence(const std::function<cplx(const Eigen::Vector3d&)>& f, int d, const RadialGrid& grid,
                           const std::vector<AngularLabel>& labels, int angular_points = 0);
/// Inverse: f^(xi) = sqrt(2) |xi|^{-(d-2)/2} sum_i g_i(|xi|^2) (|xi|^-1 xi).
CartesianSignal from_sequence(const SequenceSignal& g, int N, double Xi);
cplx from_sequence_at(const SequenceSignal& g, const Eigen::Vector3d& xi);

struct DisintegrationReport {
  double cartesian = 0.0;
  double fibred = 0.0;
  double rel_error() const { return std::abs(cartesian - fibred) / std::max(std::abs(cartesian), 1e-300); }
};

/// int phi d xi over [-R, R]^d against int_0^{R^2} (int phi(sqrt(w) s) w^{(d-2)/2}/2 ds) dw.
DisintegrationReport disintegration_check(const std::function<double(const Eigen::Vector3d&)>& phi, int d, double R,
                                          int n = 64);

}  // namespace schrolet
