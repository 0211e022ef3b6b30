#include <doctest.h>

#include <random>

#include "schrolet/rep.hpp"

using namespace schrolet;

namespace {

CartesianSignal gaussian2d(int N, double Xi, Eigen::Vector3d c, double s0, double s1, double k0) {
  return CartesianSignal::from_fn(2, N, Xi, [&](const Eigen::Vector3d& x) {
    double a = (x(0) - c(0)) / s0, b = (x(1) - c(1)) / s1;
    return std::exp(-0.5 * (a * a + b * b)) * std::polar(1.0, k0 * x(0));
  });
}

double max_diff(const CartesianSignal& a, const CartesianSignal& b) {
  double e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a.values[i] - b.values[i]));
  return e;
}

SequenceSignal random_sequence(std::mt19937& rng, int d, const RadialGrid& g, int lmax) {
  auto f = d == 2 ? SequenceSignal::labels_2d(g, lmax) : SequenceSignal::labels_3d(g, lmax);
  std::normal_distribution<double> nd;
  for (auto& c : f.comps)
    for (auto& rf : c)
      for (std::size_t p = 0; p < g.size(); ++p) {
        double w = g.node(p);
        if (w > 0.05 && w < 2.0) rf[p] = cplx(nd(rng), nd(rng));
      }
  return f;
}

}  // namespace

TEST_CASE("propagator") {
  auto f = gaussian2d(128, 6.0, {0.4, -0.2, 0}, 1.0, 0.7, 1.5);
  CHECK(max_diff(propagate(f, 0.0), f) == 0.0);
  for (double b : {0.3, -2.0, 17.5}) CHECK(std::abs(propagate(f, b).norm_sq() - f.norm_sq()) <= 1e-13 * f.norm_sq());
  CHECK(max_diff(propagate(propagate(f, 0.3), 0.7), propagate(f, 1.0)) <= 1e-13);
  auto g = f;
  for (int s = 0; s < 100; ++s) g = propagate(g, 0.01);
  CHECK(std::abs(g.norm_sq() - f.norm_sq()) <= 1e-12 * f.norm_sq());
}

TEST_CASE("pi hat") {
  auto f = gaussian2d(256, 8.0, {0, 0, 0}, 1.0, 1.0, 0.0);
  CHECK(max_diff(pi_hat_apply(GroupElement::identity(2), f), f) < 1e-14);
  auto r = pi_hat_apply({0.0, 1.0, Rotation::planar(0.77)}, f, 8);
  CHECK(max_diff(r, f) < 1e-9);
  // group law against the Cartesian representation
  auto h = gaussian2d(256, 8.0, {0.3, 0.1, 0}, 0.8, 0.6, 0.0);
  GroupElement x{0.2, std::exp2(0.25), Rotation::planar(0.4)}, y{-0.1, std::exp2(-0.5), Rotation::planar(-1.1)};
  auto lhs = pi_hat_apply(x, pi_hat_apply(y, h, 8), 8);
  auto rhs = pi_hat_apply(mult(x, y), h, 8);
  CHECK(max_diff(lhs, rhs) < 1e-6);
  CHECK_THROWS(pi_hat_apply({0.0, 1.0 / 16, Rotation::identity(2)}, gaussian2d(64, 4.0, {0, 0, 0}, 1.5, 1.5, 0.0)));
}

TEST_CASE("pi prime") {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> pi(-8, 8);
  for (int d : {2, 3}) {
    auto g = make_log_grid(-10, 6, 8);
    auto f = random_sequence(rng, d, g, d == 2 ? 3 : 3);
    auto id = pi_prime_apply(GroupElement::identity(d), f);
    CHECK(max_abs_diff(id.f, f) == 0.0);
    for (int t = 0; t < 200; ++t) {
      auto rot = [&]() { return d == 2 ? Rotation::planar(3 * u(rng)) : Rotation::euler(3 * u(rng), 1.5 * (u(rng) + 1), 3 * u(rng)); };
      GroupElement x{u(rng), std::exp2(pi(rng) / 8.0), rot()}, y{u(rng), std::exp2(pi(rng) / 8.0), rot()};
      auto lhs = pi_prime_apply(x, pi_prime_apply(y, f).f);
      auto rhs = pi_prime_apply(mult(x, y), f);
      CHECK(max_abs_diff(lhs.f, rhs.f) <= 1e-11 * std::sqrt(f.norm_sq()));
      CHECK(rhs.dropped_mass == 0.0);
      CHECK(std::abs(rhs.f.norm_sq() - f.norm_sq()) <= 1e-12 * f.norm_sq());
    }
  }
  auto g = make_log_grid(-4, 4, 4);
  auto f = SequenceSignal::labels_2d(g, 2);
  for (std::size_t p = 0; p < g.size(); ++p)
    for (auto& c : f.comps) c[0][p] = 1.0;
  auto r = pi_prime_apply({0.0, 1.0, Rotation::planar(0.3)}, f).f;
  for (std::size_t l = 0; l < f.labels.size(); ++l)
    CHECK(std::abs(r.comps[l][0][5] - std::polar(1.0, -f.labels[l].index * 0.3)) < 1e-15);
}

TEST_CASE("S adapter") {
  auto grid = make_log_grid(-30, 7, 32);
  auto f = gaussian2d(256, 8.0, {0, 0, 0}, 1.0, 1.0, 0.0);
  AdapterOptions o8;
  o8.order = 8;
  auto s = to_sequence(f, grid, SequenceSignal::labels_2d(grid, 4).labels, o8);
  for (std::size_t l = 0; l < s.labels.size(); ++l) {
    if (s.labels[l].index == 0) continue;
    double m = 0;
    for (auto v : s.comps[l][0].values) m = std::max(m, std::abs(v));
    CHECK(m <= 1e-9);
  }
  // 3D: xi_1/|xi| times a radial profile lives in H_1 only
  auto prof = [](double r) { return std::exp(-r * r); };
  auto g3 = make_log_grid(-20, 4, 16);
  auto s3 = to_sequence([&](const Eigen::Vector3d& x) { return cplx(x(0) / x.norm() * prof(x.norm())); }, 3, g3,
                        SequenceSignal::labels_3d(g3, 3).labels);
  for (std::size_t l = 0; l < s3.labels.size(); ++l) {
    double m = 0;
    for (const auto& rf : s3.comps[l])
      for (auto v : rf.values) m = std::max(m, std::abs(v));
    if (s3.labels[l].index == 1)
      CHECK(m > 0.1);
    else
      CHECK(m <= 1e-8);
  }
  // unitarity of J on a 512^2 grid
  auto big = gaussian2d(512, 5.0, {0.5, 0.3, 0}, 0.9, 0.6, 2.0);
  auto labels = SequenceSignal::labels_2d(grid, 40).labels;
  auto sb = to_sequence(big, grid, labels);
  CHECK(std::abs(std::sqrt(sb.norm_sq() / big.norm_sq()) - 1) <= 1e-6);
  // round trip
  auto back = from_sequence(sb, 128, 4.0);
  auto ref = gaussian2d(128, 4.0, {0.5, 0.3, 0}, 0.9, 0.6, 2.0);
  double e = 0;
  for (std::size_t i = 0; i < back.size(); ++i) e = std::max(e, std::abs(back.values[i] - ref.values[i]));
  CHECK(e < 1e-5);
  CHECK_THROWS(to_sequence(gaussian2d(32, 8.0, {0.5, 0.3, 0}, 0.9, 0.6, 2.0), grid, labels));
}

TEST_CASE("intertwining spot check") {
  auto grid = make_log_grid(-30, 7, 32);
  auto f = gaussian2d(512, 5.0, {0.5, 0.3, 0}, 0.9, 0.6, 2.0);
  auto labels = SequenceSignal::labels_2d(grid, 40).labels;
  auto sf = to_sequence(f, grid, labels);
  for (GroupElement x : {GroupElement{0.0, 1.0, Rotation::planar(0.6)}, GroupElement{0.35, 1.0, Rotation::identity(2)}}) {
    auto lhs = to_sequence(pi_hat_apply(x, f, 6), grid, labels);
    auto rhs = pi_prime_apply(x, sf).f;
    CHECK(max_abs_diff(lhs, rhs) <= 1e-5);
  }
}

TEST_CASE("disintegration") {
  auto bump = [](const Eigen::Vector3d& x) {
    Eigen::Vector3d c(0.2, -0.1, 0.05);
    double r2 = (x - c).squaredNorm();
    return r2 < 1 ? std::exp(-1 / (1 - r2)) * (1 + x(0)) : 0.0;
  };
  for (int d : {2, 3}) {
    auto rep = disintegration_check([&](const Eigen::Vector3d& x) {
      Eigen::Vector3d y = x;
      if (d == 2) y(2) = 0;
      return bump(y);
    }, d, 1.5, 128);
    CHECK(rep.rel_error() < 1e-6);
  }
}
