#include <doctest.h>

#include <cmath>
#include <random>

#include "schrolet/radial.hpp"

using namespace schrolet;
using namespace std::complex_literals;

TEST_CASE("log grid nodes") {
  auto g = make_log_grid(-1, 0, 1);
  REQUIRE(g.size() == 2);
  CHECK(g.node(0) == 0.5);
  CHECK(g.node(1) == 1.0);
  auto h = make_log_grid(-2, 2, 8);
  CHECK(h.size() == 33);
  CHECK(h.node(8) / h.node(0) == 2.0);
  for (std::size_t p = 0; p + 1 < h.size(); ++p) CHECK(h.node(p + 1) > h.node(p));
  CHECK_THROWS(make_log_grid(0, -1, 4));
  CHECK_THROWS(make_log_grid(-1, 0, 0));
}

TEST_CASE("grid weights integrate d omega") {
  auto g = make_log_grid(-1, 0, 64);
  auto one = RadialFunction::from_fn(g, [](double) { return cplx(1.0); });
  // trapezoid-free sum with full weight at both ends: endpoint excess is half a weight each side
  double s = norm_sq(one);
  double excess = 0.5 * (g.weight(0) + g.weight(g.size() - 1));
  CHECK(std::abs(s - excess - 0.5) < 1e-4);
  CHECK(std::abs(norm_sq(one, Measure::domega_over_omega) - kLn2 - kLn2 / 64) < 1e-12);
}

TEST_CASE("indicator norms") {
  auto g = make_log_grid(-4, 2, 64);
  auto chi = indicator(g, Dyadic::pow2(-1), Dyadic::pow2(0));
  CHECK(std::abs(norm_sq(chi, Measure::domega_over_omega) - kLn2) < 1e-12);
  double d = norm_sq(chi);
  CHECK(std::abs(d - 0.5) < 0.5 * kLn2 / 64 + 1e-12);
  RadialFunction zero(g);
  CHECK(inner(zero, chi) == cplx(0.0));
  CHECK_THROWS(inner(chi, RadialFunction(make_log_grid(-4, 2, 32))));
}

TEST_CASE("quadrature converges for smooth integrands") {
  auto err = [](int Q) {
    auto g = make_log_grid(-3, 2, Q);
    auto f = RadialFunction::from_fn(g, [](double w) { return cplx(w * std::exp(-w)); });
    // trapezoid in u: remove half weight at the ends
    double s = norm_sq(f) - 0.5 * (g.weight(0) * std::norm(f[0]) + g.weight(g.size() - 1) * std::norm(f[g.size() - 1]));
    auto F = [](double w) { return -std::exp(-2 * w) * (2 * w * w + 2 * w + 1) / 4.0; };
    return std::abs(s - (F(4.0) - F(0.125)));
  };
  for (int Q : {4, 8, 16}) CHECK(err(Q) / err(2 * Q) >= 3.5);
}

TEST_CASE("wplus") {
  auto g = make_log_grid(-6, 3, 16);
  std::mt19937 rng(7);
  std::normal_distribution<double> nd;
  auto f = RadialFunction::from_fn(g, [&](double w) {
    return w > 0.1 && w < 2.0 ? cplx(nd(rng), nd(rng)) : cplx(0.0);
  });
  auto id = wplus(0.0, 0, f);
  CHECK(!id.truncated());
  for (std::size_t p = 0; p < g.size(); ++p) CHECK(id.f[p] == f[p]);

  auto chi = indicator(g, Dyadic::pow2(-1), Dyadic::pow2(0));
  auto d = wplus(0.0, 16, chi);
  auto ref = indicator(g, Dyadic::pow2(-2), Dyadic::pow2(-1), std::sqrt(2.0));
  for (std::size_t p = 0; p < g.size(); ++p) CHECK(std::abs(d.f[p] - ref[p]) < 1e-15);

  for (int p : {-20, -3, 0, 5, 17}) {
    auto r = wplus(0.37, p, f);
    CHECK(!r.truncated());
    CHECK(std::abs(norm_sq(r.f) - norm_sq(f)) < 1e-12 * norm_sq(f));
  }
  // composition law
  double b1 = 0.41, b2 = -1.3;
  int p1 = 7, p2 = -11;
  auto lhs = wplus(b1, p1, wplus(b2, p2, f).f).f;
  auto rhs = wplus(b1 + std::exp2(p1 / 16.0) * b2, p1 + p2, f).f;
  for (std::size_t p = 0; p < g.size(); ++p) CHECK(std::abs(lhs[p] - rhs[p]) < 1e-12);

  auto off = wplus(0.0, 60, f);
  CHECK(off.truncated());
  CHECK(off.dropped_mass > 0.0);
}

TEST_CASE("band coefficients") {
  const int Q = 256, K = 40;
  auto g = make_log_grid(-8, 4, Q);
  for (int j : {-2, 0, 3}) {
    std::mt19937 rng(11 + j);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<cplx> a(5);
      for (auto& x : a) x = cplx(nd(rng), nd(rng));
      auto f = RadialFunction::from_fn(g, [&](double w) {
        cplx s = 0.0;
        for (int m = 0; m < 5; ++m) s += a[m] * std::polar(1.0, 2 * kPi * (m - 2) * w * std::ldexp(1.0, j));
        return s * std::exp(-w * std::ldexp(1.0, j));
      });
      cplx c = 0.7 - 0.2i;
      auto fast = band_coeffs_shannon(f, j, K, c);
      auto phi = indicator(g, Dyadic::pow2(-1), Dyadic::pow2(0), c);
      for (int k = -K; k <= K; k += 13) {
        auto w = wplus(std::ldexp(1.0, j) * k, j * Q, phi);
        CHECK(std::abs(fast[k + K] - inner(f, w.f)) < 1e-10);
      }
    }
  }
  auto chi = indicator(g, Dyadic::pow2(-1), Dyadic::pow2(0));
  auto s = band_coeffs_shannon(chi, 0, 4, 1.0);
  CHECK(std::abs(s[4] - 0.5) < 1.0 / Q);
  auto zero = band_coeffs_shannon(RadialFunction(g), 0, 4);
  for (auto v : zero) CHECK(v == cplx(0.0));
  CHECK_THROWS(band_coeffs_shannon(chi, 20, 4));
}

TEST_CASE("band coefficients orthogonality") {
  const int Q = 512;
  auto g = make_log_grid(-3, 2, Q);
  int j = 0, k0 = 3;
  auto f = RadialFunction::from_fn(g, [&](double w) { return std::polar(1.0, 2 * kPi * k0 * w); });
  auto s = band_coeffs_shannon(f, j, 10);
  // nonuniform nodes: orthogonality holds for the exact integral; compare to the closed form
  for (int k = -10; k <= 10; ++k) {
    int m = k0 + k;
    cplx exact = m == 0 ? cplx(0.5) : (std::polar(1.0, 2 * kPi * m * 1.0) - std::polar(1.0, 2 * kPi * m * 0.5)) / (2i * kPi * double(m));
    CHECK(std::abs(s[k + 10] - exact) < 2.0 / Q);
  }
}

TEST_CASE("lagrange eval") {
  auto g = make_log_grid(-2, 2, 32);
  auto f = RadialFunction::from_fn(g, [](double w) { return cplx(std::sin(w), w * w); });
  for (double w : {0.3, 0.77, 1.234, 3.9}) CHECK(std::abs(f.eval(w) - cplx(std::sin(w), w * w)) < 1e-10);
  CHECK(f.eval(10.0) == cplx(0.0));
}
