#include <doctest.h>

#include <random>

#include "schrolet/continuous.hpp"
#include "schrolet/frame.hpp"

using namespace schrolet;

namespace {

double bump(double t) { return std::abs(t) < 1 ? std::exp(-1 / (1 - t * t)) : 0.0; }

// smooth content on (1/2, 2) for every label
SequenceSignal smooth_signal(const RadialGrid& gr, int nmax, const std::vector<int>& only = {}) {
  auto f = SequenceSignal::labels_2d(gr, nmax);
  for (std::size_t l = 0; l < f.labels.size(); ++l) {
    int n = f.labels[l].index;
    if (!only.empty() && std::find(only.begin(), only.end(), n) == only.end()) continue;
    for (std::size_t q = 0; q < gr.size(); ++q)
      f.comps[l][0][q] = bump((gr.node(q) - 1.25) / 0.75) * cplx(1 + l, 0.5 * l - 1);
  }
  return f;
}

QuadSpec baseline() {
  QuadSpec q;
  q.b_max = 16;
  q.b_step = 0.5;
  q.Q = 8;
  q.p_min = -48;
  q.p_max = 8;
  return q;
}

}  // namespace

TEST_CASE("rotation rules are normalised") {
  for (int d : {2, 3}) {
    auto r = rotation_rule(d, 6);
    double s = 0;
    for (double w : r.w) s += w;
    CHECK(std::abs(s - 1) < 1e-14);
  }
  CHECK_THROWS_AS(rotation_rule(4, 3), Error);
}

TEST_CASE("voice basics") {
  auto gr = make_log_grid(-12, 4, 64);
  auto g = build_generator_2d({}, {}, 2, 3, gr);
  auto eta = generator_signal(g, g.labels);
  CHECK(std::abs(voice(eta, g, GroupElement::identity(2)) - eta.norm_sq()) < 1e-14);

  auto f = smooth_signal(gr, 3);
  GroupElement x{0.7, std::exp2(3.0 / 64), Rotation::planar(0.4)};
  cplx v = voice(f, g, x);
  CHECK(std::abs(std::abs(voice(std::polar(1.0, 1.3) * f, g, x)) - std::abs(v)) < 1e-14);

  auto s = make_sampling_grid(g, -2, 2, 4);
  auto c = analyze(f, g, s);
  CHECK(std::abs(voice(f, g, s.point(g.F, 1, -3, 1)) - c.at(1, -3, 1)) < 1e-12);
}

TEST_CASE("voice covariance") {
  auto gr = make_log_grid(-14, 6, 32);
  auto g = build_generator_2d({}, {}, 1, 3, gr);
  auto f = smooth_signal(gr, 3);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-1, 1);
  std::uniform_int_distribution<int> P(-40, 40);
  for (int t = 0; t < 10; ++t) {
    GroupElement x{U(rng), std::exp2(P(rng) / 32.0), Rotation::planar(3 * U(rng))};
    GroupElement y{U(rng), std::exp2(P(rng) / 32.0), Rotation::planar(3 * U(rng))};
    auto fy = pi_prime_apply(y, f);
    REQUIRE(fy.dropped_mass == 0.0);
    CHECK(std::abs(voice(fy.f, g, x) - voice(f, g, mult(inverse(y), x))) <= 1e-11);
  }
}

TEST_CASE("reproducing identity converges") {
  auto gr = make_log_grid(-12, 4, 64);
  ProfileSpec p;
  p.mode = ConstantMode::continuous;
  auto g = build_generator_2d(p, {}, 1, 2, gr);
  auto f = smooth_signal(gr, 2);
  auto r = reproducing_refinement(f, g, baseline(), 3);
  CHECK(r.error[0] <= 1e-2);
  REQUIRE(r.reduction.size() == 2);
  for (double red : r.reduction) CHECK(red >= 3.0);
  auto rep = reproducing_check(f, g, baseline());
  CHECK(rep.dilation_loss == 0.0);

  SequenceSignal zero = SequenceSignal::labels_2d(gr, 2);
  CHECK(reproducing_check(zero, g, baseline()).estimate == 0.0);

  // component integral 2 scales the identity on that component
  p.scale = std::sqrt(2.0);
  auto g2 = build_generator_2d(p, {}, 1, 2, gr);
  auto single = smooth_signal(gr, 2, {0});
  auto r2 = reproducing_check(single, g2, baseline());
  CHECK(std::abs(r2.ratio - 2) <= 2e-2);

  QuadSpec narrow = baseline();
  narrow.p_min = -4;
  CHECK(reproducing_check(f, g, narrow).dilation_loss > 0.0);
}

TEST_CASE("Weil constant") {
  auto sep = [](double a, const Rotation&) { return bump(std::log2(a) / 2); };
  auto rot2 = [](double a, const Rotation& R) { return bump(std::log2(a) / 2 - 0.3) * (1.5 + std::cos(R.angle)); };
  auto rot3 = [](double a, const Rotation& R) { return bump(std::log2(a) / 2.5) * (2 + R.M(2, 2) + 0.5 * R.M(0, 1)); };
  WeilSpec s2;
  WeilSpec s3;
  s3.d = 3;
  s3.rotations = 8;
  for (auto [fn, spec] : {std::pair<HFunction, WeilSpec>{sep, s2}, {rot2, s2}, {rot3, s3}}) {
    auto r = weil_constant(fn, spec);
    CHECK(std::abs(r.C - 1) <= 1e-3);
    auto scaled = weil_constant([&](double a, const Rotation& R) { return 5 * fn(a, R); }, spec);
    CHECK(std::abs(scaled.C - r.C) <= 1e-12);
    // refinement: error drops by 3x per level until it reaches rounding
    WeilSpec fine = spec;
    double e = std::abs(r.C - 1);
    for (int level = 0; level < 2; ++level) {
      fine.n *= 2;
      double e1 = std::abs(weil_constant(fn, fine).C - 1);
      CHECK(e1 * 3 <= e);
      e = e1;
    }
  }
  CHECK_THROWS_AS(weil_constant([](double, const Rotation&) { return 0.0; }, s2), Error);
}
