#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "schrolet/group.hpp"

using namespace schrolet;

TEST_CASE("gram oracle") {
  std::vector<Eigen::VectorXcd> e;
  for (int i = 0; i < 6; ++i) e.push_back(Eigen::VectorXcd::Unit(6, i));
  auto r = oracle::gram_parseval(e);
  CHECK(r.max_residual == 0.0);
  CHECK(r.op_residual == 0.0);

  auto g = build_generator_2d({}, {}, 1, 2, make_log_grid(-8, 3, 8));
  const Slot* s0 = nullptr;
  for (const auto& s : g.slots)
    if (s.n == 0) s0 = &s;
  REQUIRE(s0);
  auto v = oracle::band_slice(*s0, 2, 64, -64, 128);
  auto full = oracle::gram_parseval(v);
  CHECK(full.dim == 64);
  CHECK(full.max_residual <= 1e-10);
  double n2 = v[5].squaredNorm();
  v.erase(v.begin() + 5);
  auto cut = oracle::gram_parseval(v);
  CHECK(cut.op_residual >= n2 - 1e-12);

  std::vector<Eigen::VectorXcd> big(2001, Eigen::VectorXcd::Zero(2));
  CHECK_THROWS(oracle::gram_parseval(big));
}

TEST_CASE("polynomial harmonic representation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-3, 3);
  for (int i = 0; i <= 4; ++i) {
    AngularLabel l{3, i};
    auto A = Rotation::euler(U(rng), std::abs(U(rng)), U(rng));
    auto B = Rotation::euler(U(rng), std::abs(U(rng)), U(rng));
    auto RA = oracle::harmonic_poly_rep(l, A.M), RB = oracle::harmonic_poly_rep(l, B.M);
    auto RAB = oracle::harmonic_poly_rep(l, (A * B).M);
    CHECK((RA * RB - RAB).cwiseAbs().maxCoeff() < 1e-10);
    // independent realisation has the same character as the Wigner one
    CHECK(std::abs(RA.trace() - rho_matrix(l, A).trace()) < 1e-10);
  }
  auto r = oracle::harmonic_poly_rep({2, -3}, Rotation::planar(0.4).M);
  CHECK(std::abs(r(0, 0) - std::polar(1.0, 1.2)) < 1e-12);
}

TEST_CASE("brute multiplicities match") {
  auto c2 = make_finite_subgroup(SubgroupKind::cyclic3d_z, 2);
  auto m = oracle::brute_multiplicity(c2, {3, 2});
  CHECK(m.at(c2.irreps[0].label) == 3);
  CHECK(m.at(c2.irreps[1].label) == 2);
  auto d3 = make_finite_subgroup(SubgroupKind::dihedral3d, 3);
  auto md = oracle::brute_multiplicity(d3, {3, 1});
  int ones = 0, twos = 0;
  for (const auto& ir : d3.irreps) {
    if (ir.dim == 1) ones += md.at(ir.label);
    if (ir.dim == 2) twos += md.at(ir.label);
  }
  CHECK(ones == 1);
  CHECK(twos == 1);
  auto triv = make_finite_subgroup(SubgroupKind::cyclic3d_z, 1);
  CHECK(oracle::brute_multiplicity(triv, {3, 3}).at(triv.irreps[0].label) == 7);
  for (int L = 1; L <= 4; ++L) {
    auto F = make_finite_subgroup(SubgroupKind::cyclic2d, L);
    for (int n = -4; n <= 4; ++n) {
      auto main = multiplicities(F, {2, n});
      auto br = oracle::brute_multiplicity(F, {2, n});
      for (std::size_t c = 0; c < F.irreps.size(); ++c) CHECK(main[c] == br.at(F.irreps[c].label));
    }
  }
}

TEST_CASE("direct series oracle") {
  auto g1 = build_generator_2d({}, {}, 1, 4, make_log_grid(-14, 6, 32));
  for (const auto& s : g1.slots)
    if (s.n == 0) {
      CHECK(oracle::direct_dilation_sum(s, 0.7) == std::norm(s.c));
      CHECK(oracle::direct_dilation_sum(s, 0.0) == 0.0);
    }
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> U(-10, 3);
  std::vector<double> w;
  for (int i = 0; i < 200; ++i) w.push_back(std::exp2(U(rng)));
  for (int L : {1, 2, 4}) {
    auto g = build_generator_2d({}, {}, L, 4, make_log_grid(-14, 6, 32));
    auto main = check_discrete_conditions(g);
    for (const auto& r : main) {
      auto res = oracle::direct_series_check(g, r.id, w);
      double mx = *std::max_element(res.begin(), res.end());
      INFO(r.id << " L=" << L);
      CHECK(std::abs(mx - r.max_residual) <= 1e-12);
    }
  }
  CHECK_THROWS(oracle::direct_series_check(g1, "nonsense", w));
}
