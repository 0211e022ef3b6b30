// One PASS/FAIL line per acceptance criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "schrolet/continuous.hpp"
#include "schrolet/frame.hpp"

using namespace schrolet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3e", x);
  return b;
}

std::string fixed(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.12f", x);
  return b;
}

int failures = 0;

void run(const std::string& name, const std::function<Outcome()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %-34s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), sec);
  std::fflush(stdout);
}

double bump(double t) { return std::abs(t) < 1 ? std::exp(-1 / (1 - t * t)) : 0.0; }

Outcome parseval_2d() {
  double worst = 0;
  int signals = 0;
  std::size_t content = 0;
  std::mt19937_64 rng(101);
  for (int L : {1, 2, 4}) {
    auto g = build_generator_2d({}, {}, L, 8, make_log_grid(-24, 7, 128));
    auto s = make_sampling_grid(g, -6, 6, 32);
    for (int r = 0; r < 20; ++r) {
      auto ts = band_test_signal(g, s, rng);
      content = ts.content_slots.size();
      auto rep = parseval_report(ts.f, g, s);
      if (rep.tail_bound > 1e-12) return {false, "signal not covered, tail " + sci(rep.tail_bound)};
      worst = std::max(worst, std::abs(rep.ratio - 1));
      ++signals;
    }
  }
  return {worst <= 1e-8, "max |ratio-1| = " + sci(worst) + " over " + std::to_string(signals) + " signals, " +
                             std::to_string(content) + " content slots (tol 1e-8)"};
}

Outcome parseval_3d() {
  double worst = 0;
  std::string slots;
  std::mt19937_64 rng(202);
  AlphaSpec a;
  a.rule = AlphaRule::bijection;
  auto grid = make_log_grid(-29, 5, 1024);
  for (auto F : {make_finite_subgroup(SubgroupKind::cyclic3d_z, 2), make_finite_subgroup(SubgroupKind::dihedral3d, 3)}) {
    auto g = build_generator_general({}, a, F, 4, grid);
    auto s = make_sampling_grid(g, -4, 4, 256);
    for (int r = 0; r < 10; ++r) {
      auto ts = band_test_signal(g, s, rng);
      auto rep = parseval_report(ts.f, g, s);
      if (rep.tail_bound > 1e-12) return {false, "signal not covered, tail " + sci(rep.tail_bound)};
      worst = std::max(worst, std::abs(rep.ratio - 1));
      if (r == 0) slots += (slots.empty() ? "" : "/") + std::to_string(ts.content_slots.size());
    }
  }
  return {worst <= 1e-6, "max |ratio-1| = " + sci(worst) + " over 20 signals, content slots " + slots + " (tol 1e-6)"};
}

Outcome orthonormality_l1() {
  auto g = build_generator_2d({}, {}, 1, 20, make_log_grid(-46, 8, 4));
  double nexact = std::abs(g.norm_sq_exact(true) - 1);
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> J(-6, 6), K(-40, 40);
  double off = 0, nrm = 0;
  int pairs = 0;
  while (pairs < 50) {
    int j1 = J(rng), k1 = K(rng), j2 = J(rng), k2 = K(rng);
    if (j1 == j2 && k1 == k2) continue;
    ++pairs;
    off = std::max(off, std::abs(frame_inner_exact(g, j1, k1, 0, j2, k2, 0)));
    nrm = std::max(nrm, std::abs(frame_inner_exact(g, j1, k1, 0, j1, k1, 0) - 1.0));
  }
  bool ok = nexact <= 1e-12 && off <= 1e-8 && nrm <= 1e-10;
  return {ok, "| ||eta||^2 - 1 | = " + sci(nexact) + ", max |<psi,psi'>| = " + sci(off) + ", max |norm-1| = " + sci(nrm)};
}

Outcome reproducing_identity() {
  auto gr = make_log_grid(-12, 4, 64);
  ProfileSpec p;
  p.mode = ConstantMode::continuous;
  auto g = build_generator_2d(p, {}, 1, 2, gr);
  auto f = SequenceSignal::labels_2d(gr, 2);
  for (std::size_t l = 0; l < f.labels.size(); ++l)
    for (std::size_t q = 0; q < gr.size(); ++q)
      f.comps[l][0][q] = bump((gr.node(q) - 1.25) / 0.75) * cplx(1 + l, 0.5 * l - 1);
  QuadSpec q;
  q.b_max = 16;
  q.b_step = 0.5;
  q.Q = 8;
  q.p_min = -48;
  q.p_max = 8;
  auto r = reproducing_refinement(f, g, q, 3);
  bool ok = r.error[0] <= 1e-2 && r.reduction[0] >= 3 && r.reduction[1] >= 3;
  return {ok, "ratio-1 = " + sci(r.ratio[0] - 1) + " at baseline, reductions " + sci(r.reduction[0]) + ", " +
                  sci(r.reduction[1]) + " (need >= 3)"};
}

Outcome admissibility() {
  auto gr = make_log_grid(-40, 4, 32);
  ProfileSpec p;
  p.mode = ConstantMode::continuous;
  double worst = 0;
  bool ok = true;
  for (int L : {1, 2, 4}) {
    auto r = check_continuous_admissibility(build_generator_2d(p, {}, L, 8, gr), 1.0, 1e-10);
    worst = std::max(worst, r.max_residual);
    ok = ok && r.pass;
  }
  AlphaSpec a;
  a.rule = AlphaRule::bijection;
  double worst3 = 0;
  for (auto F : {make_finite_subgroup(SubgroupKind::cyclic3d_z, 2), make_finite_subgroup(SubgroupKind::dihedral3d, 3)}) {
    auto g = build_generator_general({}, a, F, 4, gr);
    auto r = check_continuous_admissibility(g, std::sqrt(g.L / kLn2), 1e-10);
    worst3 = std::max(worst3, r.max_residual);
    ok = ok && r.pass;
  }
  return {ok, "2D component residual " + sci(worst) + ", rescaled 3D residual " + sci(worst3) + " (tol 1e-10)"};
}

Outcome weil() {
  auto sep = [](double a, const Rotation&) { return bump(std::log2(a) / 2); };
  auto rot2 = [](double a, const Rotation& R) { return bump(std::log2(a) / 2 - 0.3) * (1.5 + std::cos(R.angle)); };
  auto rot3 = [](double a, const Rotation& R) { return bump(std::log2(a) / 2.5) * (2 + R.M(2, 2) + 0.5 * R.M(0, 1)); };
  WeilSpec s2, s3;
  s3.d = 3;
  s3.rotations = 8;
  double worst = 0;
  for (auto [fn, s] : {std::pair<HFunction, WeilSpec>{sep, s2}, {rot2, s2}, {rot3, s3}})
    worst = std::max(worst, std::abs(weil_constant(fn, s).C - 1));
  return {worst <= 1e-3, "max |C-1| = " + sci(worst) + " over 3 test functions (tol 1e-3)"};
}

Outcome schur() {
  std::mt19937_64 rng(707);
  std::normal_distribution<double> nd;
  auto rv = [&](int n) {
    VecC v(n);
    for (int i = 0; i < n; ++i) v(i) = cplx(nd(rng), nd(rng));
    return v;
  };
  double cross = 0, same = 0;
  for (auto F : {make_finite_subgroup(SubgroupKind::cyclic2d, 4), make_finite_subgroup(SubgroupKind::cyclic3d_z, 2),
                 make_finite_subgroup(SubgroupKind::dihedral3d, 3)}) {
    std::uniform_int_distribution<int> I(0, static_cast<int>(F.irreps.size()) - 1);
    for (int t = 0; t < 20; ++t) {
      int a = I(rng), b = I(rng);
      if (t % 2 == 0) b = a;
      int da = F.irreps[a].dim, db = F.irreps[b].dim;
      VecC w = rv(da), u = rv(da), w2 = rv(db), u2 = rv(db);
      double scale = 1 + w.norm() * u.norm() * w2.norm() * u2.norm();
      cplx s = schur_check(F, a, b, w, w2, u, u2);
      if (a != b)
        cross = std::max(cross, std::abs(s) / scale);
      else
        same = std::max(same, std::abs(s - u.dot(u2) * w2.dot(w) / double(da)) / scale);
    }
  }
  return {cross <= 1e-12 && same <= 1e-12,
          "inequivalent " + sci(cross) + ", equivalent " + sci(same) + " (relative, tol 1e-12)"};
}

Outcome multiplicity_oracle() {
  std::vector<FiniteSubgroup> all;
  for (int L = 1; L <= 6; ++L) all.push_back(make_finite_subgroup(SubgroupKind::cyclic2d, L));
  for (int L = 1; L <= 6; ++L) all.push_back(make_finite_subgroup(SubgroupKind::cyclic3d_z, L));
  for (int M = 2; M <= 6; ++M) all.push_back(make_finite_subgroup(SubgroupKind::dihedral3d, M));
  int cases = 0, bad = 0;
  for (const auto& F : all) {
    std::vector<AngularLabel> labels;
    if (F.d == 2)
      for (int n = -6; n <= 6; ++n) labels.push_back({2, n});
    else
      for (int i = 0; i <= 6; ++i) labels.push_back({3, i});
    for (const auto& l : labels) {
      auto m = multiplicities(F, l);
      auto br = oracle::brute_multiplicity(F, l);
      int dimsum = 0;
      for (std::size_t c = 0; c < F.irreps.size(); ++c) {
        if (m[c] != br.at(F.irreps[c].label)) ++bad;
        dimsum += m[c] * F.irreps[c].dim;
      }
      int di = F.d == 2 ? 1 : 2 * l.index + 1;
      if (dimsum != di || dim_h(F.d, std::abs(l.index)) != (F.d == 2 ? (l.index == 0 ? 1 : 2) : di)) ++bad;
      ++cases;
    }
  }
  return {bad == 0, std::to_string(cases) + " (subgroup, label) cases, " + std::to_string(bad) + " mismatches"};
}

CartesianSignal packet(int N, double Xi) {
  return CartesianSignal::from_fn(2, N, Xi, [](const Eigen::Vector3d& x) {
    double a = (x(0) - 0.5) / 0.9, b = (x(1) + 0.3) / 0.7;
    return std::exp(-0.5 * (a * a + b * b)) * std::polar(1.0, 1.2 * x(0));
  });
}

double max_diff(const CartesianSignal& a, const CartesianSignal& b) {
  double e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a.values[i] - b.values[i]));
  return e;
}

Outcome propagator() {
  auto f = packet(256, 8.0);
  double n0 = f.norm_sq();
  double law = max_diff(propagate(propagate(f, 0.013), 0.029), propagate(f, 0.042));
  auto g = f;
  for (int s = 0; s < 100; ++s) g = propagate(g, 0.01);
  double norm = std::abs(g.norm_sq() - n0) / n0;
  double t = 0.02;
  GroupElement rot{0.0, 1.0, Rotation::planar(0.6)};
  double crot = max_diff(pi_hat_apply(rot, propagate(f, t), 6), propagate(pi_hat_apply(rot, f, 6), t));
  double a = 1.5;
  GroupElement dil{0.0, a, Rotation::identity(2)};
  double cdil = max_diff(pi_hat_apply(dil, propagate(f, t), 6), propagate(pi_hat_apply(dil, f, 6), a * t));
  bool ok = law <= 1e-13 && norm <= 1e-13 && crot <= 1e-6 && cdil <= 1e-6;
  return {ok, "group law " + sci(law) + ", norm drift " + sci(norm) + ", rotation " + sci(crot) + ", dilation " +
                  sci(cdil) + " (256^2 grid)"};
}

Outcome negative_controls() {
  AlphaSpec a;
  a.overrides[1] = Dyadic::pow2(0);
  auto gr = make_log_grid(-24, 7, 128);
  auto g = build_generator_2d({}, a, 1, 4, gr);
  auto rs = check_discrete_conditions(g);
  double cross = 0;
  bool any_fail = false;
  for (const auto& r : rs) {
    if (r.id == "cross_dilation_sum") cross = r.max_residual;
    any_fail = any_fail || !r.pass;
  }
  auto s = make_sampling_grid(g, -5, 5, 32);
  int n0 = -1;
  for (std::size_t b = 0; b < g.slots.size(); ++b)
    if (g.slots[b].n == 0) n0 = static_cast<int>(b);
  std::mt19937_64 rng(1010);
  auto f = band_test_signal(g, s, rng, 2, 8.0, {n0}).f;
  f.comps[f.label_pos({2, 1})] = f.comps[f.label_pos({2, 0})];
  double dev = std::abs(parseval_report(f, g, s).ratio - 1);

  ProfileSpec p;
  p.mode = ConstantMode::continuous;
  p.scale = 1.1;
  auto r = check_continuous_admissibility(build_generator_2d(p, {}, 1, 4, gr));
  double c = r.measured.at("slot_integral_max");
  bool ok = any_fail && cross >= 0.5 && dev >= 0.1 && !r.pass && std::abs(c - 1.21) <= 1e-10;
  return {ok, "collision residual " + sci(cross) + ", Parseval deviation " + sci(dev) + ", scaled constant " +
                  fixed(c)};
}

Outcome erratum() {
  auto gr = make_log_grid(-24, 7, 64);
  ProfileSpec printed;
  printed.mode = ConstantMode::printed;
  auto bad = check_discrete_conditions(build_generator_2d(printed, {}, 4, 8, gr));
  auto good = check_discrete_conditions(build_generator_2d({}, {}, 4, 8, gr));
  double measured = 0;
  bool flagged = false, passes = true;
  for (const auto& r : bad)
    if (r.id == "dilation_sum") {
      measured = r.measured.at("constant_max");
      flagged = !r.pass;
    }
  for (const auto& r : good) passes = passes && r.pass;
  bool ok = flagged && std::abs(measured - 1.0 / 16) <= 1e-15 && passes;
  return {ok, "printed constant gives sum " + sci(measured) + " vs 1/L = 2.500e-01 (flagged), computed constant " +
                  (passes ? "passes" : "fails")};
}

Outcome gram_oracle() {
  auto g = build_generator_2d({}, {}, 1, 3, make_log_grid(-10, 4, 16));
  const Slot* s0 = nullptr;
  for (const auto& s : g.slots)
    if (s.n == 0) s0 = &s;
  // band (1/2, 1]: 256 uniform nodes of width 1/512, 512 consecutive translations
  auto v = oracle::band_slice(*s0, 0, 256, -256, 512);
  auto r = oracle::gram_parseval(v);
  return {r.dim == 256 && r.max_residual <= 1e-10,
          "||S - I||_max = " + sci(r.max_residual) + " on a " + std::to_string(r.dim) + "-dimensional slice"};
}

}  // namespace

int main() {
  run("parseval_2d", parseval_2d);
  run("parseval_3d", parseval_3d);
  run("orthonormal_basis_l1", orthonormality_l1);
  run("reproducing_identity", reproducing_identity);
  run("admissibility_integrals", admissibility);
  run("weil_constant", weil);
  run("schur_orthogonality", schur);
  run("multiplicity_oracle", multiplicity_oracle);
  run("propagator_properties", propagator);
  run("negative_controls", negative_controls);
  run("printed_constant_erratum", erratum);
  run("dense_gram_oracle", gram_oracle);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
