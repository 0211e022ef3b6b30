#include "schrolet/admissible.hpp"

#include <algorithm>
#include <cmath>

namespace schrolet {

ConstantMode parse_constant_mode(const std::string& s) {
  if (s == "computed") return ConstantMode::computed;
  if (s == "printed") return ConstantMode::printed;
  if (s == "continuous") return ConstantMode::continuous;
  if (s == "explicit") return ConstantMode::explicit_value;
  throw Error(ErrorKind::schema, "unknown constant mode '" + s + "'");
}

std::string to_string(ConstantMode m) {
  switch (m) {
    case ConstantMode::computed: return "computed";
    case ConstantMode::printed: return "printed";
    case ConstantMode::continuous: return "continuous";
    case ConstantMode::explicit_value: return "explicit";
  }
  return "?";
}

int Slot::shift() const {
  if (!alpha.is_pow2()) fail("slot alpha is not a power of two");
  return -alpha.e;
}

bool Slot::pow2_band() const { return analytic && alpha.is_pow2() && hi == alpha && lo == alpha * Dyadic::pow2(-1); }

cplx Slot::eval(double omega) const {
  if (analytic) return (omega > lo.to_double() && omega <= hi.to_double()) ? c : cplx(0.0);
  return phi.eval(omega, 4);
}

double Generator::norm_sq_exact(bool include_tail) const {
  std::vector<double> t;
  double mother = 0.0;
  for (const auto& s : slots) {
    double dchi = F.irreps[s.chi].dim;
    if (s.analytic) {
      t.push_back(std::norm(s.c) * (s.hi - s.lo).to_double() * dchi);
      mother = std::norm(s.c) * 0.5;
    } else {
      double n = norm_sq(s.phi);
      t.push_back(n * dchi);
      mother = n / s.alpha.to_double();
    }
  }
  double out = pairwise_sum(t);
  if (include_tail) out += mother * alpha_tail;
  return out;
}

double Generator::norm_sq_grid() const {
  std::vector<double> t;
  for (const auto& s : slots) t.push_back(norm_sq(s.phi) * F.irreps[s.chi].dim);
  return pairwise_sum(t);
}

std::vector<std::size_t> Generator::slots_of_label(const AngularLabel& l) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < slots.size(); ++k)
    if (slots[k].label == l) out.push_back(k);
  return out;
}

Dyadic interleaved_alpha_2d(int n) { return n >= 0 ? Dyadic::pow2(-2 * n) : Dyadic::pow2(2 * n + 1); }

namespace {

double mother_constant(const ProfileSpec& p, int d, int L) {
  double c = 1.0;
  switch (p.mode) {
    case ConstantMode::computed: c = 1.0 / std::sqrt(double(L)); break;
    case ConstantMode::printed: c = d == 2 ? 1.0 / L : 1.0; break;
    case ConstantMode::continuous: c = 1.0 / std::sqrt(kLn2); break;
    case ConstantMode::explicit_value: c = p.explicit_value; break;
  }
  return c * p.scale;
}

// mean over one octave of sum_j |u(2^j w)|^2 for a sampled profile
double user_dilation_mean(const RadialFunction& u) {
  const auto& g = u.grid;
  std::vector<double> acc(g.Q, 0.0);
  for (std::size_t p = 0; p < g.size(); ++p) acc[p % g.Q] += std::norm(u[p]);
  return pairwise_sum(acc) / g.Q;
}

void fill_slot(Slot& s, const ProfileSpec& p, double c, const RadialGrid& grid) {
  if (p.shannon) {
    s.analytic = true;
    s.c = c;
    s.hi = s.alpha;
    s.lo = s.alpha * Dyadic::pow2(-1);
    if (!grid.contains_exp(static_cast<int>(std::floor(std::log2(s.lo.to_double())))) ||
        !grid.contains_exp(static_cast<int>(std::ceil(std::log2(s.hi.to_double())))))
      fail("slot " + std::to_string(s.n) + " support (" + s.lo.str() + ", " + s.hi.str() + "] lies outside the radial grid");
    s.phi = indicator(grid, s.lo, s.hi, c);
    return;
  }
  const auto& u = *p.user;
  if (u.grid != grid) fail("user profile grid differs from the generator grid");
  if (std::abs(u[0]) != 0.0 || std::abs(u[u.size() - 1]) != 0.0)
    fail("user profile is not compactly supported inside the grid");
  s.analytic = false;
  s.c = c;
  s.phi = RadialFunction(grid);
  double a = s.alpha.to_double();
  if (s.alpha.is_pow2()) {
    long sh = static_cast<long>(-s.alpha.e) * grid.Q;
    for (long q = 0; q < static_cast<long>(grid.size()); ++q) {
      long src = q + sh;
      if (src >= 0 && src < static_cast<long>(grid.size())) s.phi[q] = c * u[src];
    }
  } else {
    for (std::size_t q = 0; q < grid.size(); ++q) s.phi[q] = c * u.eval(grid.node(q) / a, 4);
  }
}

Dyadic rule_alpha(const AlphaSpec& a, int n, int d) {
  auto it = a.overrides.find(n);
  if (it != a.overrides.end()) return it->second;
  switch (a.rule) {
    case AlphaRule::interleaved_2d:
      if (d != 2) fail("the interleaved alpha rule applies to d = 2 only");
      return interleaved_alpha_2d(n);
    case AlphaRule::bijection:
      if (n < 0) fail("bijection alpha rule needs n >= 0");
      return Dyadic::pow2(-n);
    case AlphaRule::constant: return Dyadic::pow2(0);
  }
  return Dyadic::pow2(0);
}

}  // namespace

Generator build_generator_2d(const ProfileSpec& profile, const AlphaSpec& alphas, int L, int nmax, const RadialGrid& grid) {
  if (L < 1) fail("build_generator_2d: L must be >= 1");
  if (nmax < 0) fail("build_generator_2d: nmax must be >= 0");
  if (alphas.rule == AlphaRule::constant) fail("alpha weights diverge: constant rule has an infinite sum");
  if (!profile.shannon && !profile.user) fail("user profile requested without samples");
  Generator g;
  g.d = 2;
  g.L = L;
  g.F = make_finite_subgroup(SubgroupKind::cyclic2d, L);
  g.grid = grid;
  g.mode = profile.mode;
  g.c = mother_constant(profile, 2, L);
  double c = g.c;
  if (!profile.shannon && profile.mode == ConstantMode::computed)
    c = profile.scale * std::sqrt((1.0 / L) / user_dilation_mean(*profile.user));
  g.c = c;
  for (int n = -nmax; n <= nmax; ++n) {
    AngularLabel lab{2, n};
    g.labels.push_back(lab);
    Slot s;
    s.label = lab;
    s.n = n;
    s.alpha = rule_alpha(alphas, n, 2);
    if (s.alpha.m == 0) continue;
    if (s.alpha.m < 0) fail("alpha weights must be positive");
    auto iso = isotypic(g.F, lab);
    for (const auto& b : iso.blocks)
      if (b.mult > 0) {
        s.chi = b.chi;
        s.mu = 0;
        s.delta = b.delta[0];
        s.E = b.E[0];
        s.v = b.v[0];
      }
    fill_slot(s, profile, c, grid);
    g.slots.push_back(s);
  }
  if (g.slots.empty()) fail("generator has no active slots");
  g.alpha_tail = alphas.rule == AlphaRule::interleaved_2d ? std::pow(4.0, -nmax) : 0.0;
  g.id = "2d-L" + std::to_string(L) + "-n" + std::to_string(nmax) + "-" + to_string(profile.mode);
  return g;
}

Generator build_generator_general(const ProfileSpec& profile, const AlphaSpec& alphas, const FiniteSubgroup& F, int imax,
                                  const RadialGrid& grid, DeltaRule delta) {
  if (F.d != 3) fail("build_generator_general: subgroup must act on R^3");
  if (imax < 0) fail("build_generator_general: empty label set");
  if (alphas.rule == AlphaRule::constant) fail("alpha weights diverge: constant rule has an infinite sum");
  if (!profile.shannon && !profile.user) fail("user profile requested without samples");
  Generator g;
  g.d = 3;
  g.L = static_cast<int>(F.order());
  g.F = F;
  g.grid = grid;
  g.mode = profile.mode;
  double c = mother_constant(profile, 3, g.L);
  if (!profile.shannon && profile.mode == ConstantMode::computed)
    c = profile.scale * std::sqrt((1.0 / g.L) / user_dilation_mean(*profile.user));
  g.c = c;
  int n = 0;
  int maxd = 1;
  for (const auto& ir : F.irreps) maxd = std::max(maxd, ir.dim);
  for (int i = 0; i <= imax; ++i) {
    AngularLabel lab{3, i};
    g.labels.push_back(lab);
    auto iso = isotypic(F, lab, delta);
    for (const auto& b : iso.blocks)
      for (int mu = 0; mu < b.mult; ++mu, ++n) {
        Slot s;
        s.label = lab;
        s.chi = b.chi;
        s.mu = mu;
        s.delta = b.delta[mu];
        s.E = b.E[mu];
        s.v = b.v[mu];
        s.n = n;
        s.alpha = rule_alpha(alphas, n, 3);
        if (s.alpha.m == 0) continue;
        if (s.alpha.m < 0) fail("alpha weights must be positive");
        fill_slot(s, profile, c, grid);
        g.slots.push_back(s);
      }
  }
  if (g.slots.empty()) fail("generator has no active slots");
  // remaining bijection indices n, n+1, ... each carry at most max d_chi
  g.alpha_tail = alphas.rule == AlphaRule::bijection ? maxd * std::ldexp(2.0, -n) : 0.0;
  g.id = "3d-" + to_string(F.kind) + std::to_string(F.param) + "-i" + std::to_string(imax) + "-" + to_string(profile.mode);
  return g;
}

std::vector<RadialFunction> generator_component(const Generator& g, const AngularLabel& l) {
  int dl = label_dim(l);
  std::vector<RadialFunction> out(dl, RadialFunction(g.grid));
  for (const auto& s : g.slots) {
    if (!(s.label == l)) continue;
    for (int m = 0; m < dl; ++m)
      for (std::size_t p = 0; p < g.grid.size(); ++p) out[m][p] += s.phi[p] * s.v(m);
  }
  return out;
}

bool same_channel(const Slot& a, const Slot& b) { return a.chi == b.chi && a.delta == b.delta; }

ConditionReport check_continuous_admissibility(const Generator& g, double rescale, double tol) {
  ConditionReport r;
  r.id = g.d == 2 ? "continuous_admissibility_2d" : "continuous_admissibility";
  r.description = "per-label integral of ||(S eta)_i||^2 d omega / omega against d_i";
  r.tolerance = tol;
  double s2 = rescale * rescale;
  for (const auto& l : g.labels) {
    auto comp = generator_component(g, l);
    std::vector<double> t;
    for (const auto& c : comp) t.push_back(norm_sq(c, Measure::domega_over_omega));
    double I = pairwise_sum(t) * s2;
    double res = std::abs(I - label_dim(l));
    r.residuals.push_back(res);
    r.max_residual = std::max(r.max_residual, res);
    r.measured["label_" + std::to_string(l.index) + "_integral"] = I;
  }
  double smin = 1e300, smax = -1e300;
  for (const auto& s : g.slots) {
    double I = norm_sq(s.phi, Measure::domega_over_omega) * s2;
    smin = std::min(smin, I);
    smax = std::max(smax, I);
  }
  r.measured["slot_integral_min"] = smin;
  r.measured["slot_integral_max"] = smax;
  r.measured["ln2_over_L"] = kLn2 / g.L * s2;
  r.measured["rescale"] = rescale;
  r.finish();
  return r;
}

namespace {

// odd translation multipliers checked, in both unit conventions
const int kOddM[] = {-5, -3, -1, 1, 3, 5};

// j range for which 2^j omega can land in (lo, hi]
void j_window(double omega, double lo, double hi, int& j0, int& j1) {
  j0 = static_cast<int>(std::floor(std::log2(lo / omega))) - 1;
  j1 = static_cast<int>(std::ceil(std::log2(hi / omega))) + 1;
}

double support_lo(const Generator& g, const Slot& s) {
  if (s.analytic) return s.lo.to_double();
  for (std::size_t p = 0; p < g.grid.size(); ++p)
    if (s.phi[p] != cplx{}) return g.grid.node(p > 0 ? p - 1 : 0);
  return g.grid.node(0);
}

double support_hi(const Generator& g, const Slot& s) {
  if (s.analytic) return s.hi.to_double();
  for (std::size_t p = g.grid.size(); p-- > 0;)
    if (s.phi[p] != cplx{}) return g.grid.node(std::min(p + 1, g.grid.size() - 1));
  return g.grid.node(g.grid.size() - 1);
}

// phi_slot(2^j omega_p): exact index shift for samples, exact comparison for indicators
cplx dilated(const Generator& g, const Slot& s, std::size_t p, int j) {
  if (s.analytic) return s.eval(std::ldexp(g.grid.node(p), j));
  long q = static_cast<long>(p) + static_cast<long>(j) * g.grid.Q;
  if (q < 0 || q >= static_cast<long>(g.grid.size())) return 0.0;
  return s.phi[q];
}

// sum_{j >= 0} phi_a(2^j w) conj(phi_b(2^j (w + t)))
cplx translated_sum(const Generator& g, const Slot& a, const Slot& b, std::size_t p, double t, double hi_a) {
  double w = g.grid.node(p);
  if (w + t <= 0) return 0.0;
  std::vector<cplx> terms;
  for (int j = 0; std::ldexp(w, j) <= hi_a * 2; ++j) {
    cplx x = dilated(g, a, p, j);
    if (x == cplx{}) continue;
    terms.push_back(x * std::conj(b.eval(std::ldexp(w + t, j))));
  }
  return pairwise_sum(terms);
}

}  // namespace

std::vector<ConditionReport> check_discrete_conditions(const Generator& g, double tol) {
  for (const auto& s : g.slots)
    if (!s.analytic && (s.phi[0] != cplx{} || s.phi[g.grid.size() - 1] != cplx{}))
      fail("check_discrete_conditions: profile not compactly supported inside the grid; truncation unsound");
  std::size_t P = g.grid.size();
  double target = 1.0 / g.L;

  ConditionReport dil;
  dil.id = "dilation_sum";
  dil.description = "sum_j |phi(2^j w)|^2 = 1/L at every grid node";
  dil.tolerance = tol;
  double cmin = 1e300, cmax = -1e300;
  for (const auto& s : g.slots) {
    double lo = support_lo(g, s), hi = support_hi(g, s);
    std::vector<double> res(P);
    std::vector<double> sums(P);
    parallel_for(P, [&](std::size_t p) {
      int j0, j1;
      j_window(g.grid.node(p), lo, hi, j0, j1);
      std::vector<double> t;
      for (int j = j0; j <= j1; ++j) t.push_back(std::norm(dilated(g, s, p, j)));
      sums[p] = pairwise_sum(t);
      res[p] = std::abs(sums[p] - target);
    });
    for (std::size_t p = 0; p < P; ++p) {
      dil.max_residual = std::max(dil.max_residual, res[p]);
      cmin = std::min(cmin, sums[p]);
      cmax = std::max(cmax, sums[p]);
    }
  }
  dil.measured["constant_min"] = cmin;
  dil.measured["constant_max"] = cmax;
  dil.measured["target"] = target;
  dil.finish();

  auto translation = [&](bool unit) {
    ConditionReport r;
    r.id = unit ? "translation_orthogonality_unit" : "translation_orthogonality";
    r.description = unit ? "sum_{j>=0} phi(2^j w) conj(phi(2^j (w + m))) = 0, odd m"
                         : "sum_{j>=0} phi(2^j w) conj(phi(2^j (w + 2 pi m))) = 0, odd m";
    r.tolerance = tol;
    for (const auto& s : g.slots) {
      double hi = support_hi(g, s);
      std::vector<double> res(P, 0.0);
      parallel_for(P, [&](std::size_t p) {
        for (int m : kOddM) res[p] = std::max(res[p], std::abs(translated_sum(g, s, s, p, unit ? m : 2 * kPi * m, hi)));
      });
      for (double v : res) r.max_residual = std::max(r.max_residual, v);
    }
    r.measured["shifts_checked"] = 6;
    r.finish();
    return r;
  };

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < g.slots.size(); ++a)
    for (std::size_t b = 0; b < g.slots.size(); ++b)
      if (a != b && same_channel(g.slots[a], g.slots[b])) pairs.emplace_back(a, b);

  ConditionReport cross;
  cross.id = "cross_dilation_sum";
  cross.description = "sum_j phi_a(2^j w) conj(phi_b(2^j w)) = 0 for distinct slots sharing (chi, w_delta)";
  cross.tolerance = tol;
  for (auto [a, b] : pairs) {
    if (a > b) continue;
    const auto& sa = g.slots[a];
    const auto& sb = g.slots[b];
    double lo = support_lo(g, sa), hi = support_hi(g, sa);
    std::vector<double> res(P);
    parallel_for(P, [&](std::size_t p) {
      int j0, j1;
      j_window(g.grid.node(p), lo, hi, j0, j1);
      std::vector<cplx> t;
      for (int j = j0; j <= j1; ++j) t.push_back(dilated(g, sa, p, j) * std::conj(dilated(g, sb, p, j)));
      res[p] = std::abs(pairwise_sum(t));
    });
    for (double v : res) cross.max_residual = std::max(cross.max_residual, v);
  }
  cross.measured["pairs"] = static_cast<double>(pairs.size() / 2);
  cross.finish();

  auto cross_translation = [&](bool unit) {
    ConditionReport r;
    r.id = unit ? "cross_translation_unit" : "cross_translation";
    r.description = unit ? "sum_{j>=0} phi_a(2^j w) conj(phi_b(2^j (w + m))) = 0 for paired slots, odd m"
                         : "sum_{j>=0} phi_a(2^j w) conj(phi_b(2^j (w + 2 pi m))) = 0 for paired slots, odd m";
    r.tolerance = tol;
    for (auto [a, b] : pairs) {
      const auto& sa = g.slots[a];
      const auto& sb = g.slots[b];
      double hi = support_hi(g, sa);
      std::vector<double> res(P, 0.0);
      parallel_for(P, [&](std::size_t p) {
        for (int m : kOddM) res[p] = std::max(res[p], std::abs(translated_sum(g, sa, sb, p, unit ? m : 2 * kPi * m, hi)));
      });
      for (double v : res) r.max_residual = std::max(r.max_residual, v);
    }
    r.measured["pairs"] = static_cast<double>(pairs.size());
    r.finish();
    return r;
  };

  return {dil, translation(false), translation(true), cross, cross_translation(false), cross_translation(true)};
}

ConditionReport check_support_disjointness(const Generator& g) {
  ConditionReport r;
  r.id = "support_disjointness";
  r.description = "|supp phi  cap  (alpha_b / alpha_a) supp phi| = 0 for distinct slots sharing (chi, w_delta)";
  r.tolerance = 0.0;
  for (std::size_t a = 0; a < g.slots.size(); ++a)
    for (std::size_t b = a + 1; b < g.slots.size(); ++b) {
      const auto& sa = g.slots[a];
      const auto& sb = g.slots[b];
      if (!same_channel(sa, sb)) continue;
      if (!sa.analytic || !sb.analytic) {
        r.notes.push_back("sampled profiles: disjointness needs interval supports, pair skipped");
        continue;
      }
      Dyadic lo = dmax(sa.lo, sb.lo), hi = dmin(sa.hi, sb.hi);
      double overlap = 0.0;
      if (lo < hi) {
        Dyadic len = hi - lo;
        // back to mother coordinates: divide by alpha_a
        overlap = sa.alpha.is_pow2() ? (len * Dyadic::pow2(-sa.alpha.e)).to_double() : len.to_double() / sa.alpha.to_double();
      }
      r.residuals.push_back(overlap);
      r.max_residual = std::max(r.max_residual, overlap);
    }
  r.measured["pairs"] = static_cast<double>(r.residuals.size());
  r.measured["max_overlap"] = r.max_residual;
  r.finish();
  return r;
}

}  // namespace schrolet
