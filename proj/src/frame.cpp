#include "schrolet/frame.hpp"

#include <algorithm>
#include <cmath>

namespace schrolet {

GroupElement SamplingGrid::point(const FiniteSubgroup& F, int j, int k, int l) const {
  double a = std::ldexp(1.0, j);
  return {a * k, a, F.elements.at(l)};
}

SamplingGrid make_sampling_grid(const Generator& g, int jmin, int jmax, int K) {
  if (jmin > jmax) fail("sampling grid: jmin > jmax");
  if (K < 0) fail("sampling grid: K must be >= 0");
  return {jmin, jmax, K, static_cast<int>(g.F.order())};
}

double CoefficientTable::sum_sq() const {
  std::vector<double> t(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) t[i] = std::norm(c[i]);
  return pairwise_sum(t);
}

namespace {

void check_compat(const SequenceSignal& f, const Generator& g, const SamplingGrid& s) {
  if (f.d != g.d) fail("signal and generator dimensions differ");
  if (!(f.grid == g.grid)) fail("signal and generator radial grids differ");
  if (s.L != static_cast<int>(g.F.order())) fail("sampling grid subgroup order differs from the generator subgroup");
}

// E^H f_i restricted to one slot: d_chi radial functions
std::vector<RadialFunction> block_part(const SequenceSignal& f, const Slot& s) {
  int dchi = static_cast<int>(s.E.cols());
  std::vector<RadialFunction> out(dchi, RadialFunction(f.grid));
  int pos = f.label_pos(s.label);
  if (pos < 0) return out;
  const auto& comps = f.comps[pos];
  for (int t = 0; t < dchi; ++t)
    for (std::size_t p = 0; p < f.grid.size(); ++p) {
      cplx acc = 0.0;
      for (int m = 0; m < s.E.rows(); ++m) acc += std::conj(s.E(m, t)) * comps[m][p];
      out[t][p] = acc;
    }
  return out;
}

// chi(R_l) w_slot for every l
std::vector<VecC> rotated_w(const Generator& g, const Slot& s) {
  const auto& ir = g.F.irreps[s.chi];
  VecC w = basis_w(ir.dim, s.delta);
  std::vector<VecC> out;
  for (const auto& M : ir.mats) out.push_back(M * w);
  return out;
}

// fraction of the slot profile mass whose 2^j-dilate leaves the grid
double off_grid_fraction(const Slot& s, int j) {
  const auto& gr = s.phi.grid;
  long n = static_cast<long>(gr.size()), sh = static_cast<long>(j) * gr.Q;
  double tot = 0, off = 0;
  for (long q = 0; q < n; ++q) {
    double m = std::norm(s.phi[q]);
    if (m == 0) continue;
    tot += m;
    if (q - sh < 0 || q - sh >= n) off += m;
  }
  return tot > 0 ? off / tot : 0.0;
}

std::vector<cplx> slot_coeffs(const RadialFunction& F, const Slot& s, int j, int K, AnalysisPath path) {
  if (path == AnalysisPath::fast && s.pow2_band()) {
    int e = -s.shift() - j;
    std::size_t p0, p1;
    if (!band_range(F.grid, e, p0, p1)) return std::vector<cplx>(2 * K + 1, cplx{});
    return band_coeffs(F, e, j, K, s.c);
  }
  return dilated_coeffs(F, s.phi, j, K);
}

}  // namespace

CoefficientTable analyze(const SequenceSignal& f, const Generator& g, const SamplingGrid& s, AnalysisPath path) {
  check_compat(f, g, s);
  CoefficientTable out;
  out.grid = s;
  out.generator_id = g.id;
  out.c.assign(s.size(), cplx{});
  out.dropped_mass.assign(s.nj(), 0.0);

  std::size_t S = g.slots.size();
  std::vector<std::vector<RadialFunction>> parts(S);
  parallel_for(S, [&](std::size_t b) { parts[b] = block_part(f, g.slots[b]); });

  // B[b][j][t] = <F_{b,t}, W+(2^j k, 2^j) phi_b>, k = -K..K
  std::size_t tasks = S * s.nj();
  std::vector<std::vector<std::vector<cplx>>> B(tasks);
  parallel_for(tasks, [&](std::size_t task) {
    std::size_t b = task / s.nj();
    int j = s.jmin + static_cast<int>(task % s.nj());
    for (const auto& F : parts[b]) B[task].push_back(slot_coeffs(F, g.slots[b], j, s.K, path));
  });

  std::vector<std::vector<VecC>> u(S);
  for (std::size_t b = 0; b < S; ++b) u[b] = rotated_w(g, g.slots[b]);

  parallel_for(std::size_t(s.nj()), [&](std::size_t jj) {
    int j = s.jmin + static_cast<int>(jj);
    double drop = 0.0;
    for (std::size_t b = 0; b < S; ++b) drop = std::max(drop, off_grid_fraction(g.slots[b], j));
    out.dropped_mass[jj] = drop;
    std::vector<cplx> terms;
    for (int k = -s.K; k <= s.K; ++k)
      for (int l = 0; l < s.L; ++l) {
        terms.clear();
        for (std::size_t b = 0; b < S; ++b) {
          const auto& Bj = B[b * s.nj() + jj];
          for (std::size_t t = 0; t < Bj.size(); ++t) terms.push_back(Bj[t][k + s.K] * std::conj(u[b][l](t)));
        }
        out.at(j, k, l) = pairwise_sum(terms);
      }
  });
  return out;
}

SequenceSignal synthesize(const CoefficientTable& c, const Generator& g, const SequenceSignal& shape) {
  const auto& s = c.grid;
  check_compat(shape, g, s);
  if (c.c.size() != s.size()) fail("coefficient table size does not match its sampling grid");
  if (!c.generator_id.empty() && c.generator_id != g.id)
    fail("coefficient table was produced with generator '" + c.generator_id + "', not '" + g.id + "'");

  const auto& gr = g.grid;
  long P = static_cast<long>(gr.size());
  SequenceSignal out = shape;
  for (auto& comps : out.comps)
    for (auto& rf : comps) std::fill(rf.values.begin(), rf.values.end(), cplx{});

  std::size_t S = g.slots.size();
  std::vector<std::vector<RadialFunction>> F(S);
  parallel_for(S, [&](std::size_t b) {
    const auto& sl = g.slots[b];
    auto u = rotated_w(g, sl);
    int dchi = static_cast<int>(sl.E.cols());
    F[b].assign(dchi, RadialFunction(gr));
    if (out.label_pos(sl.label) < 0) return;
    for (int j = s.jmin; j <= s.jmax; ++j) {
      long sh = static_cast<long>(j) * gr.Q;
      std::vector<long> nodes;
      std::vector<double> nu;
      for (long p = 0; p < P; ++p) {
        long q = p + sh;
        if (q >= 0 && q < P && sl.phi[q] != cplx{}) {
          nodes.push_back(p);
          nu.push_back(std::ldexp(gr.node(p), j));
        }
      }
      if (nodes.empty()) continue;
      double sa = std::sqrt(std::ldexp(1.0, j));
      for (int t = 0; t < dchi; ++t) {
        // D_k = sum_l c_{jkl} (chi(R_l) w)_t
        std::vector<cplx> D(s.nk());
        std::vector<cplx> terms(s.L);
        for (int k = -s.K; k <= s.K; ++k) {
          for (int l = 0; l < s.L; ++l) terms[l] = c.at(j, k, l) * u[l](t);
          D[k + s.K] = pairwise_sum(terms);
        }
        auto T = trig_eval(nu, D, s.K, -1.0);
        for (std::size_t i = 0; i < nodes.size(); ++i) F[b][t][nodes[i]] += sa * T[i] * sl.phi[nodes[i] + sh];
      }
    }
  });

  // f_i = sum over slots of E F, accumulated in slot order
  for (std::size_t b = 0; b < S; ++b) {
    const auto& sl = g.slots[b];
    int pos = out.label_pos(sl.label);
    if (pos < 0) continue;
    auto& comps = out.comps[pos];
    for (int m = 0; m < sl.E.rows(); ++m)
      for (long p = 0; p < P; ++p) {
        cplx acc = 0.0;
        for (int t = 0; t < sl.E.cols(); ++t) acc += sl.E(m, t) * F[b][t][p];
        comps[m][p] += acc;
      }
  }
  return out;
}

ParsevalReport parseval_report(const SequenceSignal& f, const Generator& g, const SamplingGrid& s, double tol) {
  ParsevalReport r;
  r.tolerance = tol;
  r.norm_sq = f.norm_sq();
  if (r.norm_sq == 0.0) fail("parseval_report: ||f|| = 0");
  auto c = analyze(f, g, s);
  r.sum_sq = c.sum_sq();
  r.ratio = r.sum_sq / r.norm_sq;

  // covered mass: per slot, the block part on nodes reached by some sampled dilation of phi
  const auto& gr = g.grid;
  long P = static_cast<long>(gr.size());
  std::vector<double> covered(g.slots.size(), 0.0);
  parallel_for(g.slots.size(), [&](std::size_t b) {
    const auto& sl = g.slots[b];
    auto parts = block_part(f, sl);
    std::vector<char> hit(P, 0);
    for (int j = s.jmin; j <= s.jmax; ++j) {
      long sh = static_cast<long>(j) * gr.Q;
      for (long p = 0; p < P; ++p)
        if (p + sh >= 0 && p + sh < P && sl.phi[p + sh] != cplx{}) hit[p] = 1;
    }
    std::vector<double> t;
    for (const auto& F : parts)
      for (long p = 0; p < P; ++p)
        if (hit[p]) t.push_back(gr.weight(p) * std::norm(F[p]));
    covered[b] = pairwise_sum(t);
  });
  r.tail_bound = std::max(0.0, (r.norm_sq - pairwise_sum(covered)) / r.norm_sq);
  r.inconclusive = r.tail_bound > tol;
  r.pass = std::abs(r.ratio - 1.0) <= tol + r.tail_bound;
  return r;
}

SequenceSignal generator_signal(const Generator& g, const std::vector<AngularLabel>& labels) {
  SequenceSignal eta(g.d, g.grid, labels);
  for (std::size_t l = 0; l < labels.size(); ++l) eta.comps[l] = generator_component(g, labels[l]);
  return eta;
}

SequenceSignal frame_vector(const Generator& g, const SamplingGrid& s, const std::vector<AngularLabel>& labels, int j,
                            int k, int l) {
  auto eta = generator_signal(g, labels);
  return pi_prime_apply(s.point(g.F, j, k, l), eta).f;
}

cplx frame_inner_exact(const Generator& g, int j1, int k1, int l1, int j2, int k2, int l2) {
  double b1 = std::ldexp(double(k1), j1), b2 = std::ldexp(double(k2), j2);
  double db = b1 - b2;
  std::vector<cplx> terms;
  for (const auto& sl : g.slots) {
    if (!sl.analytic) fail("frame_inner_exact: needs indicator profiles");
    // omega with 2^j1 omega and 2^j2 omega both in (lo, hi]
    Dyadic lo = dmax(sl.lo * Dyadic::pow2(-j1), sl.lo * Dyadic::pow2(-j2));
    Dyadic hi = dmin(sl.hi * Dyadic::pow2(-j1), sl.hi * Dyadic::pow2(-j2));
    if (!(lo < hi)) continue;
    double A = lo.to_double(), B = hi.to_double();
    cplx I = db == 0.0 ? cplx(B - A)
                       : (std::polar(1.0, -2 * kPi * db * B) - std::polar(1.0, -2 * kPi * db * A)) / cplx(0.0, -2 * kPi * db);
    auto u = rotated_w(g, sl);
    cplx ang = u[l2].dot(u[l1]);  // (chi(R2) w)^H chi(R1) w
    terms.push_back(std::norm(sl.c) * std::sqrt(std::ldexp(1.0, j1 + j2)) * ang * I);
  }
  return pairwise_sum(terms);
}

TestSignal band_test_signal(const Generator& g, const SamplingGrid& s, std::mt19937_64& rng, int harmonics,
                            double min_periods, const std::vector<int>& only_slots) {
  TestSignal ts;
  ts.f = SequenceSignal(g.d, g.grid, g.labels);
  std::normal_distribution<double> nd;
  const auto& gr = g.grid;
  for (std::size_t b = 0; b < g.slots.size(); ++b) {
    const auto& sl = g.slots[b];
    if (!only_slots.empty() && std::find(only_slots.begin(), only_slots.end(), int(b)) == only_slots.end()) continue;
    if (!sl.pow2_band()) continue;
    double alpha = sl.alpha.to_double();
    double w = alpha / 2;
    if (s.K * w < min_periods) continue;
    bool any = false;
    int pos = ts.f.label_pos(sl.label);
    auto& comps = ts.f.comps[pos];
    for (int j = s.jmin; j <= s.jmax; ++j) {
      std::size_t p0, p1;
      if (!band_range(gr, -sl.shift() - j, p0, p1)) continue;
      any = true;
      for (int t = 0; t < sl.E.cols(); ++t) {
        std::vector<cplx> a(2 * harmonics + 1);
        for (auto& x : a) x = cplx(nd(rng), nd(rng));
        for (std::size_t p = p0; p <= p1; ++p) {
          double x = (std::ldexp(gr.node(p), j) - w) / w;  // position in the band, (0, 1]
          double win = std::pow(std::sin(kPi * x), 8);
          cplx v = 0.0;
          for (int h = -harmonics; h <= harmonics; ++h) v += a[h + harmonics] * std::polar(1.0, 2 * kPi * h * x);
          v *= win;
          for (int m = 0; m < sl.E.rows(); ++m) comps[m][p] += sl.E(m, t) * v;
        }
      }
    }
    if (any) ts.content_slots.push_back(static_cast<int>(b));
  }
  return ts;
}

}  // namespace schrolet
