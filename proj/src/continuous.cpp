#include "schrolet/continuous.hpp"

#include <algorithm>
#include <cmath>

#include "schrolet/frame.hpp"

namespace schrolet {

RotationRule rotation_rule(int d, int M) {
  if (M < 1) fail("rotation_rule: need at least one node");
  RotationRule r;
  if (d == 2) {
    for (int k = 0; k < M; ++k) {
      r.R.push_back(Rotation::planar(2 * kPi * k / M));
      r.w.push_back(1.0 / M);
    }
    return r;
  }
  if (d != 3) fail("rotation_rule: d must be 2 or 3");
  int nb = std::max(1, M / 2);
  std::vector<double> wb(nb);
  double tot = 0;
  for (int i = 0; i < nb; ++i) tot += wb[i] = std::sin(kPi * (i + 0.5) / nb);
  for (int ia = 0; ia < M; ++ia)
    for (int ib = 0; ib < nb; ++ib)
      for (int ig = 0; ig < M; ++ig) {
        r.R.push_back(Rotation::euler(2 * kPi * ia / M, kPi * (ib + 0.5) / nb, 2 * kPi * ig / M));
        r.w.push_back(wb[ib] / tot / (double(M) * M));
      }
  return r;
}

cplx voice(const SequenceSignal& f, const Generator& g, const GroupElement& x) {
  if (f.d != g.d || !(f.grid == g.grid)) fail("voice: signal and generator live on different spaces");
  auto eta = generator_signal(g, f.labels);
  return inner(f, pi_prime_apply(x, eta).f);
}

namespace {

// support of the nonzero samples, widened by one node
bool sample_support(const RadialFunction& r, double& lo, double& hi) {
  const auto& gr = r.grid;
  std::size_t first = gr.size(), last = 0;
  for (std::size_t p = 0; p < gr.size(); ++p)
    if (r[p] != cplx{}) {
      first = std::min(first, p);
      last = p;
    }
  if (first == gr.size()) return false;
  lo = gr.node(first > 0 ? first - 1 : 0);
  hi = gr.node(std::min(last + 1, gr.size() - 1));
  return true;
}

struct Piece {
  double lo, hi;
};

// exact support of phi_slot
Piece slot_support(const Slot& s) {
  if (s.analytic) return {s.lo.to_double(), s.hi.to_double()};
  Piece p{0, 0};
  if (!sample_support(s.phi, p.lo, p.hi)) p = {0, 0};
  return p;
}

}  // namespace

ReproducingReport reproducing_check(const SequenceSignal& f, const Generator& g, const QuadSpec& q,
                                    std::vector<VoiceSample>* samples) {
  if (f.d != g.d || !(f.grid == g.grid)) fail("reproducing_check: signal and generator live on different spaces");
  if (q.b_step <= 0 || q.b_max <= 0 || q.Q < 1 || q.p_min > q.p_max) fail("reproducing_check: invalid quadrature spec");
  ReproducingReport rep;
  rep.norm_sq = f.norm_sq();

  int lmax = 0;
  for (const auto& l : f.labels) lmax = std::max(lmax, std::abs(l.index));
  int M = q.rotations > 0 ? q.rotations : (g.d == 2 ? 2 * lmax + 2 : 2 * lmax + 2);
  auto rot = rotation_rule(g.d, M);

  // per label: support of the signal and conj(rho_i(R)) for every rotation node
  std::size_t NL = f.labels.size();
  std::vector<Piece> fsup(NL, Piece{0, 0});
  std::vector<bool> active(NL, false);
  for (std::size_t l = 0; l < NL; ++l)
    for (const auto& c : f.comps[l]) {
      Piece p;
      if (!sample_support(c, p.lo, p.hi)) continue;
      fsup[l] = active[l] ? Piece{std::min(fsup[l].lo, p.lo), std::max(fsup[l].hi, p.hi)} : p;
      active[l] = true;
    }
  std::vector<std::vector<MatC>> rho(NL);
  for (std::size_t l = 0; l < NL; ++l)
    for (const auto& R : rot.R) rho[l].push_back(rho_matrix(f.labels[l], R).conjugate());

  int Kb = static_cast<int>(std::floor(q.b_max / q.b_step));
  int nb = 2 * Kb + 1;
  int np = q.p_max - q.p_min + 1;
  std::vector<double> xg, wg;
  gauss_legendre(q.panel_points, xg, wg);

  // frequency coverage of the dilation window, per slot
  std::vector<double> covered_lo(g.slots.size()), covered_hi(g.slots.size());
  for (std::size_t b = 0; b < g.slots.size(); ++b) {
    auto sp = slot_support(g.slots[b]);
    covered_lo[b] = sp.lo / std::exp2(double(q.p_max) / q.Q);
    covered_hi[b] = sp.hi / std::exp2(double(q.p_min) / q.Q);
  }

  std::vector<double> per_a(np, 0.0);
  std::vector<std::vector<VoiceSample>> per_a_samples(np);
  std::vector<std::size_t> per_a_nodes(np, 0);
  parallel_for(std::size_t(np), [&](std::size_t ip) {
    double a = std::exp2(double(q.p_min + int(ip)) / q.Q);
    double sa = std::sqrt(a);
    // X[l][m][m'](b) = a^{1/2} sum_slots conj(v(m')) int f_{l,m}(w) conj(phi(a w)) e^{2 pi i b w} dw
    std::vector<std::vector<std::vector<std::vector<cplx>>>> X(NL);
    for (std::size_t l = 0; l < NL; ++l) {
      int dl = label_dim(f.labels[l]);
      X[l].assign(dl, std::vector<std::vector<cplx>>(dl, std::vector<cplx>(nb, cplx{})));
    }
    for (const auto& sl : g.slots) {
      int l = f.label_pos(sl.label);
      if (l < 0 || !active[l]) continue;
      auto sp = slot_support(sl);
      double lo = std::max(sp.lo / a, fsup[l].lo), hi = std::min(sp.hi / a, fsup[l].hi);
      if (!(lo < hi)) continue;
      int dl = label_dim(sl.label);
      // panels short enough that each holds about two periods of e^{2 pi i b_max w}
      int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) * q.b_max / 2.0)));
      double h = (hi - lo) / panels;
      std::vector<double> nodes, weights;
      for (int P = 0; P < panels; ++P)
        for (int t = 0; t < q.panel_points; ++t) {
          nodes.push_back(lo + h * (P + 0.5 * (xg[t] + 1)));
          weights.push_back(0.5 * h * wg[t]);
        }
      for (int m = 0; m < dl; ++m) {
        std::vector<cplx> G(nodes.size());
        for (std::size_t t = 0; t < nodes.size(); ++t)
          G[t] = weights[t] * f.comps[l][m].eval(nodes[t], 8) * std::conj(sl.eval(a * nodes[t]));
        std::vector<cplx> Y(nb, cplx{});
        for (std::size_t t = 0; t < nodes.size(); ++t) {
          cplx step = std::polar(1.0, 2 * kPi * q.b_step * nodes[t]);
          cplx z;
          for (int k = 0; k < nb; ++k) {
            if (k % 64 == 0) {
              double ph = (k - Kb) * q.b_step * nodes[t];
              z = std::polar(1.0, 2 * kPi * (ph - std::floor(ph)));
            }
            Y[k] += G[t] * z;
            z *= step;
          }
        }
        for (int mp = 0; mp < dl; ++mp) {
          cplx cv = sa * std::conj(sl.v(mp));
          if (cv == cplx{}) continue;
          for (int k = 0; k < nb; ++k) X[l][m][mp][k] += cv * Y[k];
        }
      }
      per_a_nodes[ip] += nodes.size();
    }
    std::vector<double> tb(nb);
    for (int k = 0; k < nb; ++k) {
      double acc = 0;
      for (std::size_t r = 0; r < rot.R.size(); ++r) {
        cplx v = 0.0;
        for (std::size_t l = 0; l < NL; ++l) {
          if (!active[l]) continue;
          const auto& C = rho[l][r];
          for (std::size_t m = 0; m < X[l].size(); ++m)
            for (std::size_t mp = 0; mp < X[l].size(); ++mp) v += C(m, mp) * X[l][m][mp][k];
        }
        double v2 = std::norm(v);
        acc += rot.w[r] * v2;
        if (samples && v2 > 0) per_a_samples[ip].push_back({(k - Kb) * q.b_step, a, rot.R[r].angle, v2});
      }
      tb[k] = acc * q.b_step;
    }
    // da / a^2 on the lattice a = 2^{p/Q}
    per_a[ip] = pairwise_sum(tb) * (kLn2 / q.Q) / a;
  });
  rep.estimate = pairwise_sum(per_a);
  rep.ratio = rep.norm_sq > 0 ? rep.estimate / rep.norm_sq : 0.0;
  for (auto n : per_a_nodes) rep.nodes += n;
  if (samples)
    for (auto& v : per_a_samples) samples->insert(samples->end(), v.begin(), v.end());

  // signal mass at frequencies outside every dilated slot support
  std::vector<double> lost;
  for (std::size_t l = 0; l < NL; ++l) {
    if (!active[l]) continue;
    for (const auto& c : f.comps[l])
      for (std::size_t p = 0; p < f.grid.size(); ++p) {
        if (c[p] == cplx{}) continue;
        double w = f.grid.node(p);
        bool hit = false;
        for (std::size_t b = 0; b < g.slots.size() && !hit; ++b)
          hit = g.slots[b].label == f.labels[l] && w > covered_lo[b] && w <= covered_hi[b];
        if (!hit) lost.push_back(f.grid.weight(p) * std::norm(c[p]));
      }
  }
  rep.dilation_loss = rep.norm_sq > 0 ? pairwise_sum(lost) / rep.norm_sq : 0.0;
  if (rep.dilation_loss > 0) rep.notes.push_back("dilation window misses part of the signal spectrum");
  if (rep.norm_sq == 0) rep.notes.push_back("zero signal");
  for (std::size_t l = 0; l < NL; ++l)
    if (active[l] && fsup[l].hi - fsup[l].lo > 1.0 / q.b_step)
      rep.notes.push_back("b_step too coarse for the signal bandwidth; b-trapezoid aliases");
  return rep;
}

RefinementReport reproducing_refinement(const SequenceSignal& f, const Generator& g, QuadSpec q, int levels, double factor) {
  RefinementReport r;
  for (int l = 0; l < levels; ++l) {
    auto rep = reproducing_check(f, g, q);
    r.b_max.push_back(q.b_max);
    r.ratio.push_back(rep.ratio);
    r.error.push_back(std::abs(rep.ratio - 1.0));
    if (l > 0) r.reduction.push_back(r.error[l - 1] / std::max(r.error[l], 1e-300));
    q.b_max *= factor;
  }
  return r;
}

WeilReport weil_constant(const HFunction& phi, const WeilSpec& s) {
  if (s.n < 2 || !(s.u_min < s.u_max)) fail("weil_constant: invalid quadrature");
  auto rot = rotation_rule(s.d, s.rotations);
  auto avg = [&](double a) {
    std::vector<double> t(rot.R.size());
    for (std::size_t r = 0; r < rot.R.size(); ++r) t[r] = rot.w[r] * phi(a, rot.R[r]);
    return pairwise_sum(t);
  };
  // left: u = log2 a, da/a = ln2 du, gamma(a)^{-1} = 1/a
  std::vector<double> L(s.n);
  double hu = (s.u_max - s.u_min) / (s.n - 1);
  for (int i = 0; i < s.n; ++i) {
    double a = std::exp2(s.u_min + i * hu);
    double wt = (i == 0 || i == s.n - 1) ? 0.5 : 1.0;
    L[i] = wt * hu * kLn2 * avg(a) / a;
  }
  // right: w uniform over [2^{-u_max}, 2^{-u_min}], q(w) = 1/w
  std::vector<double> Rv(s.n);
  double w0 = std::exp2(-s.u_max), w1 = std::exp2(-s.u_min);
  double hw = (w1 - w0) / (s.n - 1);
  for (int i = 0; i < s.n; ++i) {
    double w = w0 + i * hw;
    double wt = (i == 0 || i == s.n - 1) ? 0.5 : 1.0;
    Rv[i] = wt * hw * avg(1.0 / w);
  }
  WeilReport r;
  r.lhs = pairwise_sum(L);
  r.rhs = pairwise_sum(Rv);
  double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
  if (scale < 1e-300) fail("weil_constant: degenerate test function (both sides vanish)");
  r.C = r.lhs / r.rhs;
  return r;
}

}  // namespace schrolet
