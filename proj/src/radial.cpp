#include "schrolet/radial.hpp"

#include <cmath>

namespace schrolet {

double RadialGrid::node(std::size_t p) const {
  int whole = static_cast<int>(p / Q);
  int rem = static_cast<int>(p % Q);
  return std::ldexp(std::exp2(static_cast<double>(rem) / Q), omega_min_exp + whole);
}

std::size_t RadialGrid::index_of_exp(int e) const {
  if (!contains_exp(e)) fail("exponent " + std::to_string(e) + " outside radial grid");
  return static_cast<std::size_t>(e - omega_min_exp) * Q;
}

RadialGrid make_log_grid(int omega_min_exp, int omega_max_exp, int Q) {
  if (Q < 1) fail("make_log_grid: Q must be >= 1");
  if (omega_min_exp >= omega_max_exp) fail("make_log_grid: omega_min_exp must be < omega_max_exp");
  return RadialGrid{omega_min_exp, omega_max_exp, Q};
}

cplx RadialFunction::eval(double omega, int order) const {
  if (!(omega > 0.0)) return 0.0;
  double u = (std::log2(omega) - grid.omega_min_exp) * grid.Q;
  double n = static_cast<double>(size() - 1);
  if (u < -1e-9 || u > n + 1e-9) return 0.0;
  double ur = std::round(u);
  if (std::abs(u - ur) < 1e-9) return values[static_cast<std::size_t>(ur)];
  long i0 = static_cast<long>(std::floor(u)) - order / 2 + 1;
  if (i0 < 0) i0 = 0;
  if (i0 + order > static_cast<long>(size())) i0 = static_cast<long>(size()) - order;
  if (i0 < 0) i0 = 0;
  long i1 = std::min<long>(i0 + order, size());
  cplx acc = 0.0;
  for (long i = i0; i < i1; ++i) {
    double l = 1.0;
    for (long m = i0; m < i1; ++m)
      if (m != i) l *= (u - m) / static_cast<double>(i - m);
    acc += l * values[i];
  }
  return acc;
}

cplx inner(const RadialFunction& f, const RadialFunction& g, Measure m) {
  if (f.grid != g.grid) fail("inner: grid mismatch");
  std::vector<cplx> t(f.size());
  for (std::size_t p = 0; p < f.size(); ++p) {
    double w = m == Measure::domega ? f.grid.weight(p) : kLn2 / f.grid.Q;
    t[p] = w * f.values[p] * std::conj(g.values[p]);
  }
  return pairwise_sum(t);
}

double norm_sq(const RadialFunction& f, Measure m) { return inner(f, f, m).real(); }

RadialFunction indicator(const RadialGrid& g, Dyadic lo, Dyadic hi, cplx value) {
  RadialFunction r(g);
  double a = lo.to_double(), b = hi.to_double();
  for (std::size_t p = 0; p < g.size(); ++p) {
    double w = g.node(p);
    if (w > a && w <= b) r.values[p] = value;
  }
  return r;
}

WplusResult wplus(double b, int p, const RadialFunction& f) {
  const auto& g = f.grid;
  long n = static_cast<long>(g.size());
  double a = std::exp2(static_cast<double>(p) / g.Q);
  double sa = std::sqrt(a);
  WplusResult out{RadialFunction(g), 0.0};
  std::vector<double> lost;
  for (long q = 0; q < n; ++q) {
    long src = q + p;
    if (src >= 0 && src < n) {
      double w = g.node(q);
      double ph = b * w;
      ph -= std::floor(ph);
      out.f.values[q] = sa * std::polar(1.0, -2.0 * kPi * ph) * f.values[src];
    }
  }
  for (long src = 0; src < n; ++src) {
    long q = src - p;
    if ((q < 0 || q >= n) && f.values[src] != cplx{}) lost.push_back(g.weight(src) * std::norm(f.values[src]));
  }
  out.dropped_mass = pairwise_sum(lost);
  return out;
}

std::vector<cplx> exp_sums(const std::vector<double>& nu, const std::vector<cplx>& g, int K, double sign) {
  std::size_t P = nu.size();
  std::size_t nk = 2 * static_cast<std::size_t>(K) + 1;
  std::vector<cplx> terms(nk * P);
  for (std::size_t p = 0; p < P; ++p) {
    double base = nu[p] - std::floor(nu[p]);
    cplx step = std::polar(1.0, sign * 2.0 * kPi * base);
    cplx z;
    for (int k = -K; k <= K; ++k) {
      if ((k + K) % 16 == 0) {
        double ph = static_cast<double>(k) * base;
        ph -= std::floor(ph);
        z = std::polar(1.0, sign * 2.0 * kPi * ph);
      }
      terms[static_cast<std::size_t>(k + K) * P + p] = g[p] * z;
      z *= step;
    }
  }
  std::vector<cplx> out(nk);
  for (std::size_t k = 0; k < nk; ++k) out[k] = pairwise_sum(&terms[k * P], P);
  return out;
}

std::vector<cplx> dilated_coeffs(const RadialFunction& f, const RadialFunction& phi, int j, int K) {
  if (f.grid != phi.grid) fail("dilated_coeffs: grid mismatch");
  const auto& g = f.grid;
  long n = static_cast<long>(g.size());
  long shift = static_cast<long>(j) * g.Q;
  std::vector<double> nu;
  std::vector<cplx> w;
  double a = std::ldexp(1.0, j);
  for (long p = 0; p < n; ++p) {
    long q = p + shift;
    if (q < 0 || q >= n) continue;
    cplx ph = phi.values[q];
    if (ph == cplx{} || f.values[p] == cplx{}) continue;
    nu.push_back(a * g.node(p));
    w.push_back(g.weight(p) * f.values[p] * std::conj(ph));
  }
  auto s = exp_sums(nu, w, K, +1.0);
  double sa = std::sqrt(a);
  for (auto& v : s) v *= sa;
  return s;
}

bool band_range(const RadialGrid& g, int e, std::size_t& first, std::size_t& last) {
  if (!g.contains_exp(e - 1) || !g.contains_exp(e)) return false;
  first = g.index_of_exp(e - 1) + 1;
  last = g.index_of_exp(e);
  return true;
}

std::vector<cplx> band_coeffs(const RadialFunction& f, int e, int j, int K, cplx scale) {
  const auto& g = f.grid;
  std::size_t p0, p1;
  if (!band_range(g, e, p0, p1)) fail("band_coeffs: band outside grid");
  double a = std::ldexp(1.0, j);
  std::vector<double> nu;
  std::vector<cplx> w;
  for (std::size_t p = p0; p <= p1; ++p) {
    nu.push_back(a * g.node(p));
    w.push_back(g.weight(p) * f.values[p] * std::conj(scale));
  }
  auto s = exp_sums(nu, w, K, +1.0);
  double sa = std::sqrt(a);
  for (auto& v : s) v *= sa;
  return s;
}

std::vector<cplx> band_coeffs_shannon(const RadialFunction& f, int j, int K, cplx scale) {
  return band_coeffs(f, -j, j, K, scale);
}

std::vector<cplx> trig_eval(const std::vector<double>& nu, const std::vector<cplx>& D, int K, double sign) {
  std::size_t P = nu.size();
  std::vector<cplx> out(P);
  std::vector<cplx> terms(D.size());
  for (std::size_t p = 0; p < P; ++p) {
    double base = nu[p] - std::floor(nu[p]);
    cplx step = std::polar(1.0, sign * 2.0 * kPi * base);
    cplx z;
    for (int k = -K; k <= K; ++k) {
      if ((k + K) % 16 == 0) {
        double ph = static_cast<double>(k) * base;
        ph -= std::floor(ph);
        z = std::polar(1.0, sign * 2.0 * kPi * ph);
      }
      terms[k + K] = D[k + K] * z;
      z *= step;
    }
    out[p] = pairwise_sum(terms);
  }
  return out;
}

}  // namespace schrolet
