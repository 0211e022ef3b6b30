#pragma once
#include <vector>

#include "schrolet/util.hpp"

namespace schrolet {

/// Geometric grid omega_p = 2^(omega_min_exp + p/Q) on positive frequencies.
struct RadialGrid {
  int omega_min_exp = 0;
  int omega_max_exp = 1;
  int Q = 1;

  std::size_t size() const { return static_cast<std::size_t>(omega_max_exp - omega_min_exp) * Q + 1; }
  double node(std::size_t p) const;
  double log2_node(std::size_t p) const { return omega_min_exp + static_cast<double>(p) / Q; }
  /// quadrature weight for d(omega)
  double weight(std::size_t p) const { return node(p) * kLn2 / Q; }
  /// index of the node 2^e; throws if e is outside the grid
  std::size_t index_of_exp(int e) const;
  bool contains_exp(int e) const { return e >= omega_min_exp && e <= omega_max_exp; }

  friend bool operator==(const RadialGrid& a, const RadialGrid& b) {
    return a.omega_min_exp == b.omega_min_exp && a.omega_max_exp == b.omega_max_exp && a.Q == b.Q;
  }
  friend bool operator!=(const RadialGrid& a, const RadialGrid& b) { return !(a == b); }
};

RadialGrid make_log_grid(int omega_min_exp, int omega_max_exp, int Q);

struct RadialFunction {
  RadialGrid grid;
  std::vector<cplx> values;

  RadialFunction() = default;
  explicit RadialFunction(const RadialGrid& g) : grid(g), values(g.size(), cplx{}) {}
  template <class F>
  static RadialFunction from_fn(const RadialGrid& g, F&& fn) {
    RadialFunction r(g);
    for (std::size_t p = 0; p < g.size(); ++p) r.values[p] = fn(g.node(p));
    return r;
  }

  std::size_t size() const { return values.size(); }
  cplx operator[](std::size_t p) const { return values[p]; }
  cplx& operator[](std::size_t p) { return values[p]; }

  /// Off-grid evaluation by local Lagrange interpolation in log2(omega); zero outside the grid.
  cplx eval(double omega, int order = 8) const;
};

enum class Measure { domega, domega_over_omega };

/// <f, g>, conjugate-linear in g.
cplx inner(const RadialFunction& f, const RadialFunction& g, Measure m = Measure::domega);
double norm_sq(const RadialFunction& f, Measure m = Measure::domega);

/// Indicator of the half-open interval (lo, hi], scaled by value.
RadialFunction indicator(const RadialGrid& g, Dyadic lo, Dyadic hi, cplx value = 1.0);

struct WplusResult {
  RadialFunction f;
  double dropped_mass = 0.0;  // d(omega) mass of f that fell off the grid
  bool truncated() const { return dropped_mass > 0.0; }
};

/// (W+(b, a) f)(w) = a^{1/2} e^{-2 pi i b w} f(a w), a = 2^(p/Q).
WplusResult wplus(double b, int p, const RadialFunction& f);

/// S_k = sum_p g_p exp(sign * 2 pi i k nu_p) for k = -K..K.
std::vector<cplx> exp_sums(const std::vector<double>& nu, const std::vector<cplx>& g, int K, double sign);

/// <f, W+(2^j k, 2^j) phi> for k = -K..K; phi sampled on the grid of f.
std::vector<cplx> dilated_coeffs(const RadialFunction& f, const RadialFunction& phi, int j, int K);

/// Same for phi = scale * indicator of (2^{-j-1}, 2^{-j}]; uses only the band nodes.
std::vector<cplx> band_coeffs_shannon(const RadialFunction& f, int j, int K, cplx scale = 1.0);

/// 2^{j/2} conj(scale) sum over nodes in (2^{e-1}, 2^e] of w_p f_p e^{2 pi i 2^j k w_p}, k = -K..K.
std::vector<cplx> band_coeffs(const RadialFunction& f, int e, int j, int K, cplx scale = 1.0);

/// Node index range [first, last] of the band (2^{e-1}, 2^e]; false if not on the grid.
bool band_range(const RadialGrid& g, int e, std::size_t& first, std::size_t& last);

/// T_p = sum_k D_k exp(sign * 2 pi i k nu_p) for k = -K..K (D has 2K+1 entries).
std::vector<cplx> trig_eval(const std::vector<double>& nu, const std::vector<cplx>& D, int K, double sign);

}  // namespace schrolet
