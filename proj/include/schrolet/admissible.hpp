#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schrolet/group.hpp"
#include "schrolet/radial.hpp"

namespace schrolet {

enum class ConstantMode { computed, printed, continuous, explicit_value };

ConstantMode parse_constant_mode(const std::string& s);
std::string to_string(ConstantMode m);

/// Mother profile: an indicator c * chi_(lo, hi] or a sampled user function.
struct ProfileSpec {
  bool shannon = true;
  ConstantMode mode = ConstantMode::computed;
  double explicit_value = 1.0;
  double scale = 1.0;
  std::optional<RadialFunction> user;  // sampled on the generator grid
};

enum class AlphaRule { interleaved_2d, bijection, constant };

struct AlphaSpec {
  AlphaRule rule = AlphaRule::interleaved_2d;
  std::map<int, Dyadic> overrides;  // keyed by slot index n (2D label n, general bijection index); 0 drops the slot
};

/// One generator component phi_slot (x) v_slot living in H_i.
struct Slot {
  AngularLabel label;
  int chi = 0;
  int mu = 0;
  int delta = 0;
  int n = 0;          // 2D label n or bijection index
  Dyadic alpha;       // phi_slot(w) = phi(w / alpha)
  cplx c = 1.0;       // indicator value (shannon profiles)
  MatC E;             // d_i x d_chi intertwiner
  VecC v;             // E w_delta
  RadialFunction phi; // samples on the generator grid

  bool indicator() const { return analytic; }
  bool analytic = true;
  Dyadic lo, hi;      // support (lo, hi] when analytic
  /// exponent s with alpha = 2^{-s}; only meaningful when alpha is a power of two
  int shift() const;
  bool pow2_band() const;  // support is exactly (2^{-s-1}, 2^{-s}]
  /// Exact value at any omega (analytic profiles) or Lagrange-interpolated samples.
  cplx eval(double omega) const;
};

struct Generator {
  int d = 2;
  int L = 1;
  FiniteSubgroup F;
  RadialGrid grid;
  std::vector<AngularLabel> labels;
  std::vector<Slot> slots;
  double c = 1.0;  // mother constant actually used
  ConstantMode mode = ConstantMode::computed;
  std::string id;
  double alpha_tail = 0.0;  // sum over inactive slots of d_chi * alpha (truncated index set)

  /// ||eta||^2 from exact support lengths (analytic profiles), optionally with the alpha tail.
  double norm_sq_exact(bool include_tail) const;
  /// sum over slots of d_chi ||phi_slot||^2 on the grid
  double norm_sq_grid() const;
  std::vector<std::size_t> slots_of_label(const AngularLabel& l) const;
};

Dyadic interleaved_alpha_2d(int n);

/// 2D family: labels n in [-nmax, nmax], F = cyclic-2D(L).
Generator build_generator_2d(const ProfileSpec& profile, const AlphaSpec& alphas, int L, int nmax, const RadialGrid& grid);

/// General construction for d = 3: slots (i, chi, mu) for i <= imax enumerated lexicographically,
/// alpha = 2^{-n} by that bijection.
Generator build_generator_general(const ProfileSpec& profile, const AlphaSpec& alphas, const FiniteSubgroup& F, int imax,
                                  const RadialGrid& grid, DeltaRule delta = DeltaRule::cycle);

/// Sampled radial part of (S eta)_i as a SequenceSignal-compatible coordinate set.
std::vector<RadialFunction> generator_component(const Generator& g, const AngularLabel& l);

struct ConditionReport {
  std::string id;
  std::string description;
  double tolerance = 0.0;
  double max_residual = 0.0;
  bool pass = false;
  std::vector<double> residuals;
  std::map<std::string, double> measured;
  std::vector<std::string> notes;

  void finish() { pass = max_residual <= tolerance; }
};

ConditionReport check_continuous_admissibility(const Generator& g, double rescale = 1.0, double tol = 1e-10);

std::vector<ConditionReport> check_discrete_conditions(const Generator& g, double tol = 1e-12);

ConditionReport check_support_disjointness(const Generator& g);

/// True when two slots share an irrep and a basis vector w^chi_delta (their cross terms survive Schur).
bool same_channel(const Slot& a, const Slot& b);

}  // namespace schrolet
