#pragma once
#include <string>
#include <vector>

#include "schrolet/harmonics.hpp"

namespace schrolet {

/// (b, a, R) in (R x| R+) x SO(d).
struct GroupElement {
  double b = 0.0;
  double a = 1.0;
  Rotation R;

  static GroupElement identity(int d) { return {0.0, 1.0, Rotation::identity(d)}; }
  double gamma() const { return a; }
  double beta() const;  // a^{-d/2}
  /// p with a = 2^{p/Q}; throws if a is not on the lattice
  int lattice_exponent(int Q) const;
};

GroupElement mult(const GroupElement& x, const GroupElement& y);
GroupElement inverse(const GroupElement& x);

enum class SubgroupKind { cyclic2d, cyclic3d_z, dihedral3d };

SubgroupKind parse_subgroup_kind(const std::string& s);
std::string to_string(SubgroupKind k);

struct Irrep {
  std::string label;
  int dim = 1;
  std::vector<MatC> mats;  // one per group element, same order as FiniteSubgroup::elements
  cplx character(std::size_t g) const { return mats[g].trace(); }
};

struct FiniteSubgroup {
  SubgroupKind kind = SubgroupKind::cyclic2d;
  int param = 1;
  int d = 2;
  std::vector<Rotation> elements;
  std::vector<std::vector<int>> classes;
  std::vector<Irrep> irreps;
  std::vector<std::vector<int>> table;  // table[g][h] = index of g*h

  std::size_t order() const { return elements.size(); }
  int index_of(const Rotation& R, double tol = 1e-9) const;
  int irrep_index(const std::string& label) const;
};

FiniteSubgroup make_finite_subgroup(SubgroupKind kind, int param);

/// m_{i,chi} for every irrep (same order as F.irreps), via character inner products.
std::vector<int> multiplicities(const FiniteSubgroup& F, const AngularLabel& label);

enum class DeltaRule { cycle, first };

struct IsotypicBlock {
  int chi = 0;
  int mult = 0;
  std::vector<int> delta;  // delta_mu (0-based basis index in H_chi)
  std::vector<MatC> E;     // per mu: d_i x d_chi isometry with rho_i(g) E = E chi(g)
  std::vector<VecC> v;     // per mu: E w_delta, ||v||^2 = d_chi
};

struct IsotypicData {
  AngularLabel label;
  int dim = 1;
  std::vector<IsotypicBlock> blocks;  // one per irrep of F (mult may be 0)
};

/// w^chi_delta = sqrt(d_chi) e_delta
VecC basis_w(int d_chi, int delta);

IsotypicData isotypic(const FiniteSubgroup& F, const AngularLabel& label, DeltaRule rule = DeltaRule::cycle);

/// Max deviation of rho_i(g) E_mu from E_mu chi(g) over all blocks, slots and elements.
double intertwining_error(const FiniteSubgroup& F, const IsotypicData& iso);

/// (1/L) sum_l <w, chi(R_l) u> <chi'(R_l) u', w'>
cplx schur_check(const FiniteSubgroup& F, int chi, int chi2, const VecC& w, const VecC& w2, const VecC& u, const VecC& u2);

}  // namespace schrolet
