#include "schrolet/group.hpp"

#include <algorithm>
#include <cmath>

namespace schrolet {

double GroupElement::beta() const { return std::pow(a, -R.d / 2.0); }

int GroupElement::lattice_exponent(int Q) const {
  double p = std::log2(a) * Q;
  double pr = std::round(p);
  if (std::abs(p - pr) > 1e-9) fail("dilation a = " + std::to_string(a) + " is not on the 2^(Z/Q) lattice");
  return static_cast<int>(pr);
}

GroupElement mult(const GroupElement& x, const GroupElement& y) { return {x.b + x.a * y.b, x.a * y.a, x.R * y.R}; }

GroupElement inverse(const GroupElement& x) { return {-x.b / x.a, 1.0 / x.a, x.R.inverse()}; }

SubgroupKind parse_subgroup_kind(const std::string& s) {
  if (s == "cyclic-2D") return SubgroupKind::cyclic2d;
  if (s == "cyclic-3D-z") return SubgroupKind::cyclic3d_z;
  if (s == "dihedral-3D") return SubgroupKind::dihedral3d;
  throw Error(ErrorKind::schema, "unknown subgroup kind '" + s + "'");
}

std::string to_string(SubgroupKind k) {
  switch (k) {
    case SubgroupKind::cyclic2d: return "cyclic-2D";
    case SubgroupKind::cyclic3d_z: return "cyclic-3D-z";
    case SubgroupKind::dihedral3d: return "dihedral-3D";
  }
  return "?";
}

int FiniteSubgroup::index_of(const Rotation& R, double tol) const {
  for (std::size_t g = 0; g < elements.size(); ++g)
    if (elements[g].distance(R) < tol) return static_cast<int>(g);
  return -1;
}

int FiniteSubgroup::irrep_index(const std::string& label) const {
  for (std::size_t c = 0; c < irreps.size(); ++c)
    if (irreps[c].label == label) return static_cast<int>(c);
  fail("no irrep labelled " + label);
}

namespace {

MatC scalar(cplx z) {
  MatC m(1, 1);
  m(0, 0) = z;
  return m;
}

void finish(FiniteSubgroup& F) {
  std::size_t n = F.order();
  F.table.assign(n, std::vector<int>(n, -1));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      int k = F.index_of(F.elements[g] * F.elements[h]);
      if (k < 0) fail("finite subgroup not closed under products");
      F.table[g][h] = k;
    }
  for (std::size_t g = 0; g < n; ++g)
    if (F.index_of(F.elements[g].inverse()) < 0) fail("finite subgroup not closed under inverses");
  std::vector<int> seen(n, 0);
  for (std::size_t g = 0; g < n; ++g) {
    if (seen[g]) continue;
    std::vector<int> cls;
    for (std::size_t h = 0; h < n; ++h) {
      int c = F.index_of(F.elements[h] * F.elements[g] * F.elements[h].inverse());
      if (!seen[c]) {
        seen[c] = 1;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    F.classes.push_back(cls);
  }
}

}  // namespace

FiniteSubgroup make_finite_subgroup(SubgroupKind kind, int param) {
  FiniteSubgroup F;
  F.kind = kind;
  F.param = param;
  if (kind == SubgroupKind::cyclic2d || kind == SubgroupKind::cyclic3d_z) {
    if (param < 1) fail("cyclic subgroup needs L >= 1");
    int L = param;
    F.d = kind == SubgroupKind::cyclic2d ? 2 : 3;
    for (int l = 0; l < L; ++l) {
      double t = 2 * kPi * l / L;
      F.elements.push_back(F.d == 2 ? Rotation::planar(t) : Rotation::euler(0.0, 0.0, t));
    }
    for (int c = 0; c < L; ++c) {
      Irrep ir{"chi" + std::to_string(c), 1, {}};
      for (int l = 0; l < L; ++l) ir.mats.push_back(scalar(std::polar(1.0, -2 * kPi * double(c) * l / L)));
      F.irreps.push_back(ir);
    }
  } else {
    if (param < 2) fail("dihedral subgroup needs M >= 2");
    int M = param;
    F.d = 3;
    Rotation s = Rotation::axis_angle(Eigen::Vector3d::UnitX(), kPi);
    for (int k = 0; k < M; ++k) F.elements.push_back(Rotation::euler(0.0, 0.0, 2 * kPi * k / M));
    for (int k = 0; k < M; ++k) F.elements.push_back(s * Rotation::euler(0.0, 0.0, 2 * kPi * k / M));
    auto one_dim = [&](const std::string& name, double rsign, double ssign) {
      Irrep ir{name, 1, {}};
      for (int k = 0; k < M; ++k) ir.mats.push_back(scalar(std::pow(rsign, k)));
      for (int k = 0; k < M; ++k) ir.mats.push_back(scalar(ssign * std::pow(rsign, k)));
      F.irreps.push_back(ir);
    };
    one_dim("A1", 1, 1);
    one_dim("A2", 1, -1);
    if (M % 2 == 0) {
      one_dim("B1", -1, 1);
      one_dim("B2", -1, -1);
    }
    for (int h = 1; 2 * h < M; ++h) {
      Irrep ir{"E" + std::to_string(h), 2, {}};
      for (int k = 0; k < M; ++k) {
        MatC m = MatC::Zero(2, 2);
        m(0, 0) = std::polar(1.0, 2 * kPi * h * k / M);
        m(1, 1) = std::conj(m(0, 0));
        ir.mats.push_back(m);
      }
      for (int k = 0; k < M; ++k) {
        MatC m = MatC::Zero(2, 2);
        m(0, 1) = std::polar(1.0, -2 * kPi * h * k / M);
        m(1, 0) = std::conj(m(0, 1));
        ir.mats.push_back(m);
      }
      F.irreps.push_back(ir);
    }
  }
  finish(F);
  return F;
}

std::vector<int> multiplicities(const FiniteSubgroup& F, const AngularLabel& label) {
  if (label.d != F.d) fail("multiplicities: label and subgroup dimension differ");
  std::size_t n = F.order();
  std::vector<cplx> tr(n);
  for (std::size_t g = 0; g < n; ++g) tr[g] = rho_matrix(label, F.elements[g]).trace();
  std::vector<int> out;
  for (const auto& ir : F.irreps) {
    std::vector<cplx> t(n);
    for (std::size_t g = 0; g < n; ++g) t[g] = tr[g] * std::conj(ir.character(g));
    cplx m = pairwise_sum(t) / double(n);
    double mr = std::round(m.real());
    if (std::abs(m - cplx(mr, 0.0)) > 1e-8 || mr < 0)
      fail("non-integral multiplicity " + std::to_string(m.real()) + " for irrep " + ir.label);
    out.push_back(static_cast<int>(mr));
  }
  return out;
}

VecC basis_w(int d_chi, int delta) {
  VecC w = VecC::Zero(d_chi);
  w(delta) = std::sqrt(double(d_chi));
  return w;
}

namespace {

// Column-pivoted Gram-Schmidt on the columns of P: largest remaining column norm wins,
// ties go to the lowest index.
std::vector<VecC> pivoted_basis(const MatC& P, double tol) {
  MatC A = P;
  std::vector<VecC> out;
  std::vector<bool> used(A.cols(), false);
  while (true) {
    int best = -1;
    double bn = tol;
    for (int c = 0; c < A.cols(); ++c) {
      if (used[c]) continue;
      double nc = A.col(c).norm();
      if (nc > bn * (1 + 1e-12)) {
        bn = nc;
        best = c;
      }
    }
    if (best < 0) break;
    used[best] = true;
    VecC q = A.col(best) / A.col(best).norm();
    out.push_back(q);
    for (int c = 0; c < A.cols(); ++c) A.col(c) -= q * (q.adjoint() * A.col(c))(0, 0);
  }
  return out;
}

}  // namespace

IsotypicData isotypic(const FiniteSubgroup& F, const AngularLabel& label, DeltaRule rule) {
  auto mults = multiplicities(F, label);
  IsotypicData out;
  out.label = label;
  out.dim = label_dim(label);
  std::size_t n = F.order();
  std::vector<MatC> rho(n);
  for (std::size_t g = 0; g < n; ++g) rho[g] = rho_matrix(label, F.elements[g]);
  int total = 0;
  for (std::size_t c = 0; c < F.irreps.size(); ++c) {
    const auto& ir = F.irreps[c];
    IsotypicBlock blk;
    blk.chi = static_cast<int>(c);
    blk.mult = mults[c];
    auto proj = [&](int t, int s) {
      MatC P = MatC::Zero(out.dim, out.dim);
      for (std::size_t g = 0; g < n; ++g) P += std::conj(ir.mats[g](t, s)) * rho[g];
      return MatC(P * (double(ir.dim) / n));
    };
    if (blk.mult > 0) {
      MatC P11 = proj(0, 0);
      auto us = pivoted_basis(P11, 1e-8);
      if (static_cast<int>(us.size()) != blk.mult)
        fail("isotypic: projector rank " + std::to_string(us.size()) + " != multiplicity " + std::to_string(blk.mult));
      std::vector<MatC> Pt1;
      for (int t = 0; t < ir.dim; ++t) Pt1.push_back(proj(t, 0));
      for (int mu = 0; mu < blk.mult; ++mu) {
        MatC E(out.dim, ir.dim);
        for (int t = 0; t < ir.dim; ++t) E.col(t) = Pt1[t] * us[mu];
        int delta = rule == DeltaRule::cycle ? mu % ir.dim : 0;
        blk.E.push_back(E);
        blk.delta.push_back(delta);
        blk.v.push_back(E * basis_w(ir.dim, delta));
      }
    }
    total += blk.mult * ir.dim;
    out.blocks.push_back(blk);
  }
  if (total != out.dim) fail("isotypic: sum m d_chi != d_i");
  return out;
}

double intertwining_error(const FiniteSubgroup& F, const IsotypicData& iso) {
  double err = 0.0;
  for (std::size_t g = 0; g < F.order(); ++g) {
    MatC r = rho_matrix(iso.label, F.elements[g]);
    for (const auto& blk : iso.blocks)
      for (const auto& E : blk.E) err = std::max(err, (r * E - E * F.irreps[blk.chi].mats[g]).cwiseAbs().maxCoeff());
  }
  return err;
}

cplx schur_check(const FiniteSubgroup& F, int chi, int chi2, const VecC& w, const VecC& w2, const VecC& u, const VecC& u2) {
  const auto& A = F.irreps.at(chi);
  const auto& B = F.irreps.at(chi2);
  if (w.size() != A.dim || u.size() != A.dim || w2.size() != B.dim || u2.size() != B.dim)
    fail("schur_check: vector dimension does not match irrep");
  std::vector<cplx> t(F.order());
  for (std::size_t g = 0; g < F.order(); ++g) {
    cplx x = (A.mats[g] * u).dot(w);   // <w, chi(g) u> = (chi u)^H w
    cplx y = w2.dot(B.mats[g] * u2);   // <chi'(g) u', w'> = w'^H chi u'
    t[g] = x * y;
  }
  return pairwise_sum(t) / double(F.order());
}

}  // namespace schrolet
