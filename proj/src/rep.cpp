#include "schrolet/rep.hpp"

#include <cmath>

namespace schrolet {

CartesianSignal::CartesianSignal(int d_, int N_, double Xi_) : d(d_), N(N_), Xi(Xi_) {
  if (d != 2 && d != 3) fail("CartesianSignal: d must be 2 or 3");
  if (N < 2 || !(Xi > 0)) fail("CartesianSignal: need N >= 2 and Xi > 0");
  std::size_t n = 1;
  for (int k = 0; k < d; ++k) n *= static_cast<std::size_t>(N);
  values.assign(n, cplx{});
}

Eigen::Vector3d CartesianSignal::point(std::size_t idx) const {
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  for (int k = d - 1; k >= 0; --k) {
    p(k) = coord(static_cast<int>(idx % N));
    idx /= N;
  }
  return p;
}

double CartesianSignal::norm_sq() const {
  std::vector<double> t(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) t[i] = std::norm(values[i]);
  return pairwise_sum(t) * std::pow(h(), d);
}

namespace {

// Lagrange stencil for fractional index u on [0, n-1]; false if outside.
bool stencil(double u, int n, int order, int& i0, double* w) {
  if (u < -1e-9 || u > n - 1 + 1e-9) return false;
  order = std::min(order, n);
  i0 = static_cast<int>(std::floor(u)) - order / 2 + 1;
  i0 = std::clamp(i0, 0, n - order);
  for (int a = 0; a < order; ++a) {
    double l = 1.0;
    for (int b = 0; b < order; ++b)
      if (b != a) l *= (u - (i0 + b)) / double(a - b);
    w[a] = l;
  }
  return true;
}

double reduced_phase(double x) { return x - std::floor(x); }

}  // namespace

cplx CartesianSignal::interp(const Eigen::Vector3d& xi, int order) const {
  int i0[3];
  double w[3][16];
  if (order < 1 || order > 16) fail("interp: order must be in [1, 16]");
  int ord = std::min(order, N);
  for (int k = 0; k < d; ++k)
    if (!stencil(xi(k) / h() + (N - 1) / 2.0, N, ord, i0[k], w[k])) return 0.0;
  cplx acc = 0.0;
  if (d == 2) {
    for (int a = 0; a < ord; ++a)
      for (int b = 0; b < ord; ++b)
        acc += w[0][a] * w[1][b] * values[static_cast<std::size_t>(i0[0] + a) * N + (i0[1] + b)];
  } else {
    for (int a = 0; a < ord; ++a)
      for (int b = 0; b < ord; ++b)
        for (int c = 0; c < ord; ++c)
          acc += w[0][a] * w[1][b] * w[2][c] *
                 values[(static_cast<std::size_t>(i0[0] + a) * N + (i0[1] + b)) * N + (i0[2] + c)];
  }
  return acc;
}

CartesianSignal propagate(const CartesianSignal& f, double b) {
  CartesianSignal g = f;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double ph = reduced_phase(b * f.point(i).squaredNorm());
    g.values[i] = std::polar(1.0, -2 * kPi * ph) * f.values[i];
  }
  return g;
}

CartesianSignal pi_hat_apply(const GroupElement& x, const CartesianSignal& f, int order, double loss_tol) {
  if (x.R.d != f.d) fail("pi_hat_apply: rotation dimension mismatch");
  double sa = std::sqrt(x.a);
  Eigen::Matrix3d Rinv = x.R.M.transpose();
  double half = f.Xi - f.h() / 2;
  std::vector<double> lost;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.values[i] == cplx{}) continue;
    Eigen::Vector3d back = x.R.M * f.point(i) / sa;
    for (int k = 0; k < f.d; ++k)
      if (std::abs(back(k)) > half * (1 + 1e-12)) {
        lost.push_back(std::norm(f.values[i]));
        break;
      }
  }
  double lost_mass = pairwise_sum(lost) * std::pow(f.h(), f.d);
  if (lost_mass > loss_tol * f.norm_sq())
    fail("pi_hat_apply: dilation/rotation pushes support off the Cartesian grid (lost mass " + std::to_string(lost_mass) + ")");
  CartesianSignal g(f.d, f.N, f.Xi);
  double amp = std::pow(x.a, f.d / 4.0);
  parallel_for(g.size(), [&](std::size_t i) {
    Eigen::Vector3d xi = g.point(i);
    double ph = reduced_phase(x.b * xi.squaredNorm());
    g.values[i] = amp * std::polar(1.0, -2 * kPi * ph) * f.interp(sa * (Rinv * xi), order);
  });
  return g;
}

SequenceSignal::SequenceSignal(int d_, const RadialGrid& g, std::vector<AngularLabel> ls) : d(d_), grid(g), labels(std::move(ls)) {
  for (const auto& l : labels) {
    if (l.d != d) fail("SequenceSignal: label dimension mismatch");
    comps.emplace_back(label_dim(l), RadialFunction(g));
  }
}

SequenceSignal SequenceSignal::labels_2d(const RadialGrid& g, int nmax) {
  std::vector<AngularLabel> ls;
  for (int n = -nmax; n <= nmax; ++n) ls.push_back({2, n});
  return SequenceSignal(2, g, ls);
}

SequenceSignal SequenceSignal::labels_3d(const RadialGrid& g, int imax) {
  std::vector<AngularLabel> ls;
  for (int i = 0; i <= imax; ++i) ls.push_back({3, i});
  return SequenceSignal(3, g, ls);
}

int SequenceSignal::label_pos(const AngularLabel& l) const {
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == l) return static_cast<int>(k);
  return -1;
}

double SequenceSignal::norm_sq() const {
  std::vector<double> t;
  for (const auto& c : comps)
    for (const auto& r : c) t.push_back(schrolet::norm_sq(r));
  return pairwise_sum(t);
}

bool SequenceSignal::same_shape(const SequenceSignal& o) const {
  if (d != o.d || grid != o.grid || labels.size() != o.labels.size()) return false;
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (!(labels[k] == o.labels[k])) return false;
  return true;
}

cplx inner(const SequenceSignal& f, const SequenceSignal& g) {
  if (!f.same_shape(g)) fail("inner: sequence signal shape mismatch");
  std::vector<cplx> t;
  for (std::size_t l = 0; l < f.comps.size(); ++l)
    for (std::size_t m = 0; m < f.comps[l].size(); ++m) t.push_back(inner(f.comps[l][m], g.comps[l][m]));
  return pairwise_sum(t);
}

SequenceSignal operator+(const SequenceSignal& f, const SequenceSignal& g) {
  if (!f.same_shape(g)) fail("operator+: sequence signal shape mismatch");
  SequenceSignal r = f;
  for (std::size_t l = 0; l < f.comps.size(); ++l)
    for (std::size_t m = 0; m < f.comps[l].size(); ++m)
      for (std::size_t p = 0; p < f.grid.size(); ++p) r.comps[l][m][p] += g.comps[l][m][p];
  return r;
}

SequenceSignal operator*(cplx s, const SequenceSignal& f) {
  SequenceSignal r = f;
  for (auto& c : r.comps)
    for (auto& rf : c)
      for (auto& v : rf.values) v *= s;
  return r;
}

double max_abs_diff(const SequenceSignal& f, const SequenceSignal& g) {
  if (!f.same_shape(g)) fail("max_abs_diff: sequence signal shape mismatch");
  double e = 0.0;
  for (std::size_t l = 0; l < f.comps.size(); ++l)
    for (std::size_t m = 0; m < f.comps[l].size(); ++m)
      for (std::size_t p = 0; p < f.grid.size(); ++p) e = std::max(e, std::abs(f.comps[l][m][p] - g.comps[l][m][p]));
  return e;
}

PiPrimeResult pi_prime_apply(const GroupElement& x, const SequenceSignal& f) {
  if (x.R.d != f.d) fail("pi_prime_apply: rotation dimension mismatch");
  int p = x.lattice_exponent(f.grid.Q);
  PiPrimeResult out{f, 0.0};
  std::vector<double> dropped(f.labels.size(), 0.0);
  parallel_for(f.labels.size(), [&](std::size_t l) {
    int dl = label_dim(f.labels[l]);
    std::vector<RadialFunction> shifted;
    for (int m = 0; m < dl; ++m) {
      auto w = wplus(x.b, p, f.comps[l][m]);
      dropped[l] += w.dropped_mass;
      shifted.push_back(std::move(w.f));
    }
    MatC r = rho_matrix(f.labels[l], x.R);
    for (int mp = 0; mp < dl; ++mp)
      for (std::size_t q = 0; q < f.grid.size(); ++q) {
        cplx acc = 0.0;
        for (int m = 0; m < dl; ++m) acc += r(mp, m) * shifted[m][q];
        out.f.comps[l][mp][q] = acc;
      }
  });
  out.dropped_mass = pairwise_sum(dropped);
  return out;
}

namespace {

struct AngularRule {
  std::vector<Eigen::Vector3d> points;
  std::vector<double> weights;
  std::vector<VecC> conj_basis;  // per label: conj(Y) at each point, point-major
};

int max_label(const std::vector<AngularLabel>& labels) {
  int m = 0;
  for (const auto& l : labels) m = std::max(m, std::abs(l.index));
  return m;
}

AngularRule angular_rule(int d, const std::vector<AngularLabel>& labels, int npts) {
  AngularRule r;
  int lm = max_label(labels);
  if (d == 2) {
    int M = npts > 0 ? npts : std::max(64, 8 * (lm + 1));
    for (int k = 0; k < M; ++k) {
      double t = 2 * kPi * k / M;
      r.points.emplace_back(std::cos(t), std::sin(t), 0.0);
      r.weights.push_back(2 * kPi / M);
    }
  } else {
    int nt = npts > 0 ? npts : lm + 24;
    auto s = sphere_rule(nt, 2 * nt);
    r.points = s.points;
    r.weights = s.weights;
  }
  for (const auto& l : labels) {
    int dl = label_dim(l);
    VecC cb(r.points.size() * dl);
    for (std::size_t q = 0; q < r.points.size(); ++q) {
      if (d == 2) {
        double t = std::atan2(r.points[q](1), r.points[q](0));
        cb(q) = std::conj(sph_basis_eval(l, 0, SpherePoint::angle(t)));
      } else {
        VecC y = sph_basis_all(l.index, r.points[q]);
        for (int m = 0; m < dl; ++m) cb(q * dl + m) = std::conj(y(m));
      }
    }
    r.conj_basis.push_back(cb);
  }
  return r;
}

SequenceSignal project(const std::function<cplx(const Eigen::Vector3d&)>& f, int d, const RadialGrid& grid,
                       const std::vector<AngularLabel>& labels, int npts) {
  SequenceSignal out(d, grid, labels);
  auto rule = angular_rule(d, labels, npts);
  std::size_t nq = rule.points.size();
  parallel_for(grid.size(), [&](std::size_t p) {
    double w = grid.node(p);
    double r = std::sqrt(w);
    double jf = std::pow(w, (d - 2) / 4.0) / std::sqrt(2.0);
    std::vector<cplx> vals(nq);
    for (std::size_t q = 0; q < nq; ++q) vals[q] = rule.weights[q] * f(r * rule.points[q]);
    for (std::size_t l = 0; l < labels.size(); ++l) {
      int dl = label_dim(labels[l]);
      for (int m = 0; m < dl; ++m) {
        std::vector<cplx> t(nq);
        for (std::size_t q = 0; q < nq; ++q) t[q] = vals[q] * rule.conj_basis[l](q * dl + m);
        out.comps[l][m][p] = jf * pairwise_sum(t);
      }
    }
  });
  return out;
}

}  // namespace

SequenceSignal to_sequence(const CartesianSignal& f, const RadialGrid& grid, const std::vector<AngularLabel>& labels,
                           const AdapterOptions& opt) {
  for (const auto& l : labels)
    if (l.d != f.d) fail("to_sequence: label dimension mismatch");
  auto out = project([&](const Eigen::Vector3d& xi) { return f.interp(xi, opt.order); }, f.d, grid, labels, opt.angular_points);
  if (opt.check_resolution) {
    std::vector<double> peak(labels.size(), 0.0);
    double global = 0.0;
    for (std::size_t l = 0; l < labels.size(); ++l)
      for (const auto& rf : out.comps[l])
        for (auto v : rf.values) peak[l] = std::max(peak[l], std::abs(v));
    for (double p : peak) global = std::max(global, p);
    // highest mode above 1e-6 of the global peak; its smallest circle reaching 1e-3 of its own peak must resolve it
    int top = -1;
    for (std::size_t l = 0; l < labels.size(); ++l)
      if (peak[l] > 1e-6 * global && (top < 0 || std::abs(labels[l].index) > std::abs(labels[top].index))) top = static_cast<int>(l);
    int n = top < 0 ? 0 : std::abs(labels[top].index);
    if (n > 0) {
      for (std::size_t p = 0; p < grid.size(); ++p) {
        double r = std::sqrt(grid.node(p));
        if (r > f.Xi) break;
        bool content = false;
        for (const auto& rf : out.comps[top])
          if (std::abs(rf[p]) > 1e-3 * peak[top]) content = true;
        if (!content) continue;
        if (2 * kPi * r / (n * f.h()) < 8.0)
          fail("to_sequence: Cartesian grid too coarse for angular mode " + std::to_string(n) + " at radius " + std::to_string(r));
        break;
      }
    }
  }
  return out;
}

SequenceSignal to_sequence(const std::function<cplx(const Eigen::Vector3d&)>& f, int d, const RadialGrid& grid,
                           const std::vector<AngularLabel>& labels, int angular_points) {
  return project(f, d, grid, labels, angular_points);
}

cplx from_sequence_at(const SequenceSignal& g, const Eigen::Vector3d& xi) {
  double w = xi.squaredNorm();
  if (w <= 0.0) return 0.0;
  double r = std::sqrt(w);
  if (w < g.grid.node(0) || w > g.grid.node(g.grid.size() - 1)) return 0.0;
  cplx acc = 0.0;
  for (std::size_t l = 0; l < g.labels.size(); ++l) {
    const auto& lab = g.labels[l];
    if (g.d == 2) {
      acc += g.comps[l][0].eval(w) * sph_basis_eval(lab, 0, SpherePoint::angle(std::atan2(xi(1), xi(0))));
    } else {
      VecC y = sph_basis_all(lab.index, xi / r);
      for (int m = 0; m < y.size(); ++m) acc += g.comps[l][m].eval(w) * y(m);
    }
  }
  return std::sqrt(2.0) * std::pow(w, -(g.d - 2) / 4.0) * acc;
}

CartesianSignal from_sequence(const SequenceSignal& g, int N, double Xi) {
  CartesianSignal out(g.d, N, Xi);
  parallel_for(out.size(), [&](std::size_t i) { out.values[i] = from_sequence_at(g, out.point(i)); });
  return out;
}

DisintegrationReport disintegration_check(const std::function<double(const Eigen::Vector3d&)>& phi, int d, double R, int n) {
  if (d != 2 && d != 3) fail("disintegration_check: d must be 2 or 3");
  std::vector<double> x, w;
  gauss_legendre(16, x, w);
  // composite Gauss-Legendre on [-R, R]: n/16 panels of 16 points
  int panels = std::max(1, n / 16);
  std::vector<double> cx, cw;
  for (int p = 0; p < panels; ++p) {
    double a = -R + 2 * R * p / panels, b = a + 2 * R / panels;
    for (int k = 0; k < 16; ++k) {
      cx.push_back(0.5 * (a + b) + 0.5 * (b - a) * x[k]);
      cw.push_back(0.5 * (b - a) * w[k]);
    }
  }
  DisintegrationReport rep;
  std::vector<double> terms;
  std::size_t m = cx.size();
  if (d == 2) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) terms.push_back(cw[i] * cw[j] * phi({cx[i], cx[j], 0.0}));
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) terms.push_back(cw[i] * cw[j] * cw[k] * phi({cx[i], cx[j], cx[k]}));
  }
  rep.cartesian = pairwise_sum(terms);
  // fibred side: omega panels graded geometrically towards 0, angular rule per omega
  std::vector<AngularLabel> none;
  auto rule = angular_rule(d, none, d == 2 ? 4 * n : n);
  terms.clear();
  double top = R * R * (d == 2 ? 2.0 : 3.0);
  for (int k = 0; k < 60; ++k) {
    double b = top * std::ldexp(1.0, -k), a = b / 2;
    for (int q = 0; q < 16; ++q) {
      double om = 0.5 * (a + b) + 0.5 * (b - a) * x[q];
      double wq = 0.5 * (b - a) * w[q];
      std::vector<double> ang(rule.points.size());
      for (std::size_t s = 0; s < rule.points.size(); ++s) ang[s] = rule.weights[s] * phi(std::sqrt(om) * rule.points[s]);
      terms.push_back(wq * std::pow(om, (d - 2) / 2.0) / 2 * pairwise_sum(ang));
    }
  }
  rep.fibred = pairwise_sum(terms);
  return rep;
}

}  // namespace schrolet
