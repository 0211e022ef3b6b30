#include "schrolet/util.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace schrolet {

namespace {
template <class T>
T cascade(const T* x, std::size_t n) {
  if (n <= 8) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return cascade(x, h) + cascade(x + h, n - h);
}

std::atomic<int> g_threads{1};
}  // namespace

double pairwise_sum(const double* x, std::size_t n) { return cascade(x, n); }
cplx pairwise_sum(const cplx* x, std::size_t n) { return cascade(x, n); }

Dyadic::Dyadic(std::int64_t mant, int ex) : m(mant), e(ex) {
  if (m == 0) {
    e = 0;
    return;
  }
  while ((m & 1) == 0) {
    m /= 2;
    ++e;
  }
}

Dyadic Dyadic::from_double(double x) {
  if (x == 0.0) return {};
  int ex = 0;
  double fr = std::frexp(x, &ex);
  double scaled = std::ldexp(fr, 53);
  if (scaled != std::floor(scaled)) fail("not a dyadic rational: " + std::to_string(x));
  return Dyadic(static_cast<std::int64_t>(scaled), ex - 53);
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(m), e); }

std::string Dyadic::str() const {
  if (m == 0) return "0";
  if (e >= 0) return std::to_string(m) + "*2^" + std::to_string(e);
  return std::to_string(m) + "/2^" + std::to_string(-e);
}

namespace {
// Bring both to the smaller exponent; guards against overflow.
void align(Dyadic a, Dyadic b, std::int64_t& ma, std::int64_t& mb, int& e) {
  if (a.m == 0) {
    ma = 0;
    mb = b.m;
    e = b.e;
    return;
  }
  if (b.m == 0) {
    ma = a.m;
    mb = 0;
    e = a.e;
    return;
  }
  e = std::min(a.e, b.e);
  int sa = a.e - e, sb = b.e - e;
  if (sa > 60 || sb > 60) fail("dyadic exponent gap too large");
  ma = a.m * (std::int64_t(1) << sa);
  mb = b.m * (std::int64_t(1) << sb);
  if ((sa && ma / (std::int64_t(1) << sa) != a.m) || (sb && mb / (std::int64_t(1) << sb) != b.m))
    fail("dyadic overflow");
}
}  // namespace

Dyadic operator+(Dyadic a, Dyadic b) {
  std::int64_t ma, mb;
  int e;
  align(a, b, ma, mb, e);
  return Dyadic(ma + mb, e);
}

Dyadic operator-(Dyadic a, Dyadic b) {
  std::int64_t ma, mb;
  int e;
  align(a, b, ma, mb, e);
  return Dyadic(ma - mb, e);
}

Dyadic operator*(Dyadic a, Dyadic b) {
  __int128 p = static_cast<__int128>(a.m) * b.m;
  if (p > INT64_MAX || p < INT64_MIN) fail("dyadic overflow");
  return Dyadic(static_cast<std::int64_t>(p), a.e + b.e);
}

bool operator<(Dyadic a, Dyadic b) { return (a - b).m < 0; }

Dyadic dmin(Dyadic a, Dyadic b) { return b < a ? b : a; }
Dyadic dmax(Dyadic a, Dyadic b) { return a < b ? b : a; }

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  if (n == 1) {
    w[0] = 2.0;
    return;
  }
  auto legendre = [n](double z, double& pn, double& dpn) {
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    pn = p1;
    dpn = n * (z * p1 - p0) / (z * z - 1.0);
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pn, dpn;
    for (int it = 0; it < 100; ++it) {
      legendre(z, pn, dpn);
      double dz = pn / dpn;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    legendre(z, pn, dpn);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dpn * dpn);
  }
}

void set_threads(int n) { g_threads = std::max(1, n); }
int threads() { return g_threads; }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  int nt = std::min<std::size_t>(threads(), n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace schrolet
