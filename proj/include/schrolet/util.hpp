#pragma once
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace schrolet {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLn2 = 0.69314718055994530942;

enum class ErrorKind { precondition, schema, io, check };

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail(const std::string& msg) {
  throw Error(ErrorKind::precondition, msg);
}

// Cascade summation; the tree depends only on the length, so results are
// reproducible regardless of thread scheduling upstream.
double pairwise_sum(const double* x, std::size_t n);
cplx pairwise_sum(const cplx* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }
inline cplx pairwise_sum(const std::vector<cplx>& x) { return pairwise_sum(x.data(), x.size()); }

/// Exact dyadic rational m * 2^e.
struct Dyadic {
  std::int64_t m = 0;
  int e = 0;

  Dyadic() = default;
  Dyadic(std::int64_t mant, int ex);
  static Dyadic pow2(int ex) { return Dyadic(1, ex); }
  static Dyadic from_double(double x);  // throws if x is not an exact dyadic

  double to_double() const;
  std::string str() const;
  bool is_pow2() const { return m == 1; }

  friend Dyadic operator+(Dyadic a, Dyadic b);
  friend Dyadic operator-(Dyadic a, Dyadic b);
  friend Dyadic operator*(Dyadic a, Dyadic b);
  friend bool operator<(Dyadic a, Dyadic b);
  friend bool operator==(Dyadic a, Dyadic b) { return a.m == b.m && a.e == b.e; }
  friend bool operator<=(Dyadic a, Dyadic b) { return !(b < a); }
};

Dyadic dmin(Dyadic a, Dyadic b);
Dyadic dmax(Dyadic a, Dyadic b);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

/// Global worker count for parallel maps (set by --threads).
void set_threads(int n);
int threads();

/// Runs fn(i) for i in [0, n); each index owns its output slot.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace schrolet
