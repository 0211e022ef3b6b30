#pragma once
#include <random>
#include <string>
#include <vector>

#include "schrolet/admissible.hpp"
#include "schrolet/rep.hpp"

namespace schrolet {

/// Points x_{j,k,l} = (2^j k, 2^j, R_l), j in [jmin, jmax], |k| <= K, l over the subgroup.
struct SamplingGrid {
  int jmin = 0;
  int jmax = 0;
  int K = 0;
  int L = 1;

  int nj() const { return jmax - jmin + 1; }
  int nk() const { return 2 * K + 1; }
  std::size_t size() const { return std::size_t(nj()) * nk() * L; }
  /// lexicographic (j, k, l)
  std::size_t index(int j, int k, int l) const { return (std::size_t(j - jmin) * nk() + (k + K)) * L + l; }
  GroupElement point(const FiniteSubgroup& F, int j, int k, int l) const;
};

SamplingGrid make_sampling_grid(const Generator& g, int jmin, int jmax, int K);

struct CoefficientTable {
  SamplingGrid grid;
  std::string generator_id;
  std::vector<cplx> c;                 // ordered by SamplingGrid::index
  std::vector<double> dropped_mass;    // per j: fraction of slot profile mass dilated off the radial grid

  cplx at(int j, int k, int l) const { return c[grid.index(j, k, l)]; }
  cplx& at(int j, int k, int l) { return c[grid.index(j, k, l)]; }
  double sum_sq() const;
};

enum class AnalysisPath { fast, direct };

CoefficientTable analyze(const SequenceSignal& f, const Generator& g, const SamplingGrid& s,
                         AnalysisPath path = AnalysisPath::fast);

/// Sum of c_{jkl} pi'(x_{jkl}) eta over the table, on the labels of `shape`.
SequenceSignal synthesize(const CoefficientTable& c, const Generator& g, const SequenceSignal& shape);

struct ParsevalReport {
  double sum_sq = 0.0;
  double norm_sq = 0.0;
  double ratio = 0.0;
  double tail_bound = 0.0;    // fraction of ||f||^2 outside the bands reached by the sampled dilations
  double tolerance = 0.0;
  bool inconclusive = false;  // tail_bound exceeds the tolerance
  bool pass = false;
};

ParsevalReport parseval_report(const SequenceSignal& f, const Generator& g, const SamplingGrid& s, double tol = 1e-8);

/// eta as a sequence signal on the given labels (zero on labels without slots).
SequenceSignal generator_signal(const Generator& g, const std::vector<AngularLabel>& labels);

/// pi'(x_{jkl}) eta.
SequenceSignal frame_vector(const Generator& g, const SamplingGrid& s, const std::vector<AngularLabel>& labels, int j,
                            int k, int l);

/// <pi'(x1) eta, pi'(x2) eta> from exact interval integrals; indicator profiles only.
cplx frame_inner_exact(const Generator& g, int j1, int k1, int l1, int j2, int k2, int l2);

struct TestSignal {
  SequenceSignal f;
  std::vector<int> content_slots;  // slot indices carrying content
};

/// Random band signal: on every slot whose band fraction w satisfies K w >= min_periods, and every
/// sampled dilation, each block coordinate is a sin^8 window times a random trig polynomial of
/// degree `harmonics` periodic on the band.
TestSignal band_test_signal(const Generator& g, const SamplingGrid& s, std::mt19937_64& rng, int harmonics = 2,
                            double min_periods = 8.0, const std::vector<int>& only_slots = {});

}  // namespace schrolet
