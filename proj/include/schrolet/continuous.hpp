#pragma once
#include <functional>
#include <string>
#include <vector>

#include "schrolet/admissible.hpp"
#include "schrolet/rep.hpp"

namespace schrolet {

/// Rotation nodes with normalised Haar weights (sum 1).
struct RotationRule {
  std::vector<Rotation> R;
  std::vector<double> w;
};

/// d = 2: M uniform angles. d = 3: uniform alpha, gamma (M each) and midpoint beta (M/2) with sin(beta) weight.
RotationRule rotation_rule(int d, int M);

/// Group quadrature: b in [-b_max, b_max] step b_step (trapezoid), a = 2^{p/Q} for p in [p_min, p_max].
struct QuadSpec {
  double b_max = 64.0;
  double b_step = 0.5;
  int Q = 8;
  int p_min = -32;
  int p_max = 8;
  int rotations = 0;  // 0 = automatic, exact for the active angular labels
  int panel_points = 16;  // Gauss-Legendre points per panel of the frequency integral
};

/// <f, pi'(x) eta> on the radial grid.
cplx voice(const SequenceSignal& f, const Generator& g, const GroupElement& x);

struct ReproducingReport {
  double estimate = 0.0;
  double norm_sq = 0.0;
  double ratio = 0.0;
  double dilation_loss = 0.0;  // fraction of ||f||^2 at frequencies no sampled dilation reaches
  std::size_t nodes = 0;
  std::vector<std::string> notes;
};

struct VoiceSample {
  double b, a, angle, value;  // |voice|^2
};

/// Quadrature of int_G |<f, pi'(b,a,R) eta>|^2 db da/a^2 dR against ||f||^2.
ReproducingReport reproducing_check(const SequenceSignal& f, const Generator& g, const QuadSpec& q,
                                    std::vector<VoiceSample>* samples = nullptr);

struct RefinementReport {
  std::vector<double> b_max;
  std::vector<double> ratio;
  std::vector<double> error;      // |ratio - 1|
  std::vector<double> reduction;  // error[l-1] / error[l]
};

/// Repeats reproducing_check with the b-window multiplied by `factor` per level.
RefinementReport reproducing_refinement(const SequenceSignal& f, const Generator& g, QuadSpec q, int levels,
                                        double factor = 4.0);

/// Test function on H = R+ x SO(d).
using HFunction = std::function<double(double a, const Rotation& R)>;

struct WeilSpec {
  int d = 2;
  double u_min = -3.0;   // log2 a range, must contain the support of phi
  double u_max = 3.0;
  int n = 256;           // nodes per side
  int rotations = 16;
};

struct WeilReport {
  double lhs = 0.0;  // int_H phi(a,R) gamma(a)^{-1} da/a dR
  double rhs = 0.0;  // int_0^inf int phi(1/w, R) dR dw
  double C = 0.0;
};

/// Both sides of the quotient-measure identity with gamma(a) = a and q(w) = 1/w, estimated independently
/// (trapezoid in log a on the left, trapezoid in w on the right).
WeilReport weil_constant(const HFunction& phi, const WeilSpec& s);

}  // namespace schrolet
