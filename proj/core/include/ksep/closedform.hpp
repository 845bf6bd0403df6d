// closedform.hpp
// Closed-form detection functions for the two white-noise families and their
// analytic violation thresholds. A value below 1 certifies that the family
// state is not k-separable at that noise parameter.

#pragma once

#include "ksep/criteria.hpp"

#include <cmath>
#include <vector>

namespace ksep {

struct DetectionValue {
  double value;  // +infinity marks the singular endpoints ("undetectable")

  bool detected() const { return value < 1.0; }
  bool undetectable() const { return !std::isfinite(value); }
};

// alpha = (2^{n-1}-1)/(2^{k-1}-1) * (1-p)/(p d^{n-1}); p is the state weight
// of the GHZ family. Singular at p = 0.
DetectionValue alpha(int n, int d, int k, double p);

// beta for the W family (p is the noise weight). Singular at p = 1. The
// combinatorial denominator is evaluated with its two literal sums; the
// closed identity sum = n(n-1)(d-1)^2/2 is asserted in tests, not used here.
DetectionValue beta(int n, int d, int k, double p);

// Solves alpha = 1: p* = (2^{n-1}-1) / ((2^{n-1}-1) + d^{n-1}(2^{k-1}-1)).
// alpha < 1 iff p > p*.
double alpha_threshold(int n, int d, int k);

struct BetaThreshold {
  enum class Kind { Interior, AlwaysDetected, NeverDetected };

  Kind kind;
  double p_star = 0.0;  // meaningful for Kind::Interior; beta < 1 iff p < p*
};

// Solves beta = 1 exactly: beta is affine in t = p/(1-p), so intercept and
// slope determine the root without iteration.
BetaThreshold beta_threshold(int n, int d, int k);

struct FigureRow {
  double p;
  int k;
  double value;   // +infinity at singular grid points
  bool detected;  // value < 1
};

// Detection-function values over a (k, p) grid, ordered by (k, p). Singular
// grid points are emitted with the infinity marker rather than dropped.
std::vector<FigureRow> figure_data(const NoiseFamily& family,
                                   const std::vector<int>& k_values,
                                   const std::vector<double>& p_grid);

}  // namespace ksep
