// criteria.hpp
// Element-wise non-k-separability tests evaluated directly on density-matrix
// entries, plus k-sweeps and numeric noise-threshold solving along the two
// white-noise families.
//
// Both criteria are one-sided: a violated inequality certifies that the state
// is not k-separable; non-violation proves nothing.

#pragma once

#include "ksep/qstate.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ksep {

inline constexpr double kViolationTol = 1e-12;

enum class CriterionId { C1, C2 };

std::string to_string(CriterionId id);

struct CriterionReport {
  CriterionId criterion;
  int k;
  double lhs;     // >= 0
  double rhs;     // >= 0
  double margin;  // lhs - rhs
  bool violated;  // margin > tolerance  =>  not k-separable
};

// Flat indices of the basis strings whose digits are all 0 or d_l - 1,
// excluding the all-zeros and all-(d_l - 1) strings. Sorted ascending,
// always 2^n - 2 entries.
std::vector<std::int64_t> index_set_A(const Dims& dims);

// Test 1: (2^{k-1}-1)|rho_{1,D}|  vs  (1/2) sum_{j in A} sqrt(rho_jj rho_{D-j+1,D-j+1}).
// Heterogeneous local dimensions are allowed.
CriterionReport criterion1_evaluate(const DensityMatrix& rho, int k,
                                    double violation_tol = kViolationTol);

// Test 2 compares the single-excitation coherences against the matching
// two-excitation diagonals plus (n-k)/2 times the single-excitation
// population. Uniform local dimension only.
CriterionReport criterion2_evaluate(const DensityMatrix& rho, int k,
                                    double violation_tol = kViolationTol);

// Reports for k = 2..n. The violated set is upward-closed in k.
std::vector<CriterionReport> k_profile(const DensityMatrix& rho, CriterionId id,
                                       double violation_tol = kViolationTol);

enum class FamilyKind { GhzWhiteNoise, WWhiteNoise };

std::string to_string(FamilyKind kind);

// One-parameter state family. The parameter p follows the family's own
// convention: state weight for the GHZ family, noise weight for the W family.
struct NoiseFamily {
  FamilyKind kind;
  int n;
  int d;
  std::int64_t cap = kDefaultDimCap;

  Dims dims() const;
  DensityMatrix state_at(double p) const;
  const char* parameter_meaning() const;
};

struct NoiseThreshold {
  enum class Status { Crossing, NeverViolated, AlwaysViolated };

  Status status;
  double p_star = 0.0;         // meaningful for Status::Crossing
  bool violated_above = false; // true: violated for p > p_star, else p < p_star
};

// Bisection on the margin of the chosen criterion along the family, to
// absolute tolerance 1e-9 in p. Monotonicity of the margin is checked on an
// 11-point grid before bisecting.
NoiseThreshold noise_threshold(const NoiseFamily& family, CriterionId id, int k);

}  // namespace ksep
