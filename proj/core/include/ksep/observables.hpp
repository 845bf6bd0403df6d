// observables.hpp
// Local-observable decompositions of the matrix elements entering the two
// criteria: the antidiagonal flip Q/Qtilde and its 2n product settings
// M_l/Mtilde_l, the coherence probes O/Otilde, diagonal projectors, the
// measurement-resource counts, and criterion evaluation driven purely by
// expectation values.

#pragma once

#include "ksep/criteria.hpp"
#include "ksep/qstate.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ksep {

// One tensor-product term coeff * A_1 (x) ... (x) A_n.
struct ProductTerm {
  Complex coeff;
  std::vector<Matrix> factors;  // one d_l x d_l factor per site
};

// Hermitian operator on the full space together with its decomposition into
// tensor-product terms. M, O-component and projector settings are single
// products of per-site Hermitian factors; Q/Qtilde and O/Otilde are sums of
// two products.
struct ObservableOp {
  std::string label;
  Matrix matrix;
  std::vector<ProductTerm> terms;
};

// Reassembles sum_t coeff_t * kron(factors_t); matches op.matrix by
// construction for every builder here.
Matrix assemble(const std::vector<ProductTerm>& terms);

// <Q> = 2 Re rho_{1,D},  <Qtilde> = -2 Im rho_{1,D}.
ObservableOp build_Q(const Dims& dims);
ObservableOp build_Qtilde(const Dims& dims);

// Product settings M_l = (x)_j [cos(l pi/n) R_j + sin(l pi/n) Rtilde_j] with
// R_j the real and imaginary flips between levels 0 and d_j - 1; Mtilde_l
// uses angle (l pi + pi/2)/n. sum_l (-1)^l M_l = n Q and likewise for the
// tilde pair.
ObservableOp build_M(int l, const Dims& dims);
ObservableOp build_Mtilde(int l, const Dims& dims);

struct SettingsIdentityReport {
  double m_deviation = 0.0;       // max |sum_l (-1)^l M_l - n Q|
  double mtilde_deviation = 0.0;  // twin identity
  bool passed = false;            // both <= 1e-10
};

SettingsIdentityReport verify_ghz_settings(const Dims& dims);

// Coherence probes for the element between the "digit a at site r" and
// "digit b at site s" single-excitation strings, r < s, uniform dimension d.
// The larger flat index (row) is the excitation at the earlier site r:
//   <O> = 2 Re rho_{a d^{n-r}+1, b d^{n-s}+1},  <Otilde> = -2 Im of the same.
ObservableOp build_O(int r, int s, int a, int b, int n, int d);
ObservableOp build_Otilde(int r, int s, int a, int b, int n, int d);

// Rank-1 diagonal projector onto a basis string; <op> = rho_{i,i}.
ObservableOp build_diag_projector(const DitString& s);

double expectation(const ObservableOp& op, const DensityMatrix& rho);

// Matrix elements reachable through the decompositions above.
struct ElementTarget {
  enum class Kind { Antidiagonal, Coherence };

  Kind kind;
  int r = 0, s = 0, a = 0, b = 0;  // used by Kind::Coherence

  static ElementTarget antidiagonal() { return {Kind::Antidiagonal}; }
  static ElementTarget coherence(int r, int s, int a, int b) {
    return {Kind::Coherence, r, s, a, b};
  }
};

// (row, col) of the targeted element, 1-based.
std::pair<std::int64_t, std::int64_t> target_indices(const ElementTarget& target,
                                                     const Dims& dims);

// Recovers the complex element from the expectation pair: Re from the plain
// observable, Im from the tilde partner.
Complex reconstruct_element(const DensityMatrix& rho, const ElementTarget& target);

// Measurement-resource accounting. One observable per product setting;
// diagonal projectors count one each.
std::int64_t count_criterion1_elements(int n);           // 2^n - 1
std::int64_t count_criterion1_observables(int n);        // 2^n + 2n - 2
std::int64_t count_criterion2_elements(int n, int d);    // 2(d-1) sum_i i(d-1) + n(d-1) + 1
std::int64_t count_criterion2_observables(int n, int d); // 5(d-1) sum_i i(d-1) + n(d-1) + 1
std::int64_t tomography_measurement_count(const Dims& dims);  // prod (d_l^2 - 1)

// The full list of settings needed to evaluate each criterion: 2n antidiagonal
// settings plus one projector per A-string for criterion 1; four product
// settings per coherence plus one projector per referenced diagonal for
// criterion 2. List sizes match the count_* functions.
std::vector<ObservableOp> enumerate_criterion1_settings(const Dims& dims);
std::vector<ObservableOp> enumerate_criterion2_settings(int n, int d);

// Criterion evaluation that touches the state only through expectation values
// of the setting lists above. Agrees with the direct evaluators.
CriterionReport criterion1_via_measurements(const DensityMatrix& rho, int k,
                                            double violation_tol = kViolationTol);
CriterionReport criterion2_via_measurements(const DensityMatrix& rho, int k,
                                            double violation_tol = kViolationTol);

}  // namespace ksep
