// ppt.hpp
// Partial transpose and negativity checks, used as an independent oracle for
// the nonseparability verdicts of the criteria.

#pragma once

#include "ksep/criteria.hpp"
#include "ksep/qstate.hpp"

#include <vector>

namespace ksep {

inline constexpr double kNptTol = 1e-10;

// Subsystems (1-based positions) whose indices are transposed; must be a
// nonempty proper subset of the sites.
struct Bipartition {
  std::vector<int> subset;
};

// Transposes the row/column digits of the subsystems in the cut. Involution;
// preserves trace and Hermiticity. The result is generally not a valid state,
// hence the plain matrix return.
Matrix partial_transpose(const DensityMatrix& rho, const Bipartition& cut);

// Smallest eigenvalue of a Hermitian matrix (deviation <= 1e-10 required),
// absolute accuracy 1e-10.
double min_eigenvalue(const Matrix& h);

// Negative partial transpose across the cut certifies entanglement there.
bool is_npt(const DensityMatrix& rho, const Bipartition& cut, double tol = kNptTol);

// Bisection for the family parameter at which the partial transpose across
// the cut changes sign. Requires is_npt to differ at p = 0 and p = 1.
double npt_onset(const NoiseFamily& family, const Bipartition& cut,
                 double p_tol = 1e-8);

}  // namespace ksep
