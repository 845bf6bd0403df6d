// linalg.hpp
// Small dense linear-algebra helpers shared across the library.

#pragma once

#include "ksep/qstate.hpp"

namespace ksep {

// Kronecker product, row-major blocking: index of A(x)B is a*cols(B) + b.
// Consistent with the big-endian flat indexing of Dims.
Matrix kron(const Matrix& a, const Matrix& b);

// max entry-wise |m - m^dag|
double hermiticity_deviation(const Matrix& m);

// tr(a*b) without forming the product.
Complex trace_product(const Matrix& a, const Matrix& b);

// Smallest eigenvalue of (m + m^dag)/2. No Hermiticity check here; callers
// that promise Hermitian input enforce it themselves.
double smallest_selfadjoint_eigenvalue(const Matrix& m);

}  // namespace ksep
