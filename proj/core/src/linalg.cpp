#include "ksep/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace ksep {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double hermiticity_deviation(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Complex trace_product(const Matrix& a, const Matrix& b) {
  // tr(ab) = sum_ij a_ij b_ji
  return (a.array() * b.transpose().array()).sum();
}

double smallest_selfadjoint_eigenvalue(const Matrix& m) {
  const Matrix sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace ksep
