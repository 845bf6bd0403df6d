#include "ksep/qstate.hpp"

#include "ksep/linalg.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace ksep {

Dims::Dims(std::vector<int> dims, std::int64_t cap) : dims_(std::move(dims)) {
  if (dims_.size() < 2) {
    throw std::invalid_argument("Dims: need at least 2 subsystems");
  }
  total_ = 1;
  for (int d : dims_) {
    if (d < 2) {
      throw std::invalid_argument("Dims: every local dimension must be >= 2");
    }
    total_ *= d;
    if (total_ > cap) {
      throw std::invalid_argument("Dims: total dimension exceeds cap " +
                                  std::to_string(cap));
    }
  }
  // weight of site l = product of dims to its right
  weights_.assign(dims_.size(), 1);
  for (int l = static_cast<int>(dims_.size()) - 2; l >= 0; --l) {
    weights_[static_cast<size_t>(l)] =
        weights_[static_cast<size_t>(l + 1)] * dims_[static_cast<size_t>(l + 1)];
  }
}

int Dims::dim(int site) const {
  if (site < 1 || site > num_sites()) {
    throw std::out_of_range("Dims::dim: site out of range");
  }
  return dims_[static_cast<size_t>(site - 1)];
}

std::int64_t Dims::weight(int site) const {
  if (site < 1 || site > num_sites()) {
    throw std::out_of_range("Dims::weight: site out of range");
  }
  return weights_[static_cast<size_t>(site - 1)];
}

bool Dims::uniform() const {
  for (int d : dims_) {
    if (d != dims_.front()) return false;
  }
  return true;
}

DitString::DitString(std::vector<int> digits, Dims dims)
    : digits_(std::move(digits)), dims_(std::move(dims)) {
  if (digits_.size() != static_cast<size_t>(dims_.num_sites())) {
    throw std::invalid_argument("DitString: digit count does not match sites");
  }
  for (int l = 1; l <= dims_.num_sites(); ++l) {
    const int j = digits_[static_cast<size_t>(l - 1)];
    if (j < 0 || j >= dims_.dim(l)) {
      throw std::invalid_argument("DitString: digit " + std::to_string(j) +
                                  " out of range at site " + std::to_string(l));
    }
  }
}

std::int64_t dits_to_index(const DitString& s) {
  std::int64_t idx = 1;
  for (int l = 1; l <= s.dims().num_sites(); ++l) {
    idx += static_cast<std::int64_t>(s.digit(l)) * s.dims().weight(l);
  }
  return idx;
}

DitString index_to_dits(std::int64_t index, const Dims& dims) {
  if (index < 1 || index > dims.total_dim()) {
    throw std::out_of_range("index_to_dits: index " + std::to_string(index) +
                            " outside [1, " + std::to_string(dims.total_dim()) + "]");
  }
  std::int64_t rem = index - 1;
  std::vector<int> digits(static_cast<size_t>(dims.num_sites()));
  for (int l = 1; l <= dims.num_sites(); ++l) {
    digits[static_cast<size_t>(l - 1)] = static_cast<int>(rem / dims.weight(l));
    rem %= dims.weight(l);
  }
  return DitString(std::move(digits), dims);
}

StateVector::StateVector(Vector amps, Dims d) : amplitudes(std::move(amps)), dims(std::move(d)) {
  if (amplitudes.size() != dims.total_dim()) {
    throw std::invalid_argument("StateVector: amplitude count does not match dims");
  }
  if (std::abs(amplitudes.squaredNorm() - 1.0) > kTraceTol) {
    throw std::invalid_argument("StateVector: squared norm deviates from 1");
  }
}

Complex StateVector::at(std::int64_t i) const {
  if (i < 1 || i > dims.total_dim()) {
    throw std::out_of_range("StateVector::at: index out of range");
  }
  return amplitudes(i - 1);
}

DensityMatrix::DensityMatrix(Matrix m, Dims d) : entries(std::move(m)), dims(std::move(d)) {
  if (entries.rows() != dims.total_dim() || entries.cols() != dims.total_dim()) {
    throw std::invalid_argument("DensityMatrix: matrix size does not match dims");
  }
}

Complex DensityMatrix::at(std::int64_t i, std::int64_t j) const {
  const std::int64_t D = dims.total_dim();
  if (i < 1 || i > D || j < 1 || j > D) {
    throw std::out_of_range("DensityMatrix::at: index out of range");
  }
  return entries(i - 1, j - 1);
}

StateVector ghz_state(int n, int d, std::int64_t cap) {
  Dims dims(std::vector<int>(static_cast<size_t>(std::max(n, 0)), d), cap);
  Vector amps = Vector::Zero(dims.total_dim());
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    const DitString s(std::vector<int>(static_cast<size_t>(n), i), dims);
    amps(dits_to_index(s) - 1) = a;
  }
  return StateVector(std::move(amps), std::move(dims));
}

StateVector w_state(int n, int d, std::int64_t cap) {
  Dims dims(std::vector<int>(static_cast<size_t>(std::max(n, 0)), d), cap);
  Vector amps = Vector::Zero(dims.total_dim());
  const double a = 1.0 / std::sqrt(static_cast<double>(n) * (d - 1));
  for (int site = 1; site <= n; ++site) {
    for (int level = 1; level <= d - 1; ++level) {
      std::vector<int> digits(static_cast<size_t>(n), 0);
      digits[static_cast<size_t>(site - 1)] = level;
      amps(dits_to_index(DitString(std::move(digits), dims)) - 1) = a;
    }
  }
  return StateVector(std::move(amps), std::move(dims));
}

DensityMatrix projector(const StateVector& v) {
  Matrix m = v.amplitudes * v.amplitudes.adjoint();
  return DensityMatrix(std::move(m), v.dims);
}

DensityMatrix maximally_mixed(const Dims& dims) {
  const std::int64_t D = dims.total_dim();
  Matrix m = Matrix::Identity(D, D) / static_cast<double>(D);
  return DensityMatrix(std::move(m), dims);
}

DensityMatrix mix_with_white_noise(const DensityMatrix& rho, double state_weight) {
  if (!(state_weight >= 0.0 && state_weight <= 1.0)) {
    throw std::invalid_argument("mix_with_white_noise: weight outside [0,1]");
  }
  const std::int64_t D = rho.total_dim();
  Matrix m = state_weight * rho.entries +
             ((1.0 - state_weight) / static_cast<double>(D)) *
                 Matrix::Identity(D, D);
  return DensityMatrix(std::move(m), rho.dims);
}

DensityMatrix ghz_noise_state(int n, int d, double p, std::int64_t cap) {
  return mix_with_white_noise(projector(ghz_state(n, d, cap)), p);
}

DensityMatrix w_noise_state(int n, int d, double p, std::int64_t cap) {
  return mix_with_white_noise(projector(w_state(n, d, cap)), 1.0 - p);
}

DensityMatrix random_density_matrix(std::uint64_t seed, const Dims& dims) {
  const std::int64_t D = dims.total_dim();
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(D, D);
  for (std::int64_t i = 0; i < D; ++i) {
    for (std::int64_t j = 0; j < D; ++j) {
      const double re = gauss(engine);
      const double im = gauss(engine);
      g(i, j) = Complex(re, im);
    }
  }
  Matrix rho = g * g.adjoint();
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho), dims);
}

ValidationReport validate(const DensityMatrix& rho) {
  ValidationReport report;
  report.hermiticity_deviation = hermiticity_deviation(rho.entries);
  report.trace_deviation = std::abs(rho.entries.trace() - Complex(1.0, 0.0));
  report.min_eigenvalue = smallest_selfadjoint_eigenvalue(rho.entries);
  report.hermitian_ok = report.hermiticity_deviation <= kHermitianTol;
  report.trace_ok = report.trace_deviation <= kTraceTol;
  report.psd_ok = report.min_eigenvalue >= kPsdEigenvalueFloor;
  return report;
}

}  // namespace ksep
