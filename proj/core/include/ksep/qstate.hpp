// qstate.hpp
// Basis indexing, state construction and density-matrix validation for
// multipartite systems with heterogeneous local dimensions.
//
// Flat indices are 1-based and big-endian mixed radix throughout the public
// API: the digit of subsystem 1 is the most significant, so the basis string
// (j_1,...,j_n) maps to sum_l j_l * d_{l+1}*...*d_n + 1.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace ksep {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::int64_t kDefaultDimCap = 4096;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdEigenvalueFloor = -1e-10;

// Ordered subsystem dimensions (d_1,...,d_n), each >= 2, n >= 2.
// The total dimension D = d_1*...*d_n must not exceed the cap.
class Dims {
 public:
  explicit Dims(std::vector<int> dims, std::int64_t cap = kDefaultDimCap);

  int num_sites() const { return static_cast<int>(dims_.size()); }
  int dim(int site) const;  // site is 1-based
  std::int64_t total_dim() const { return total_; }
  const std::vector<int>& sizes() const { return dims_; }

  // Mixed-radix weight of a site: product of the dimensions to its right.
  std::int64_t weight(int site) const;

  bool uniform() const;

  bool operator==(const Dims& other) const { return dims_ == other.dims_; }
  bool operator!=(const Dims& other) const { return !(*this == other); }

 private:
  std::vector<int> dims_;
  std::vector<std::int64_t> weights_;
  std::int64_t total_ = 0;
};

// Basis label (j_1,...,j_n) with 0 <= j_l <= d_l - 1.
class DitString {
 public:
  DitString(std::vector<int> digits, Dims dims);

  const std::vector<int>& digits() const { return digits_; }
  int digit(int site) const { return digits_.at(static_cast<size_t>(site - 1)); }
  const Dims& dims() const { return dims_; }

 private:
  std::vector<int> digits_;
  Dims dims_;
};

std::int64_t dits_to_index(const DitString& s);
DitString index_to_dits(std::int64_t index, const Dims& dims);

// Normalized pure state on the full D-dimensional space.
struct StateVector {
  StateVector(Vector amplitudes, Dims dims);

  Vector amplitudes;
  Dims dims;

  Complex at(std::int64_t i) const;  // 1-based
};

// D x D complex matrix with attached tensor structure. Numeric properties
// (Hermiticity, unit trace, positivity) are reported by validate(), not
// enforced on construction, so files and intermediate results can be held
// and inspected even when they fail them.
struct DensityMatrix {
  DensityMatrix(Matrix entries, Dims dims);

  Matrix entries;
  Dims dims;

  Complex at(std::int64_t i, std::int64_t j) const;  // 1-based
  std::int64_t total_dim() const { return dims.total_dim(); }
};

StateVector ghz_state(int n, int d, std::int64_t cap = kDefaultDimCap);
StateVector w_state(int n, int d, std::int64_t cap = kDefaultDimCap);

DensityMatrix projector(const StateVector& v);
DensityMatrix maximally_mixed(const Dims& dims);

// state_weight * rho + (1 - state_weight) * I/D.
DensityMatrix mix_with_white_noise(const DensityMatrix& rho, double state_weight);

// The two noise conventions used by the GHZ and W families: the GHZ family
// weights the state by p, the W family weights the noise by p.
DensityMatrix ghz_noise_state(int n, int d, double p, std::int64_t cap = kDefaultDimCap);
DensityMatrix w_noise_state(int n, int d, double p, std::int64_t cap = kDefaultDimCap);

// Ginibre construction G G^dag / tr(G G^dag); deterministic for a fixed seed.
DensityMatrix random_density_matrix(std::uint64_t seed, const Dims& dims);

struct ValidationReport {
  double hermiticity_deviation = 0.0;  // max entry-wise |rho - rho^dag|
  double trace_deviation = 0.0;        // |tr(rho) - 1|
  double min_eigenvalue = 0.0;

  bool hermitian_ok = false;
  bool trace_ok = false;
  bool psd_ok = false;

  bool passed() const { return hermitian_ok && trace_ok && psd_ok; }
};

ValidationReport validate(const DensityMatrix& rho);

}  // namespace ksep
