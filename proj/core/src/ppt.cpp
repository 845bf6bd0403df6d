#include "ksep/ppt.hpp"

#include "ksep/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace ksep {

namespace {

std::vector<bool> cut_mask(const Bipartition& cut, const Dims& dims) {
  const int n = dims.num_sites();
  if (cut.subset.empty() || static_cast<int>(cut.subset.size()) >= n) {
    throw std::invalid_argument("Bipartition: subset must be nonempty and proper");
  }
  std::vector<bool> mask(static_cast<size_t>(n), false);
  for (const int site : cut.subset) {
    if (site < 1 || site > n) {
      throw std::invalid_argument("Bipartition: site out of range");
    }
    if (mask[static_cast<size_t>(site - 1)]) {
      throw std::invalid_argument("Bipartition: duplicate site");
    }
    mask[static_cast<size_t>(site - 1)] = true;
  }
  return mask;
}

}  // namespace

Matrix partial_transpose(const DensityMatrix& rho, const Bipartition& cut) {
  const Dims& dims = rho.dims;
  const std::vector<bool> mask = cut_mask(cut, dims);
  const std::int64_t D = dims.total_dim();
  const int n = dims.num_sites();

  // digit table for every flat index (0-based here)
  std::vector<std::vector<int>> digits(static_cast<size_t>(D));
  for (std::int64_t idx = 0; idx < D; ++idx) {
    digits[static_cast<size_t>(idx)] = index_to_dits(idx + 1, dims).digits();
  }

  Matrix out(D, D);
  for (std::int64_t r = 0; r < D; ++r) {
    for (std::int64_t c = 0; c < D; ++c) {
      // swapping the cut digits between row and column shifts both indices
      // by the same weighted difference, in opposite directions
      std::int64_t delta = 0;
      for (int l = 1; l <= n; ++l) {
        if (mask[static_cast<size_t>(l - 1)]) {
          delta += static_cast<std::int64_t>(digits[static_cast<size_t>(r)][static_cast<size_t>(l - 1)] -
                                             digits[static_cast<size_t>(c)][static_cast<size_t>(l - 1)]) *
                   dims.weight(l);
        }
      }
      out(r - delta, c + delta) = rho.entries(r, c);
    }
  }
  return out;
}

double min_eigenvalue(const Matrix& h) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("min_eigenvalue: matrix must be square");
  }
  if (hermiticity_deviation(h) > 1e-10) {
    throw std::invalid_argument("min_eigenvalue: input is not Hermitian");
  }
  return smallest_selfadjoint_eigenvalue(h);
}

bool is_npt(const DensityMatrix& rho, const Bipartition& cut, double tol) {
  return min_eigenvalue(partial_transpose(rho, cut)) < -tol;
}

double npt_onset(const NoiseFamily& family, const Bipartition& cut, double p_tol) {
  const auto npt_at = [&](double p) { return is_npt(family.state_at(p), cut); };
  const bool at_zero = npt_at(0.0);
  if (at_zero == npt_at(1.0)) {
    throw std::domain_error("npt_onset: no PPT/NPT transition along the family");
  }
  double lo = 0.0, hi = 1.0;
  while (hi - lo > p_tol) {
    const double mid = 0.5 * (lo + hi);
    if (npt_at(mid) == at_zero) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ksep
