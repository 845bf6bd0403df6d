#include "ksep/criteria.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ksep {

namespace {

// Diagonal entries feed square roots; values within -1e-12 of zero are
// numerical noise and clamp to 0, anything lower marks an invalid state.
constexpr double kDiagonalNegativityTol = -1e-12;

double clamped_diagonal(const DensityMatrix& rho, std::int64_t i) {
  const double v = rho.at(i, i).real();
  if (v < kDiagonalNegativityTol) {
    throw std::domain_error("criterion evaluation: diagonal entry below -1e-12");
  }
  return std::max(v, 0.0);
}

void check_k(int k, int n) {
  if (k < 2 || k > n) {
    throw std::invalid_argument("criterion evaluation: k must satisfy 2 <= k <= n");
  }
}

}  // namespace

std::string to_string(CriterionId id) {
  return id == CriterionId::C1 ? "C1" : "C2";
}

std::vector<std::int64_t> index_set_A(const Dims& dims) {
  const int n = dims.num_sites();
  std::vector<std::int64_t> out;
  out.reserve((size_t{1} << n) - 2);
  // every digit is 0 or d_l - 1; bit l of the mask picks d_l - 1
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    std::int64_t idx = 1;
    for (int l = 1; l <= n; ++l) {
      if (mask & (std::uint64_t{1} << (l - 1))) {
        idx += static_cast<std::int64_t>(dims.dim(l) - 1) * dims.weight(l);
      }
    }
    out.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CriterionReport criterion1_evaluate(const DensityMatrix& rho, int k,
                                    double violation_tol) {
  const int n = rho.dims.num_sites();
  check_k(k, n);
  const std::int64_t D = rho.total_dim();

  const double lhs = (std::exp2(k - 1) - 1.0) * std::abs(rho.at(1, D));

  double rhs = 0.0;
  for (const std::int64_t j : index_set_A(rho.dims)) {
    rhs += std::sqrt(clamped_diagonal(rho, j) * clamped_diagonal(rho, D - j + 1));
  }
  rhs *= 0.5;

  const double margin = lhs - rhs;
  return {CriterionId::C1, k, lhs, rhs, margin, margin > violation_tol};
}

CriterionReport criterion2_evaluate(const DensityMatrix& rho, int k,
                                    double violation_tol) {
  const int n = rho.dims.num_sites();
  check_k(k, n);
  if (!rho.dims.uniform()) {
    throw std::invalid_argument("criterion 2 requires a uniform local dimension");
  }
  const int d = rho.dims.dim(1);

  // power[i] = d^{n-i}; the flat index of "digit p at site i" is p*power[i]+1
  std::vector<std::int64_t> power(static_cast<size_t>(n) + 1, 1);
  for (int i = n - 1; i >= 1; --i) {
    power[static_cast<size_t>(i)] = power[static_cast<size_t>(i + 1)] * d;
  }

  double lhs = 0.0;
  double rhs_roots = 0.0;
  const double rho11 = clamped_diagonal(rho, 1);
  for (int i = 2; i <= n; ++i) {
    for (int j = 1; j < i; ++j) {
      for (int p = 1; p <= d - 1; ++p) {
        for (int q = 1; q <= d - 1; ++q) {
          const std::int64_t row = p * power[static_cast<size_t>(i)] + 1;
          const std::int64_t col = q * power[static_cast<size_t>(j)] + 1;
          lhs += std::abs(rho.at(row, col));
          const std::int64_t both =
              p * power[static_cast<size_t>(i)] + q * power[static_cast<size_t>(j)] + 1;
          rhs_roots += std::sqrt(rho11 * clamped_diagonal(rho, both));
        }
      }
    }
  }

  double single_excitation_weight = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int p = 1; p <= d - 1; ++p) {
      single_excitation_weight +=
          clamped_diagonal(rho, p * power[static_cast<size_t>(i)] + 1);
    }
  }

  const double rhs = rhs_roots + 0.5 * (n - k) * single_excitation_weight;
  const double margin = lhs - rhs;
  return {CriterionId::C2, k, lhs, rhs, margin, margin > violation_tol};
}

std::vector<CriterionReport> k_profile(const DensityMatrix& rho, CriterionId id,
                                       double violation_tol) {
  const int n = rho.dims.num_sites();
  std::vector<CriterionReport> reports;
  reports.reserve(static_cast<size_t>(n - 1));
  for (int k = 2; k <= n; ++k) {
    reports.push_back(id == CriterionId::C1
                          ? criterion1_evaluate(rho, k, violation_tol)
                          : criterion2_evaluate(rho, k, violation_tol));
  }
  // violated set is upward-closed in k: C1's lhs grows with k, C2's rhs shrinks
  for (size_t i = 0; i + 1 < reports.size(); ++i) {
    assert(!reports[i].violated || reports[i + 1].violated);
  }
  return reports;
}

std::string to_string(FamilyKind kind) {
  return kind == FamilyKind::GhzWhiteNoise ? "ghz-noise" : "w-noise";
}

Dims NoiseFamily::dims() const {
  return Dims(std::vector<int>(static_cast<size_t>(std::max(n, 0)), d), cap);
}

DensityMatrix NoiseFamily::state_at(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("NoiseFamily::state_at: p outside [0,1]");
  }
  return kind == FamilyKind::GhzWhiteNoise ? ghz_noise_state(n, d, p, cap)
                                           : w_noise_state(n, d, p, cap);
}

const char* NoiseFamily::parameter_meaning() const {
  return kind == FamilyKind::GhzWhiteNoise ? "p is the state weight"
                                           : "p is the noise weight";
}

NoiseThreshold noise_threshold(const NoiseFamily& family, CriterionId id, int k) {
  const auto margin_at = [&](double p) {
    const DensityMatrix rho = family.state_at(p);
    const CriterionReport report = id == CriterionId::C1
                                       ? criterion1_evaluate(rho, k)
                                       : criterion2_evaluate(rho, k);
    return report.margin;
  };

  constexpr int kGridPoints = 11;
  double margins[kGridPoints];
  for (int i = 0; i < kGridPoints; ++i) {
    margins[i] = margin_at(i / static_cast<double>(kGridPoints - 1));
  }

  const auto violated = [](double margin) { return margin > 0.0; };
  int lo = -1;
  for (int i = 0; i + 1 < kGridPoints; ++i) {
    if (violated(margins[i]) != violated(margins[i + 1])) {
      lo = i;
      break;
    }
  }
  if (lo < 0) {
    return {violated(margins[0]) ? NoiseThreshold::Status::AlwaysViolated
                                 : NoiseThreshold::Status::NeverViolated,
            0.0, false};
  }

  // a crossing exists: require a monotone margin before trusting bisection
  constexpr double kMonotoneSlack = 1e-9;
  bool nondecreasing = true;
  bool nonincreasing = true;
  for (int i = 0; i + 1 < kGridPoints; ++i) {
    if (margins[i + 1] < margins[i] - kMonotoneSlack) nondecreasing = false;
    if (margins[i + 1] > margins[i] + kMonotoneSlack) nonincreasing = false;
  }
  if (!nondecreasing && !nonincreasing) {
    throw std::domain_error("noise_threshold: margin is not monotone along the family");
  }

  double p_lo = lo / static_cast<double>(kGridPoints - 1);
  double p_hi = (lo + 1) / static_cast<double>(kGridPoints - 1);
  const bool lo_violated = violated(margins[lo]);
  while (p_hi - p_lo > 1e-10) {
    const double mid = 0.5 * (p_lo + p_hi);
    if (violated(margin_at(mid)) == lo_violated) {
      p_lo = mid;
    } else {
      p_hi = mid;
    }
  }

  return {NoiseThreshold::Status::Crossing, 0.5 * (p_lo + p_hi), nondecreasing};
}

}  // namespace ksep
