#include "ksep/closedform.hpp"

#include <limits>
#include <stdexcept>

namespace ksep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_params(int n, int d, int k, double p) {
  if (n < 2 || d < 2) {
    throw std::invalid_argument("detection function: need n >= 2 and d >= 2");
  }
  if (k < 2 || k > n) {
    throw std::invalid_argument("detection function: k must satisfy 2 <= k <= n");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("detection function: p outside [0,1]");
  }
}

}  // namespace

DetectionValue alpha(int n, int d, int k, double p) {
  check_params(n, d, k, p);
  if (p == 0.0) return {kInf};  // undetectable: pure noise end of the family
  const double value = (std::exp2(n - 1) - 1.0) / (std::exp2(k - 1) - 1.0) *
                       (1.0 - p) / (p * std::pow(d, n - 1));
  return {value};
}

DetectionValue beta(int n, int d, int k, double p) {
  check_params(n, d, k, p);
  if (p == 1.0) return {kInf};  // undetectable: pure noise end of the family
  const double dn = std::pow(d, n);
  const double m = static_cast<double>(n) * (d - 1);

  const double first = p * m / (dn * (1.0 - p));

  double sum_i = 0.0;
  for (int i = 1; i <= n * (d - 1) - 1; ++i) sum_i += i;
  double sum_j = 0.0;
  for (int j = 1; j <= d - 2; ++j) sum_j += j;
  const double denominator = sum_i - n * sum_j;

  const double second =
      (m + m * m * p / (dn * (1.0 - p))) * (0.5 * (n - k)) / denominator;

  return {first + second};
}

double alpha_threshold(int n, int d, int k) {
  check_params(n, d, k, 0.5);
  const double a = std::exp2(n - 1) - 1.0;
  const double b = std::pow(d, n - 1) * (std::exp2(k - 1) - 1.0);
  return a / (a + b);
}

BetaThreshold beta_threshold(int n, int d, int k) {
  // beta = intercept + slope * t with t = p/(1-p); t = 0 at p = 0 and t = 1
  // at p = 1/2, so two evaluations recover both coefficients exactly.
  const double intercept = beta(n, d, k, 0.0).value;
  const double slope = beta(n, d, k, 0.5).value - intercept;
  if (intercept >= 1.0) {
    return {BetaThreshold::Kind::NeverDetected};
  }
  if (slope <= 0.0) {
    return {BetaThreshold::Kind::AlwaysDetected};
  }
  const double t_star = (1.0 - intercept) / slope;
  return {BetaThreshold::Kind::Interior, t_star / (1.0 + t_star)};
}

std::vector<FigureRow> figure_data(const NoiseFamily& family,
                                   const std::vector<int>& k_values,
                                   const std::vector<double>& p_grid) {
  std::vector<FigureRow> rows;
  rows.reserve(k_values.size() * p_grid.size());
  for (const int k : k_values) {
    for (const double p : p_grid) {
      const DetectionValue v = family.kind == FamilyKind::GhzWhiteNoise
                                   ? alpha(family.n, family.d, k, p)
                                   : beta(family.n, family.d, k, p);
      rows.push_back({p, k, v.value, v.detected()});
    }
  }
  return rows;
}

}  // namespace ksep
