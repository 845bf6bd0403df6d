#include "ksep/observables.hpp"

#include "ksep/linalg.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace ksep {

namespace {

constexpr Complex kI(0.0, 1.0);

// d x d matrix |ket><bra|, 0-based levels.
Matrix ket_bra(int d, int ket, int bra) {
  Matrix m = Matrix::Zero(d, d);
  m(ket, bra) = 1.0;
  return m;
}

ObservableOp make_op(std::string label, std::vector<ProductTerm> terms) {
  Matrix matrix = assemble(terms);
  return {std::move(label), std::move(matrix), std::move(terms)};
}

std::string dit_label(const DitString& s) {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < s.digits().size(); ++i) {
    if (i) out << ",";
    out << s.digits()[i];
  }
  out << ")";
  return out.str();
}

void check_O_params(int r, int s, int a, int b, int n, int d) {
  if (n < 2 || d < 2) {
    throw std::invalid_argument("build_O: need n >= 2 and d >= 2");
  }
  if (r < 1 || s <= r || s > n) {
    throw std::invalid_argument("build_O: need 1 <= r < s <= n");
  }
  if (a < 1 || a > d - 1 || b < 1 || b > d - 1) {
    throw std::invalid_argument("build_O: digits a, b must lie in [1, d-1]");
  }
}

// The four per-site flip blocks entering O/Otilde and the M settings.
Matrix real_flip(int d, int level) {  // |level><0| + |0><level|
  return ket_bra(d, level, 0) + ket_bra(d, 0, level);
}

Matrix imag_flip(int d, int level) {  // i|level><0| - i|0><level|
  return kI * ket_bra(d, level, 0) - kI * ket_bra(d, 0, level);
}

std::vector<Matrix> two_site_product(int r, int s, int n, int d,
                                     const Matrix& at_r, const Matrix& at_s) {
  std::vector<Matrix> factors(static_cast<size_t>(n), ket_bra(d, 0, 0));
  factors[static_cast<size_t>(r - 1)] = at_r;
  factors[static_cast<size_t>(s - 1)] = at_s;
  return factors;
}

}  // namespace

Matrix assemble(const std::vector<ProductTerm>& terms) {
  if (terms.empty()) {
    throw std::invalid_argument("assemble: no product terms");
  }
  Matrix total;
  for (const ProductTerm& term : terms) {
    if (term.factors.empty()) {
      throw std::invalid_argument("assemble: term without factors");
    }
    Matrix product = term.factors.front();
    for (size_t j = 1; j < term.factors.size(); ++j) {
      product = kron(product, term.factors[j]);
    }
    product *= term.coeff;
    total = total.size() == 0 ? product : Matrix(total + product);
  }
  return total;
}

ObservableOp build_Q(const Dims& dims) {
  std::vector<Matrix> down, up;  // |0><d_l-1| and |d_l-1><0| per site
  for (int l = 1; l <= dims.num_sites(); ++l) {
    down.push_back(ket_bra(dims.dim(l), 0, dims.dim(l) - 1));
    up.push_back(ket_bra(dims.dim(l), dims.dim(l) - 1, 0));
  }
  return make_op("Q", {{Complex(1.0), down}, {Complex(1.0), up}});
}

ObservableOp build_Qtilde(const Dims& dims) {
  std::vector<Matrix> down, up;
  for (int l = 1; l <= dims.num_sites(); ++l) {
    down.push_back(ket_bra(dims.dim(l), 0, dims.dim(l) - 1));
    up.push_back(ket_bra(dims.dim(l), dims.dim(l) - 1, 0));
  }
  return make_op("Qtilde", {{-kI, down}, {kI, up}});
}

namespace {

ObservableOp build_M_impl(const char* name, int l, const Dims& dims, double angle) {
  if (l < 1 || l > dims.num_sites()) {
    throw std::invalid_argument("build_M: setting index out of range");
  }
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  std::vector<Matrix> factors;
  for (int j = 1; j <= dims.num_sites(); ++j) {
    const int d = dims.dim(j);
    factors.push_back(c * real_flip(d, d - 1) + s * imag_flip(d, d - 1));
  }
  std::ostringstream label;
  label << name << "(" << l << ")";
  return make_op(label.str(), {{Complex(1.0), std::move(factors)}});
}

}  // namespace

ObservableOp build_M(int l, const Dims& dims) {
  const int n = dims.num_sites();
  return build_M_impl("M", l, dims, l * std::numbers::pi / n);
}

ObservableOp build_Mtilde(int l, const Dims& dims) {
  const int n = dims.num_sites();
  return build_M_impl("Mtilde", l, dims,
                      (l * std::numbers::pi + std::numbers::pi / 2.0) / n);
}

SettingsIdentityReport verify_ghz_settings(const Dims& dims) {
  const int n = dims.num_sites();
  const std::int64_t D = dims.total_dim();
  Matrix sum_m = Matrix::Zero(D, D);
  Matrix sum_mt = Matrix::Zero(D, D);
  for (int l = 1; l <= n; ++l) {
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    sum_m += sign * build_M(l, dims).matrix;
    sum_mt += sign * build_Mtilde(l, dims).matrix;
  }
  SettingsIdentityReport report;
  report.m_deviation =
      (sum_m - static_cast<double>(n) * build_Q(dims).matrix).cwiseAbs().maxCoeff();
  report.mtilde_deviation =
      (sum_mt - static_cast<double>(n) * build_Qtilde(dims).matrix).cwiseAbs().maxCoeff();
  report.passed = report.m_deviation <= 1e-10 && report.mtilde_deviation <= 1e-10;
  return report;
}

ObservableOp build_O(int r, int s, int a, int b, int n, int d) {
  check_O_params(r, s, a, b, n, d);
  std::ostringstream label;
  label << "O(" << r << "," << s << "," << a << "," << b << ")";
  return make_op(label.str(),
                 {{Complex(0.5), two_site_product(r, s, n, d, real_flip(d, a),
                                                  real_flip(d, b))},
                  {Complex(0.5), two_site_product(r, s, n, d, imag_flip(d, a),
                                                  imag_flip(d, b))}});
}

ObservableOp build_Otilde(int r, int s, int a, int b, int n, int d) {
  check_O_params(r, s, a, b, n, d);
  std::ostringstream label;
  label << "Otilde(" << r << "," << s << "," << a << "," << b << ")";
  return make_op(label.str(),
                 {{Complex(0.5), two_site_product(r, s, n, d, real_flip(d, a),
                                                  imag_flip(d, b))},
                  {Complex(-0.5), two_site_product(r, s, n, d, imag_flip(d, a),
                                                   real_flip(d, b))}});
}

ObservableOp build_diag_projector(const DitString& s) {
  std::vector<Matrix> factors;
  for (int l = 1; l <= s.dims().num_sites(); ++l) {
    factors.push_back(ket_bra(s.dims().dim(l), s.digit(l), s.digit(l)));
  }
  return make_op("DiagProj" + dit_label(s), {{Complex(1.0), std::move(factors)}});
}

double expectation(const ObservableOp& op, const DensityMatrix& rho) {
  if (op.matrix.rows() != rho.entries.rows()) {
    throw std::invalid_argument("expectation: operator and state dimensions differ");
  }
  return trace_product(op.matrix, rho.entries).real();
}

std::pair<std::int64_t, std::int64_t> target_indices(const ElementTarget& target,
                                                     const Dims& dims) {
  if (target.kind == ElementTarget::Kind::Antidiagonal) {
    return {1, dims.total_dim()};
  }
  if (!dims.uniform()) {
    throw std::invalid_argument("target_indices: coherence targets need uniform dims");
  }
  const int n = dims.num_sites();
  const int d = dims.dim(1);
  check_O_params(target.r, target.s, target.a, target.b, n, d);
  // row: excitation at the earlier site r (larger flat index); col: at s
  const std::int64_t row = target.a * dims.weight(target.r) + 1;
  const std::int64_t col = target.b * dims.weight(target.s) + 1;
  return {row, col};
}

Complex reconstruct_element(const DensityMatrix& rho, const ElementTarget& target) {
  double re2 = 0.0;   // 2 Re of the element
  double im2m = 0.0;  // -2 Im of the element
  if (target.kind == ElementTarget::Kind::Antidiagonal) {
    re2 = expectation(build_Q(rho.dims), rho);
    im2m = expectation(build_Qtilde(rho.dims), rho);
  } else if (target.kind == ElementTarget::Kind::Coherence) {
    if (!rho.dims.uniform()) {
      throw std::invalid_argument("reconstruct_element: coherence targets need uniform dims");
    }
    const int n = rho.dims.num_sites();
    const int d = rho.dims.dim(1);
    re2 = expectation(build_O(target.r, target.s, target.a, target.b, n, d), rho);
    im2m = expectation(build_Otilde(target.r, target.s, target.a, target.b, n, d), rho);
  } else {
    throw std::invalid_argument("reconstruct_element: unsupported target");
  }
  return Complex(re2 / 2.0, -im2m / 2.0);
}

std::int64_t count_criterion1_elements(int n) {
  if (n < 2) throw std::invalid_argument("count_criterion1_elements: n >= 2");
  return (std::int64_t{1} << n) - 1;
}

std::int64_t count_criterion1_observables(int n) {
  if (n < 2) throw std::invalid_argument("count_criterion1_observables: n >= 2");
  return (std::int64_t{1} << n) + 2 * n - 2;
}

namespace {

std::int64_t weighted_site_pair_sum(int n, int d) {  // sum_{i=1}^{n-1} i(d-1)
  std::int64_t sum = 0;
  for (int i = 1; i <= n - 1; ++i) sum += static_cast<std::int64_t>(i) * (d - 1);
  return sum;
}

}  // namespace

std::int64_t count_criterion2_elements(int n, int d) {
  if (n < 2 || d < 2) throw std::invalid_argument("count_criterion2_elements: n, d >= 2");
  return 2 * (d - 1) * weighted_site_pair_sum(n, d) +
         (static_cast<std::int64_t>(n) * (d - 1) + 1);
}

std::int64_t count_criterion2_observables(int n, int d) {
  if (n < 2 || d < 2) throw std::invalid_argument("count_criterion2_observables: n, d >= 2");
  return 5 * (d - 1) * weighted_site_pair_sum(n, d) +
         (static_cast<std::int64_t>(n) * (d - 1) + 1);
}

std::int64_t tomography_measurement_count(const Dims& dims) {
  std::int64_t total = 1;
  for (int l = 1; l <= dims.num_sites(); ++l) {
    total *= static_cast<std::int64_t>(dims.dim(l)) * dims.dim(l) - 1;
  }
  return total;
}

std::vector<ObservableOp> enumerate_criterion1_settings(const Dims& dims) {
  std::vector<ObservableOp> settings;
  for (int l = 1; l <= dims.num_sites(); ++l) {
    settings.push_back(build_M(l, dims));
    settings.push_back(build_Mtilde(l, dims));
  }
  for (const std::int64_t j : index_set_A(dims)) {
    settings.push_back(build_diag_projector(index_to_dits(j, dims)));
  }
  return settings;
}

std::vector<ObservableOp> enumerate_criterion2_settings(int n, int d) {
  if (n < 2 || d < 2) {
    throw std::invalid_argument("enumerate_criterion2_settings: n, d >= 2");
  }
  const Dims dims(std::vector<int>(static_cast<size_t>(n), d));
  std::vector<ObservableOp> settings;

  // four product settings per coherence: both components of O and of Otilde
  const auto push_product = [&](const char* tag, int r, int s, const Matrix& at_r,
                                const Matrix& at_s) {
    std::ostringstream label;
    label << tag << "(" << r << "," << s << ")";
    settings.push_back(
        make_op(label.str(), {{Complex(1.0), two_site_product(r, s, n, d, at_r, at_s)}}));
  };
  for (int r = 1; r < n; ++r) {
    for (int s = r + 1; s <= n; ++s) {
      for (int a = 1; a <= d - 1; ++a) {
        for (int b = 1; b <= d - 1; ++b) {
          std::ostringstream suffix;
          suffix << "[" << a << "," << b << "]";
          push_product(("MN" + suffix.str()).c_str(), r, s, real_flip(d, a),
                       real_flip(d, b));
          push_product(("MtNt" + suffix.str()).c_str(), r, s, imag_flip(d, a),
                       imag_flip(d, b));
          push_product(("MNt" + suffix.str()).c_str(), r, s, real_flip(d, a),
                       imag_flip(d, b));
          push_product(("MtN" + suffix.str()).c_str(), r, s, imag_flip(d, a),
                       real_flip(d, b));
        }
      }
    }
  }

  const auto push_projector = [&](std::vector<int> digits) {
    settings.push_back(build_diag_projector(DitString(std::move(digits), dims)));
  };
  // two-excitation diagonals referenced by the square roots
  for (int r = 1; r < n; ++r) {
    for (int s = r + 1; s <= n; ++s) {
      for (int a = 1; a <= d - 1; ++a) {
        for (int b = 1; b <= d - 1; ++b) {
          std::vector<int> digits(static_cast<size_t>(n), 0);
          digits[static_cast<size_t>(r - 1)] = a;
          digits[static_cast<size_t>(s - 1)] = b;
          push_projector(std::move(digits));
        }
      }
    }
  }
  // single-excitation diagonals
  for (int i = 1; i <= n; ++i) {
    for (int p = 1; p <= d - 1; ++p) {
      std::vector<int> digits(static_cast<size_t>(n), 0);
      digits[static_cast<size_t>(i - 1)] = p;
      push_projector(std::move(digits));
    }
  }
  // the all-zeros population
  push_projector(std::vector<int>(static_cast<size_t>(n), 0));

  return settings;
}

namespace {

double clamped_expectation(const ObservableOp& op, const DensityMatrix& rho) {
  const double v = expectation(op, rho);
  if (v < -1e-12) {
    throw std::domain_error("measurement evaluation: projector expectation below -1e-12");
  }
  return std::max(v, 0.0);
}

}  // namespace

CriterionReport criterion1_via_measurements(const DensityMatrix& rho, int k,
                                            double violation_tol) {
  const int n = rho.dims.num_sites();
  if (k < 2 || k > n) {
    throw std::invalid_argument("criterion evaluation: k must satisfy 2 <= k <= n");
  }
  const std::int64_t D = rho.total_dim();

  // antidiagonal element from the 2n product settings
  double q_sum = 0.0;
  double qt_sum = 0.0;
  for (int l = 1; l <= n; ++l) {
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    q_sum += sign * expectation(build_M(l, rho.dims), rho);
    qt_sum += sign * expectation(build_Mtilde(l, rho.dims), rho);
  }
  const Complex antidiagonal(q_sum / n / 2.0, -qt_sum / n / 2.0);

  std::unordered_map<std::int64_t, double> diag;
  for (const std::int64_t j : index_set_A(rho.dims)) {
    diag[j] = clamped_expectation(build_diag_projector(index_to_dits(j, rho.dims)), rho);
  }

  const double lhs = (std::exp2(k - 1) - 1.0) * std::abs(antidiagonal);
  double rhs = 0.0;
  for (const std::int64_t j : index_set_A(rho.dims)) {
    rhs += std::sqrt(diag.at(j) * diag.at(D - j + 1));
  }
  rhs *= 0.5;

  const double margin = lhs - rhs;
  return {CriterionId::C1, k, lhs, rhs, margin, margin > violation_tol};
}

CriterionReport criterion2_via_measurements(const DensityMatrix& rho, int k,
                                            double violation_tol) {
  const int n = rho.dims.num_sites();
  if (k < 2 || k > n) {
    throw std::invalid_argument("criterion evaluation: k must satisfy 2 <= k <= n");
  }
  if (!rho.dims.uniform()) {
    throw std::invalid_argument("criterion 2 requires a uniform local dimension");
  }
  const int d = rho.dims.dim(1);

  const auto projector_at = [&](std::vector<int> digits) {
    return clamped_expectation(
        build_diag_projector(DitString(std::move(digits), rho.dims)), rho);
  };

  const double rho11 = projector_at(std::vector<int>(static_cast<size_t>(n), 0));

  double lhs = 0.0;
  double rhs_roots = 0.0;
  for (int r = 1; r < n; ++r) {
    for (int s = r + 1; s <= n; ++s) {
      for (int a = 1; a <= d - 1; ++a) {
        for (int b = 1; b <= d - 1; ++b) {
          const double o = expectation(build_O(r, s, a, b, n, d), rho);
          const double ot = expectation(build_Otilde(r, s, a, b, n, d), rho);
          lhs += std::abs(Complex(o / 2.0, -ot / 2.0));

          std::vector<int> digits(static_cast<size_t>(n), 0);
          digits[static_cast<size_t>(r - 1)] = a;
          digits[static_cast<size_t>(s - 1)] = b;
          rhs_roots += std::sqrt(rho11 * projector_at(std::move(digits)));
        }
      }
    }
  }

  double single_excitation_weight = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int p = 1; p <= d - 1; ++p) {
      std::vector<int> digits(static_cast<size_t>(n), 0);
      digits[static_cast<size_t>(i - 1)] = p;
      single_excitation_weight += projector_at(std::move(digits));
    }
  }

  const double rhs = rhs_roots + 0.5 * (n - k) * single_excitation_weight;
  const double margin = lhs - rhs;
  return {CriterionId::C2, k, lhs, rhs, margin, margin > violation_tol};
}

}  // namespace ksep
