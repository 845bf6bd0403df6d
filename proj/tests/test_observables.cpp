#include "ksep/observables.hpp"

#include "ksep/criteria.hpp"
#include "ksep/linalg.hpp"
#include "ksep/qstate.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

using namespace ksep;

namespace {

const std::vector<std::vector<int>> kContractDims = {{2, 2}, {2, 2, 2}, {3, 3, 3}};

void check_structure(const ObservableOp& op, bool hermitian_factors) {
  CHECK(hermiticity_deviation(op.matrix) <= 1e-12);
  CHECK((assemble(op.terms) - op.matrix).cwiseAbs().maxCoeff() <= 1e-12);
  if (hermitian_factors) {
    for (const ProductTerm& term : op.terms) {
      for (const Matrix& factor : term.factors) {
        CHECK(hermiticity_deviation(factor) <= 1e-12);
      }
    }
  }
}

}  // namespace

TEST_CASE("Q and Qtilde probe the far antidiagonal element") {
  SUBCASE("explicit entries for two qubits") {
    const ObservableOp q = build_Q(Dims({2, 2}));
    CHECK(q.matrix(0, 3) == Complex(1.0, 0.0));
    CHECK(q.matrix(3, 0) == Complex(1.0, 0.0));
    CHECK(q.matrix.cwiseAbs().sum() == 2.0);

    const ObservableOp qt = build_Qtilde(Dims({2, 2}));
    CHECK(qt.matrix(0, 3) == Complex(0.0, -1.0));
    CHECK(qt.matrix(3, 0) == Complex(0.0, 1.0));
  }
  SUBCASE("expectation contract on seeded random states") {
    for (const auto& sizes : kContractDims) {
      const Dims dims(sizes);
      const ObservableOp q = build_Q(dims);
      const ObservableOp qt = build_Qtilde(dims);
      check_structure(q, false);
      check_structure(qt, false);
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const DensityMatrix rho = random_density_matrix(seed, dims);
        const Complex far = rho.at(1, rho.total_dim());
        CHECK(std::abs(expectation(q, rho) - 2.0 * far.real()) <= 1e-12);
        CHECK(std::abs(expectation(qt, rho) + 2.0 * far.imag()) <= 1e-12);
      }
    }
  }
  SUBCASE("real-valued states have zero Qtilde expectation") {
    const DensityMatrix rho = ghz_noise_state(3, 3, 0.4);
    CHECK(std::abs(expectation(build_Qtilde(rho.dims), rho)) <= 1e-14);
  }
}

TEST_CASE("M settings: structure and the alternating-sum identity") {
  SUBCASE("two qubits, l = 2: both angle factors collapse to the real flip") {
    const Dims dims({2, 2});
    const ObservableOp m2 = build_M(2, dims);
    Matrix r = Matrix::Zero(2, 2);
    r(0, 1) = 1.0;
    r(1, 0) = 1.0;
    const Matrix expected = kron(r, r);
    CHECK((m2.matrix - expected).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("factors touch only the extreme levels") {
    const Dims dims({3, 3, 3});
    for (int l = 1; l <= 3; ++l) {
      const ObservableOp m = build_M(l, dims);
      check_structure(m, true);
      for (const Matrix& factor : m.terms.front().factors) {
        for (int a = 0; a < 3; ++a) {
          for (int b = 0; b < 3; ++b) {
            const bool extreme = (a == 0 && b == 2) || (a == 2 && b == 0);
            if (!extreme) CHECK(std::abs(factor(a, b)) == 0.0);
          }
        }
      }
    }
  }
  SUBCASE("sum_l (-1)^l M_l = n Q as a matrix identity") {
    const Dims dims({2, 2});
    Matrix sum = Matrix::Zero(4, 4);
    for (int l = 1; l <= 2; ++l) {
      sum += ((l % 2 == 0) ? 1.0 : -1.0) * build_M(l, dims).matrix;
    }
    CHECK((sum - 2.0 * build_Q(dims).matrix).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("setting index out of range") {
    CHECK_THROWS_AS(build_M(0, Dims({2, 2})), std::invalid_argument);
    CHECK_THROWS_AS(build_M(3, Dims({2, 2})), std::invalid_argument);
  }
}

TEST_CASE("verify_ghz_settings holds for uniform and heterogeneous dims") {
  for (const auto& sizes : std::vector<std::vector<int>>{
           {2, 2}, {2, 2, 2}, {3, 3, 3}, {2, 2, 2, 2}, {2, 3, 4}}) {
    const SettingsIdentityReport report = verify_ghz_settings(Dims(sizes));
    INFO("dims with ", sizes.size(), " sites");
    CHECK(report.passed);
    CHECK(report.m_deviation <= 1e-10);
    CHECK(report.mtilde_deviation <= 1e-10);
  }
}

TEST_CASE("O and Otilde probe single-excitation coherences") {
  SUBCASE("Bell state: maximal real coherence") {
    const DensityMatrix bell = projector(w_state(2, 2));  // (|01> + |10>)/sqrt(2)
    const ObservableOp o = build_O(1, 2, 1, 1, 2, 2);
    CHECK(expectation(o, bell) == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("W(3,3) projector: every coherence is 1/6") {
    const DensityMatrix rho = projector(w_state(3, 3));
    for (int r = 1; r < 3; ++r) {
      for (int s = r + 1; s <= 3; ++s) {
        for (int a = 1; a <= 2; ++a) {
          for (int b = 1; b <= 2; ++b) {
            CHECK(expectation(build_O(r, s, a, b, 3, 3), rho) ==
                  doctest::Approx(1.0 / 3.0).epsilon(1e-13));
            CHECK(std::abs(expectation(build_Otilde(r, s, a, b, 3, 3), rho)) <= 1e-13);
          }
        }
      }
    }
  }
  SUBCASE("expectation contract against the targeted element, random states") {
    const Dims dims({3, 3, 3});
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const DensityMatrix rho = random_density_matrix(seed, dims);
      for (int r = 1; r < 3; ++r) {
        for (int s = r + 1; s <= 3; ++s) {
          for (int a = 1; a <= 2; ++a) {
            for (int b = 1; b <= 2; ++b) {
              const auto [row, col] =
                  target_indices(ElementTarget::coherence(r, s, a, b), dims);
              const Complex element = rho.at(row, col);
              CHECK(std::abs(expectation(build_O(r, s, a, b, 3, 3), rho) -
                             2.0 * element.real()) <= 1e-12);
              CHECK(std::abs(expectation(build_Otilde(r, s, a, b, 3, 3), rho) +
                             2.0 * element.imag()) <= 1e-12);
            }
          }
        }
      }
    }
  }
  SUBCASE("structure") {
    const ObservableOp o = build_O(1, 3, 2, 1, 3, 3);
    const ObservableOp ot = build_Otilde(1, 3, 2, 1, 3, 3);
    check_structure(o, true);
    check_structure(ot, true);
    CHECK(o.terms.size() == 2);
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(build_O(2, 1, 1, 1, 3, 3), std::invalid_argument);  // r >= s
    CHECK_THROWS_AS(build_O(1, 4, 1, 1, 3, 3), std::invalid_argument);  // s > n
    CHECK_THROWS_AS(build_O(1, 2, 0, 1, 3, 3), std::invalid_argument);  // a = 0
    CHECK_THROWS_AS(build_O(1, 2, 1, 3, 3, 3), std::invalid_argument);  // b = d
  }
}

TEST_CASE("the larger-index row is the excitation at the earlier site") {
  const Dims dims({3, 3, 3});
  const auto [row, col] = target_indices(ElementTarget::coherence(1, 2, 2, 1), dims);
  CHECK(row == 2 * 9 + 1);  // digit 2 at site 1
  CHECK(col == 1 * 3 + 1);  // digit 1 at site 2
  CHECK(row > col);
  CHECK(target_indices(ElementTarget::antidiagonal(), dims) ==
        std::pair<std::int64_t, std::int64_t>{1, 27});
}

TEST_CASE("diagonal projectors") {
  const Dims dims({3, 3, 3});
  SUBCASE("maximally mixed state: every population is 1/27") {
    const DensityMatrix rho = maximally_mixed(dims);
    const ObservableOp proj = build_diag_projector(DitString({0, 0, 0}, dims));
    CHECK(expectation(proj, rho) == doctest::Approx(1.0 / 27.0).epsilon(1e-14));
  }
  SUBCASE("W(3,3) single-excitation population is 1/6") {
    const DensityMatrix rho = projector(w_state(3, 3));
    const ObservableOp proj = build_diag_projector(DitString({1, 0, 0}, dims));
    CHECK(expectation(proj, rho) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  }
  SUBCASE("idempotent rank-1 structure") {
    const ObservableOp proj = build_diag_projector(DitString({2, 1, 0}, dims));
    CHECK((proj.matrix * proj.matrix - proj.matrix).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(proj.matrix.diagonal().sum() == Complex(1.0, 0.0));
    check_structure(proj, true);
  }
}

TEST_CASE("reconstruct_element recovers complex matrix elements") {
  SUBCASE("GHZ family at p=0.5: antidiagonal element is 1/6") {
    const DensityMatrix rho = ghz_noise_state(3, 3, 0.5);
    const Complex element = reconstruct_element(rho, ElementTarget::antidiagonal());
    CHECK(std::abs(element - Complex(1.0 / 6.0, 0.0)) <= 1e-13);
  }
  SUBCASE("random states: every supported target to 1e-12") {
    const Dims dims({3, 3, 3});
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const DensityMatrix rho = random_density_matrix(seed, dims);
      std::vector<ElementTarget> targets{ElementTarget::antidiagonal()};
      for (int r = 1; r < 3; ++r) {
        for (int s = r + 1; s <= 3; ++s) {
          for (int a = 1; a <= 2; ++a) {
            for (int b = 1; b <= 2; ++b) {
              targets.push_back(ElementTarget::coherence(r, s, a, b));
            }
          }
        }
      }
      for (const ElementTarget& target : targets) {
        const auto [row, col] = target_indices(target, dims);
        CHECK(std::abs(reconstruct_element(rho, target) - rho.at(row, col)) <= 1e-12);
      }
    }
  }
  SUBCASE("unsupported targets are rejected") {
    const DensityMatrix rho = maximally_mixed(Dims({2, 3}));
    CHECK_THROWS_AS(reconstruct_element(rho, ElementTarget::coherence(1, 2, 1, 1)),
                    std::invalid_argument);  // heterogeneous dims
    CHECK_THROWS_AS(reconstruct_element(maximally_mixed(Dims({3, 3})),
                                        ElementTarget::coherence(1, 2, 1, 3)),
                    std::invalid_argument);  // digit out of range
  }
}

TEST_CASE("measurement-resource counts match the published totals") {
  CHECK(count_criterion1_elements(2) == 3);
  CHECK(count_criterion1_elements(3) == 7);
  CHECK(count_criterion1_observables(2) == 6);
  CHECK(count_criterion1_observables(3) == 12);
  CHECK(count_criterion1_observables(4) == 22);

  CHECK(count_criterion2_elements(3, 3) == 31);
  CHECK(count_criterion2_observables(3, 3) == 67);
  CHECK(count_criterion2_observables(3, 2) == 19);
  CHECK(count_criterion2_observables(4, 3) == 129);

  CHECK(tomography_measurement_count(Dims({3, 3, 3})) == 512);
  CHECK(tomography_measurement_count(Dims({2, 2, 2})) == 27);
  CHECK(tomography_measurement_count(Dims({2, 3, 4})) == 3 * 8 * 15);
}

TEST_CASE("enumerated setting lists have the advertised sizes and are distinct") {
  SUBCASE("criterion 1") {
    for (int n = 2; n <= 4; ++n) {
      const Dims dims(std::vector<int>(static_cast<size_t>(n), 3));
      const auto settings = enumerate_criterion1_settings(dims);
      CHECK(static_cast<std::int64_t>(settings.size()) ==
            count_criterion1_observables(n));
      std::set<std::string> labels;
      for (const auto& op : settings) labels.insert(op.label);
      CHECK(labels.size() == settings.size());
    }
  }
  SUBCASE("criterion 2") {
    for (const auto& [n, d] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {4, 3}}) {
      const auto settings = enumerate_criterion2_settings(n, d);
      CHECK(static_cast<std::int64_t>(settings.size()) ==
            count_criterion2_observables(n, d));
      std::set<std::string> labels;
      for (const auto& op : settings) labels.insert(op.label);
      CHECK(labels.size() == settings.size());
    }
  }
}

TEST_CASE("criteria evaluated from measurements match direct element access") {
  SUBCASE("GHZ family, criterion 1, 11-point grid") {
    for (int i = 0; i <= 10; ++i) {
      const DensityMatrix rho = ghz_noise_state(3, 3, i / 10.0);
      for (int k = 2; k <= 3; ++k) {
        const CriterionReport direct = criterion1_evaluate(rho, k);
        const CriterionReport measured = criterion1_via_measurements(rho, k);
        CHECK(std::abs(direct.lhs - measured.lhs) <= 1e-12);
        CHECK(std::abs(direct.rhs - measured.rhs) <= 1e-12);
        CHECK(direct.violated == measured.violated);
      }
    }
  }
  SUBCASE("W family, criterion 2, 11-point grid") {
    for (int i = 0; i <= 10; ++i) {
      const DensityMatrix rho = w_noise_state(3, 3, i / 10.0);
      for (int k = 2; k <= 3; ++k) {
        const CriterionReport direct = criterion2_evaluate(rho, k);
        const CriterionReport measured = criterion2_via_measurements(rho, k);
        CHECK(std::abs(direct.lhs - measured.lhs) <= 1e-12);
        CHECK(std::abs(direct.rhs - measured.rhs) <= 1e-12);
        CHECK(direct.violated == measured.violated);
      }
    }
  }
  SUBCASE("random states") {
    const Dims dims({3, 3, 3});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const DensityMatrix rho = random_density_matrix(seed, dims);
      const CriterionReport d1 = criterion1_evaluate(rho, 2);
      const CriterionReport m1 = criterion1_via_measurements(rho, 2);
      CHECK(std::abs(d1.lhs - m1.lhs) <= 1e-12);
      CHECK(std::abs(d1.rhs - m1.rhs) <= 1e-12);
      const CriterionReport d2 = criterion2_evaluate(rho, 3);
      const CriterionReport m2 = criterion2_via_measurements(rho, 3);
      CHECK(std::abs(d2.lhs - m2.lhs) <= 1e-12);
      CHECK(std::abs(d2.rhs - m2.rhs) <= 1e-12);
    }
  }
}
