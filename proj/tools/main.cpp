// ksep command-line front end: evaluate the element-wise separability
// criteria on constructed or stored states, sweep detection functions into
// CSV, solve noise thresholds, and report measurement resources.

#include "ksep/closedform.hpp"
#include "ksep/criteria.hpp"
#include "ksep/matrix_io.hpp"
#include "ksep/observables.hpp"
#include "ksep/qstate.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

std::string fmt(double v, int precision = 12) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::int64_t resolve_cap(std::int64_t flag_cap) {
  if (flag_cap > 0) return flag_cap;
  if (const char* env = std::getenv("KSEP_DIM_CAP")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v < 2) {
      throw std::invalid_argument("KSEP_DIM_CAP must be an integer >= 2");
    }
    return v;
  }
  return ksep::kDefaultDimCap;
}

ksep::FamilyKind parse_family(const std::string& name) {
  if (name == "ghz-noise") return ksep::FamilyKind::GhzWhiteNoise;
  if (name == "w-noise") return ksep::FamilyKind::WWhiteNoise;
  throw std::invalid_argument("unknown family '" + name + "' (ghz-noise | w-noise)");
}

ksep::CriterionId parse_criterion(const std::string& name) {
  if (name == "c1" || name == "C1") return ksep::CriterionId::C1;
  if (name == "c2" || name == "C2") return ksep::CriterionId::C2;
  throw std::invalid_argument("unknown criterion '" + name + "' (c1 | c2)");
}

// "2" or "2..4"
std::vector<int> parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  int lo = 0, hi = 0;
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text);
    } else {
      lo = std::stoi(text.substr(0, dots));
      hi = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed k range '" + text + "'");
  }
  if (lo > hi) throw std::invalid_argument("malformed k range '" + text + "'");
  std::vector<int> ks;
  for (int k = lo; k <= hi; ++k) ks.push_back(k);
  return ks;
}

// "start..end:count", inclusive endpoints
std::vector<double> parse_p_grid(const std::string& text) {
  const auto dots = text.find("..");
  const auto colon = text.rfind(':');
  if (dots == std::string::npos || colon == std::string::npos || colon < dots) {
    throw std::invalid_argument("malformed p grid '" + text + "' (use start..end:count)");
  }
  double start = 0.0, end = 0.0;
  long count = 0;
  try {
    start = std::stod(text.substr(0, dots));
    end = std::stod(text.substr(dots + 2, colon - dots - 2));
    count = std::stol(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed p grid '" + text + "'");
  }
  if (count < 1 || start > end) {
    throw std::invalid_argument("malformed p grid '" + text + "'");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(count));
  if (count == 1) {
    grid.push_back(start);
  } else {
    for (long i = 0; i < count; ++i) {
      grid.push_back(start + i * (end - start) / static_cast<double>(count - 1));
    }
  }
  return grid;
}

std::string verdict_word(bool violated) { return violated ? "yes" : "no"; }

json report_to_json(const ksep::CriterionReport& r) {
  return json{{"criterion", ksep::to_string(r.criterion)},
              {"k", r.k},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"margin", r.margin},
              {"violated", r.violated}};
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOptions {
  std::string family;
  std::string input;
  int n = 0;
  int d = 0;
  double p = -1.0;
  std::string criterion;
  std::string k_range;
  bool as_json = false;
  std::int64_t cap = 0;
};

void run_evaluate(const EvaluateOptions& opt) {
  const std::int64_t cap = resolve_cap(opt.cap);
  std::optional<ksep::DensityMatrix> rho;
  if (!opt.input.empty()) {
    rho = ksep::read_density_matrix_file(opt.input, cap);
  } else {
    if (opt.p < 0.0) throw std::invalid_argument("evaluate: -p is required with --family");
    const ksep::NoiseFamily family{parse_family(opt.family), opt.n, opt.d, cap};
    rho = family.state_at(opt.p);
  }

  const ksep::CriterionId id = parse_criterion(opt.criterion);
  const std::vector<int> ks = opt.k_range.empty()
                                  ? parse_k_range("2.." + std::to_string(rho->dims.num_sites()))
                                  : parse_k_range(opt.k_range);

  std::vector<ksep::CriterionReport> reports;
  for (const int k : ks) {
    reports.push_back(id == ksep::CriterionId::C1 ? ksep::criterion1_evaluate(*rho, k)
                                                  : ksep::criterion2_evaluate(*rho, k));
  }

  if (opt.as_json) {
    json out = json::array();
    for (const auto& r : reports) out.push_back(report_to_json(r));
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::printf("%-9s %-3s %-16s %-16s %-16s %s\n", "criterion", "k", "lhs", "rhs",
              "margin", "violated");
  for (const auto& r : reports) {
    std::printf("%-9s %-3d %-16s %-16s %-16s %s\n", ksep::to_string(r.criterion).c_str(),
                r.k, fmt(r.lhs).c_str(), fmt(r.rhs).c_str(), fmt(r.margin).c_str(),
                verdict_word(r.violated).c_str());
  }
}

// ---------------------------------------------------------------------------
// figure

struct FigureOptions {
  std::string family;
  int n = 0;
  int d = 0;
  std::string k_range;
  std::string p_grid;
  std::string output;
  bool direct = false;
  std::int64_t cap = 0;
};

void run_figure(const FigureOptions& opt) {
  const std::int64_t cap = resolve_cap(opt.cap);
  const ksep::NoiseFamily family{parse_family(opt.family), opt.n, opt.d, cap};
  const std::vector<int> ks = opt.k_range.empty()
                                  ? parse_k_range("2.." + std::to_string(opt.n))
                                  : parse_k_range(opt.k_range);
  const std::vector<double> grid = parse_p_grid(opt.p_grid);
  const ksep::CriterionId id = family.kind == ksep::FamilyKind::GhzWhiteNoise
                                   ? ksep::CriterionId::C1
                                   : ksep::CriterionId::C2;

  const std::vector<ksep::FigureRow> rows = ksep::figure_data(family, ks, grid);

  // direct recomputation: rhs/lhs of the matching criterion on the
  // constructed state, for cross-checking the closed forms
  std::vector<double> direct;
  double max_diff = 0.0;
  if (opt.direct) {
    direct.reserve(rows.size());
    for (const auto& row : rows) {
      const ksep::DensityMatrix rho = family.state_at(row.p);
      const ksep::CriterionReport r = id == ksep::CriterionId::C1
                                          ? ksep::criterion1_evaluate(rho, row.k)
                                          : ksep::criterion2_evaluate(rho, row.k);
      const double value =
          r.lhs > 0.0 ? r.rhs / r.lhs : std::numeric_limits<double>::infinity();
      direct.push_back(value);
      if (std::isfinite(value) && std::isfinite(row.value)) {
        max_diff = std::max(max_diff, std::abs(value - row.value));
      }
    }
  }

  std::ostringstream csv;
  csv << "p,k,value,detected";
  if (opt.direct) csv << ",direct";
  csv << "\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    csv << fmt(rows[i].p) << "," << rows[i].k << "," << fmt(rows[i].value) << ","
        << (rows[i].detected ? 1 : 0);
    if (opt.direct) csv << "," << fmt(direct[i]);
    csv << "\n";
  }

  if (opt.output.empty()) {
    std::cout << csv.str();
    if (opt.direct) std::cerr << "direct_check max_abs_diff=" << fmt(max_diff) << "\n";
  } else {
    std::ofstream out(opt.output);
    if (!out) throw ksep::IoError("cannot open '" + opt.output + "' for writing");
    out << csv.str();
    out.flush();
    if (!out) throw ksep::IoError("write to '" + opt.output + "' failed");
    if (opt.direct) std::cout << "direct_check max_abs_diff=" << fmt(max_diff) << "\n";
  }
}

// ---------------------------------------------------------------------------
// threshold

struct ThresholdOptions {
  std::string family;
  int n = 0;
  int d = 0;
  std::string criterion;
  std::string k_range;
  bool as_json = false;
  std::int64_t cap = 0;
};

void run_threshold(const ThresholdOptions& opt) {
  const std::int64_t cap = resolve_cap(opt.cap);
  const ksep::NoiseFamily family{parse_family(opt.family), opt.n, opt.d, cap};
  const ksep::CriterionId id =
      opt.criterion.empty()
          ? (family.kind == ksep::FamilyKind::GhzWhiteNoise ? ksep::CriterionId::C1
                                                            : ksep::CriterionId::C2)
          : parse_criterion(opt.criterion);
  const std::vector<int> ks = opt.k_range.empty()
                                  ? parse_k_range("2.." + std::to_string(opt.n))
                                  : parse_k_range(opt.k_range);

  // the analytic column exists only for the family/criterion pairs with a
  // closed form: (ghz-noise, c1) and (w-noise, c2)
  const bool ghz_pair =
      family.kind == ksep::FamilyKind::GhzWhiteNoise && id == ksep::CriterionId::C1;
  const bool w_pair =
      family.kind == ksep::FamilyKind::WWhiteNoise && id == ksep::CriterionId::C2;

  struct Row {
    int k = 0;
    std::optional<double> analytic;
    std::string analytic_note = "-";
    std::optional<double> bisection;
    std::string bisection_note;
    std::optional<double> diff;
    std::string side = "-";
  };
  std::vector<Row> rows;
  for (const int k : ks) {
    Row row;
    row.k = k;
    if (ghz_pair) {
      row.analytic = ksep::alpha_threshold(opt.n, opt.d, k);
    } else if (w_pair) {
      const ksep::BetaThreshold bt = ksep::beta_threshold(opt.n, opt.d, k);
      if (bt.kind == ksep::BetaThreshold::Kind::Interior) {
        row.analytic = bt.p_star;
      } else {
        row.analytic_note = bt.kind == ksep::BetaThreshold::Kind::AlwaysDetected
                                ? "always-detected"
                                : "never-detected";
      }
    }

    const ksep::NoiseThreshold nt = ksep::noise_threshold(family, id, k);
    switch (nt.status) {
      case ksep::NoiseThreshold::Status::Crossing:
        row.bisection = nt.p_star;
        row.side = nt.violated_above ? "p > p*" : "p < p*";
        break;
      case ksep::NoiseThreshold::Status::NeverViolated:
        row.bisection_note = "never-violated";
        break;
      case ksep::NoiseThreshold::Status::AlwaysViolated:
        row.bisection_note = "always-violated";
        break;
    }
    if (row.analytic && row.bisection) {
      row.diff = std::abs(*row.analytic - *row.bisection);
    }
    rows.push_back(row);
  }

  if (opt.as_json) {
    json out = json::array();
    for (const Row& row : rows) {
      json item{{"family", ksep::to_string(family.kind)},
                {"criterion", ksep::to_string(id)},
                {"k", row.k},
                {"analytic", nullptr},
                {"bisection", nullptr},
                {"difference", nullptr},
                {"violated_for", row.side}};
      if (row.analytic) item["analytic"] = *row.analytic;
      if (row.bisection) item["bisection"] = *row.bisection;
      if (row.diff) item["difference"] = *row.diff;
      if (!row.analytic && row.analytic_note != "-") {
        item["analytic_note"] = row.analytic_note;
      }
      if (!row.bisection) item["bisection_note"] = row.bisection_note;
      out.push_back(item);
    }
    std::cout << out.dump(2) << "\n";
    return;
  }

  std::printf("%-10s %-9s %-3s %-16s %-16s %-12s %s\n", "family", "criterion", "k",
              "analytic", "bisection", "difference", "violated_for");
  for (const Row& row : rows) {
    std::printf("%-10s %-9s %-3d %-16s %-16s %-12s %s\n",
                ksep::to_string(family.kind).c_str(), ksep::to_string(id).c_str(),
                row.k, row.analytic ? fmt(*row.analytic).c_str() : row.analytic_note.c_str(),
                row.bisection ? fmt(*row.bisection).c_str() : row.bisection_note.c_str(),
                row.diff ? fmt(*row.diff, 6).c_str() : "-", row.side.c_str());
  }
}

// ---------------------------------------------------------------------------
// observables

struct ObservablesOptions {
  int n = 0;
  int d = 0;
  std::string criterion;
  bool verify = false;
  std::uint64_t seed = 1;
  bool as_json = false;
  std::int64_t cap = 0;
};

struct VerifyLine {
  std::string name;
  double max_dev;
  double tol;
  bool passed;
};

void run_observables(const ObservablesOptions& opt) {
  const std::int64_t cap = resolve_cap(opt.cap);
  const ksep::CriterionId id = parse_criterion(opt.criterion);

  const std::int64_t elements = id == ksep::CriterionId::C1
                                    ? ksep::count_criterion1_elements(opt.n)
                                    : ksep::count_criterion2_elements(opt.n, opt.d);
  const std::int64_t observables = id == ksep::CriterionId::C1
                                       ? ksep::count_criterion1_observables(opt.n)
                                       : ksep::count_criterion2_observables(opt.n, opt.d);
  const ksep::Dims dims(std::vector<int>(static_cast<size_t>(std::max(opt.n, 0)), opt.d),
                        cap);
  const std::int64_t tomography = ksep::tomography_measurement_count(dims);

  std::vector<VerifyLine> lines;
  if (opt.verify) {
    const int n = opt.n;
    const int d = opt.d;

    const auto identity = ksep::verify_ghz_settings(dims);
    lines.push_back({"settings_identity",
                     std::max(identity.m_deviation, identity.mtilde_deviation), 1e-10,
                     identity.passed});

    // expectation contracts on seeded random states
    constexpr int kStates = 100;
    const ksep::ObservableOp q = ksep::build_Q(dims);
    const ksep::ObservableOp qt = ksep::build_Qtilde(dims);
    double q_dev = 0.0;
    double o_dev = 0.0;
    double diag_dev = 0.0;
    for (int i = 0; i < kStates; ++i) {
      const ksep::DensityMatrix rho =
          ksep::random_density_matrix(opt.seed + static_cast<std::uint64_t>(i), dims);
      const ksep::Complex far = rho.at(1, rho.total_dim());
      q_dev = std::max(q_dev, std::abs(ksep::expectation(q, rho) - 2.0 * far.real()));
      q_dev = std::max(q_dev, std::abs(ksep::expectation(qt, rho) + 2.0 * far.imag()));

      if (id == ksep::CriterionId::C2) {
        for (int r = 1; r < n; ++r) {
          for (int s = r + 1; s <= n; ++s) {
            for (int a = 1; a <= d - 1; ++a) {
              for (int b = 1; b <= d - 1; ++b) {
                const auto target = ksep::ElementTarget::coherence(r, s, a, b);
                const auto [row, col] = ksep::target_indices(target, dims);
                o_dev = std::max(o_dev, std::abs(ksep::reconstruct_element(rho, target) -
                                                 rho.at(row, col)));
              }
            }
          }
        }
      }

      const auto diag_target = ksep::index_to_dits(1 + (i % rho.total_dim()), dims);
      diag_dev = std::max(
          diag_dev, std::abs(ksep::expectation(ksep::build_diag_projector(diag_target), rho) -
                             rho.at(1 + (i % rho.total_dim()), 1 + (i % rho.total_dim())).real()));
    }
    lines.push_back({"q_contract", q_dev, 1e-12, q_dev <= 1e-12});
    if (id == ksep::CriterionId::C2) {
      lines.push_back({"o_contract", o_dev, 1e-12, o_dev <= 1e-12});
    }
    lines.push_back({"diag_contract", diag_dev, 1e-12, diag_dev <= 1e-12});

    // criteria evaluated from expectation values vs direct element access
    double match_dev = 0.0;
    bool verdicts_match = true;
    const ksep::FamilyKind kind = id == ksep::CriterionId::C1
                                      ? ksep::FamilyKind::GhzWhiteNoise
                                      : ksep::FamilyKind::WWhiteNoise;
    const ksep::NoiseFamily family{kind, n, d, cap};
    for (int i = 0; i <= 10; ++i) {
      const ksep::DensityMatrix rho = family.state_at(i / 10.0);
      for (int k = 2; k <= n; ++k) {
        const ksep::CriterionReport direct =
            id == ksep::CriterionId::C1 ? ksep::criterion1_evaluate(rho, k)
                                        : ksep::criterion2_evaluate(rho, k);
        const ksep::CriterionReport measured =
            id == ksep::CriterionId::C1 ? ksep::criterion1_via_measurements(rho, k)
                                        : ksep::criterion2_via_measurements(rho, k);
        match_dev = std::max({match_dev, std::abs(direct.lhs - measured.lhs),
                              std::abs(direct.rhs - measured.rhs)});
        verdicts_match = verdicts_match && direct.violated == measured.violated;
      }
    }
    lines.push_back(
        {"measurement_match", match_dev, 1e-10, verdicts_match && match_dev <= 1e-10});

    // the constructed setting list has exactly the advertised size
    const size_t constructed = id == ksep::CriterionId::C1
                                   ? ksep::enumerate_criterion1_settings(dims).size()
                                   : ksep::enumerate_criterion2_settings(n, d).size();
    const bool count_ok = static_cast<std::int64_t>(constructed) == observables;
    lines.push_back({"setting_count", count_ok ? 0.0 : 1.0, 0.5, count_ok});
  }

  if (opt.as_json) {
    json out{{"criterion", ksep::to_string(id)},
             {"n", opt.n},
             {"d", opt.d},
             {"elements", elements},
             {"observables", observables},
             {"tomography_settings", tomography}};
    if (opt.verify) {
      json checks = json::array();
      for (const auto& line : lines) {
        checks.push_back({{"name", line.name},
                          {"max_dev", line.max_dev},
                          {"tol", line.tol},
                          {"passed", line.passed}});
      }
      out["verify"] = checks;
    }
    std::cout << out.dump(2) << "\n";
    return;
  }

  std::printf("%-21s %s\n", "criterion", ksep::to_string(id).c_str());
  std::printf("%-21s %d\n", "n", opt.n);
  std::printf("%-21s %d\n", "d", opt.d);
  std::printf("%-21s %lld\n", "elements", static_cast<long long>(elements));
  std::printf("%-21s %lld\n", "observables", static_cast<long long>(observables));
  std::printf("%-21s %lld\n", "tomography_settings", static_cast<long long>(tomography));
  if (opt.verify) {
    bool all = true;
    for (const auto& line : lines) {
      std::printf("verify %-19s max_dev %-12s %s\n", line.name.c_str(),
                  fmt(line.max_dev, 6).c_str(), line.passed ? "pass" : "FAIL");
      all = all && line.passed;
    }
    std::printf("%-21s %s\n", "verify_result", all ? "all contracts pass" : "FAILURES");
  }
}

// ---------------------------------------------------------------------------
// validate

struct ValidateOptions {
  std::string input;
  std::string family;
  int n = 0;
  int d = 0;
  double p = -1.0;
  bool as_json = false;
  std::int64_t cap = 0;
};

void run_validate(const ValidateOptions& opt) {
  const std::int64_t cap = resolve_cap(opt.cap);
  std::optional<ksep::DensityMatrix> rho;
  if (!opt.input.empty()) {
    rho = ksep::read_density_matrix_file(opt.input, cap);
  } else if (!opt.family.empty()) {
    if (opt.p < 0.0) throw std::invalid_argument("validate: -p is required with --family");
    const ksep::NoiseFamily family{parse_family(opt.family), opt.n, opt.d, cap};
    rho = family.state_at(opt.p);
  } else {
    throw std::invalid_argument("validate: need --input or --family");
  }

  const ksep::ValidationReport report = ksep::validate(*rho);

  std::ostringstream dims_text;
  dims_text << "(";
  for (size_t i = 0; i < rho->dims.sizes().size(); ++i) {
    if (i) dims_text << ",";
    dims_text << rho->dims.sizes()[i];
  }
  dims_text << ")";

  if (opt.as_json) {
    json out{{"dims", rho->dims.sizes()},
             {"hermiticity_deviation", report.hermiticity_deviation},
             {"trace_deviation", report.trace_deviation},
             {"min_eigenvalue", report.min_eigenvalue},
             {"hermitian_ok", report.hermitian_ok},
             {"trace_ok", report.trace_ok},
             {"psd_ok", report.psd_ok},
             {"passed", report.passed()}};
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::printf("%-22s %s\n", "dims", dims_text.str().c_str());
  std::printf("%-22s %-14s tol 1e-12    %s\n", "hermiticity_deviation",
              fmt(report.hermiticity_deviation, 6).c_str(),
              report.hermitian_ok ? "ok" : "FAIL");
  std::printf("%-22s %-14s tol 1e-12    %s\n", "trace_deviation",
              fmt(report.trace_deviation, 6).c_str(), report.trace_ok ? "ok" : "FAIL");
  std::printf("%-22s %-14s floor -1e-10 %s\n", "min_eigenvalue",
              fmt(report.min_eigenvalue, 6).c_str(), report.psd_ok ? "ok" : "FAIL");
  std::printf("%-22s %s\n", "result", report.passed() ? "pass" : "fail");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Element-wise non-k-separability criteria for multipartite qudit states"};
  app.require_subcommand(1);

  EvaluateOptions ev;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Evaluate a criterion on a state");
  auto* ev_family = evaluate->add_option("--family", ev.family, "ghz-noise | w-noise");
  auto* ev_input = evaluate->add_option("--input", ev.input, "density-matrix file");
  ev_family->excludes(ev_input);
  ev_input->excludes(ev_family);
  evaluate->add_option("-n", ev.n, "number of subsystems");
  evaluate->add_option("-d", ev.d, "local dimension");
  evaluate->add_option("-p", ev.p, "family parameter");
  evaluate->add_option("--criterion", ev.criterion, "c1 | c2")->required();
  evaluate->add_option("--k", ev.k_range, "k or k range, e.g. 2 or 2..4");
  evaluate->add_flag("--json", ev.as_json, "JSON output");
  evaluate->add_option("--cap", ev.cap, "total-dimension cap override");
  evaluate->callback([&]() {
    if (ev.input.empty() && ev.family.empty()) {
      throw std::invalid_argument("evaluate: need --family or --input");
    }
    run_evaluate(ev);
  });

  FigureOptions fig;
  CLI::App* figure = app.add_subcommand("figure", "Detection-function sweep as CSV");
  figure->add_option("--family", fig.family, "ghz-noise | w-noise")->required();
  figure->add_option("-n", fig.n, "number of subsystems")->required();
  figure->add_option("-d", fig.d, "local dimension")->required();
  figure->add_option("--k", fig.k_range, "k range (default 2..n)");
  figure->add_option("--p", fig.p_grid, "p grid start..end:count")->required();
  figure->add_option("-o,--output", fig.output, "CSV output path (default stdout)");
  figure->add_flag("--direct", fig.direct,
                   "cross-check against direct criterion evaluation");
  figure->add_option("--cap", fig.cap, "total-dimension cap override");
  figure->callback([&]() { run_figure(fig); });

  ThresholdOptions th;
  CLI::App* threshold =
      app.add_subcommand("threshold", "Analytic and bisection noise thresholds");
  threshold->add_option("--family", th.family, "ghz-noise | w-noise")->required();
  threshold->add_option("-n", th.n, "number of subsystems")->required();
  threshold->add_option("-d", th.d, "local dimension")->required();
  threshold->add_option("--criterion", th.criterion, "c1 | c2 (default by family)");
  threshold->add_option("--k", th.k_range, "k range (default 2..n)");
  threshold->add_flag("--json", th.as_json, "JSON output");
  threshold->add_option("--cap", th.cap, "total-dimension cap override");
  threshold->callback([&]() { run_threshold(th); });

  ObservablesOptions ob;
  CLI::App* observables =
      app.add_subcommand("observables", "Measurement-resource counts and contracts");
  observables->add_option("-n", ob.n, "number of subsystems")->required();
  observables->add_option("-d", ob.d, "local dimension")->required();
  observables->add_option("--criterion", ob.criterion, "c1 | c2")->required();
  observables->add_flag("--verify", ob.verify, "run the verification suite");
  observables->add_option("--seed", ob.seed, "seed for the verification states");
  observables->add_flag("--json", ob.as_json, "JSON output");
  observables->add_option("--cap", ob.cap, "total-dimension cap override");
  observables->callback([&]() { run_observables(ob); });

  ValidateOptions va;
  CLI::App* validate = app.add_subcommand("validate", "Density-matrix validity report");
  auto* va_input = validate->add_option("--input", va.input, "density-matrix file");
  auto* va_family = validate->add_option("--family", va.family, "ghz-noise | w-noise");
  va_input->excludes(va_family);
  va_family->excludes(va_input);
  validate->add_option("-n", va.n, "number of subsystems");
  validate->add_option("-d", va.d, "local dimension");
  validate->add_option("-p", va.p, "family parameter");
  validate->add_flag("--json", va.as_json, "JSON output");
  validate->add_option("--cap", va.cap, "total-dimension cap override");
  validate->callback([&]() { run_validate(va); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const ksep::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
