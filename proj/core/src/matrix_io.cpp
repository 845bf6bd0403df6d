#include "ksep/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ksep {

namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

void write_density_matrix(std::ostream& out, const DensityMatrix& rho) {
  const std::int64_t D = rho.total_dim();

  std::int64_t nnz = 0;
  for (std::int64_t i = 0; i < D; ++i) {
    for (std::int64_t j = 0; j < D; ++j) {
      if (rho.entries(i, j) != Complex(0.0, 0.0)) ++nnz;
    }
  }

  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << "%dims:";
  for (const int d : rho.dims.sizes()) out << " " << d;
  out << "\n";
  out << D << " " << D << " " << nnz << "\n";

  char line[128];
  for (std::int64_t i = 0; i < D; ++i) {
    for (std::int64_t j = 0; j < D; ++j) {
      const Complex v = rho.entries(i, j);
      if (v == Complex(0.0, 0.0)) continue;
      std::snprintf(line, sizeof line, "%lld %lld %.17g %.17g\n",
                    static_cast<long long>(i + 1), static_cast<long long>(j + 1),
                    v.real(), v.imag());
      out << line;
    }
  }
  if (!out) {
    throw IoError("write_density_matrix: stream write failed");
  }
}

void write_density_matrix_file(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  write_density_matrix(out, rho);
  out.flush();
  if (!out) {
    throw IoError("write to '" + path + "' failed");
  }
}

DensityMatrix read_density_matrix(std::istream& in, std::int64_t cap) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("matrix file: empty input");
  }
  {
    std::istringstream banner(line);
    std::string tag, object, format, field;
    banner >> tag >> object >> format >> field;
    if (tag != "%%MatrixMarket" || lowercase(object) != "matrix" ||
        lowercase(format) != "coordinate" || lowercase(field) != "complex") {
      throw ParseError("matrix file: expected a MatrixMarket coordinate complex banner");
    }
  }

  std::vector<int> dim_sizes;
  std::int64_t rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '%') {
      std::istringstream comment(line);
      std::string key;
      comment >> key;
      if (key == "%dims:") {
        int d = 0;
        while (comment >> d) dim_sizes.push_back(d);
      }
      continue;
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream sizes(line);
    if (!(sizes >> rows >> cols >> nnz)) {
      throw ParseError("matrix file: malformed size line '" + line + "'");
    }
    break;
  }
  if (rows < 0) {
    throw ParseError("matrix file: missing size line");
  }
  if (dim_sizes.empty()) {
    throw ParseError("matrix file: missing %dims: header");
  }
  if (rows != cols) {
    throw ParseError("matrix file: matrix is not square");
  }

  Dims dims(dim_sizes, cap);
  if (dims.total_dim() != rows) {
    throw ParseError("matrix file: size line does not match %dims: product");
  }

  Matrix entries = Matrix::Zero(rows, rows);
  std::int64_t seen = 0;
  while (seen < nnz && std::getline(in, line)) {
    if (line.empty() || line[0] == '%' ||
        line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream entry(line);
    std::int64_t i = 0, j = 0;
    double re = 0.0, im = 0.0;
    if (!(entry >> i >> j >> re >> im)) {
      throw ParseError("matrix file: malformed entry '" + line + "'");
    }
    if (i < 1 || i > rows || j < 1 || j > rows) {
      throw ParseError("matrix file: entry index out of range in '" + line + "'");
    }
    entries(i - 1, j - 1) = Complex(re, im);
    ++seen;
  }
  if (seen != nnz) {
    throw ParseError("matrix file: expected " + std::to_string(nnz) +
                     " entries, found " + std::to_string(seen));
  }

  return DensityMatrix(std::move(entries), std::move(dims));
}

DensityMatrix read_density_matrix_file(const std::string& path, std::int64_t cap) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  return read_density_matrix(in, cap);
}

}  // namespace ksep
