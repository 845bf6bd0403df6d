// matrix_io.hpp
// Plain-text serialization of density matrices: Matrix Market coordinate
// format for complex entries with a %dims: header comment carrying the tensor
// structure. 1-based indices, diff-friendly, exact double round-trip.

#pragma once

#include "ksep/qstate.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace ksep {

// File/stream access failure (open, write).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed file content.
struct ParseError : IoError {
  using IoError::IoError;
};

void write_density_matrix(std::ostream& out, const DensityMatrix& rho);
void write_density_matrix_file(const std::string& path, const DensityMatrix& rho);

DensityMatrix read_density_matrix(std::istream& in, std::int64_t cap = kDefaultDimCap);
DensityMatrix read_density_matrix_file(const std::string& path,
                                       std::int64_t cap = kDefaultDimCap);

}  // namespace ksep
