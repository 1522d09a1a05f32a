#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "csr5/csr.hpp"

namespace csr5 {

struct MatrixMarketData {
  std::vector<CooEntry> entries;
  index_t m = 0;
  index_t n = 0;
};

/// Parses an ASCII Matrix Market coordinate file. Supported headers are
/// `%%MatrixMarket matrix coordinate <real|integer|pattern>
/// <general|symmetric>`; array and complex files are rejected. Indices are
/// converted to 0-based, pattern entries get value 1.0, and symmetric
/// files are expanded to both triangles with diagonal entries emitted
/// once. Parse errors report the offending line number.
MatrixMarketData read_matrix_market(std::istream& in);
MatrixMarketData read_matrix_market(const std::string& path);

/// read_matrix_market followed by coo_to_csr.
CsrMatrix load_matrix_market(const std::string& path);

}  // namespace csr5
