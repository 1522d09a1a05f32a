#pragma once

#include <random>
#include <vector>

#include "csr5/csr.hpp"

namespace csr5::testing {

// Random canonical matrix built through plain COO entries, independent of
// the library's synthetic generators. Values are positive so relative
// comparisons stay well-conditioned.
inline CsrMatrix random_csr(std::mt19937_64& rng, index_t m, index_t n, index_t nnz_target) {
  std::vector<CooEntry> entries;
  entries.reserve(static_cast<std::size_t>(nnz_target));
  for (index_t k = 0; k < nnz_target; ++k) {
    const auto row = static_cast<index_t>(rng() % static_cast<std::uint64_t>(m));
    const auto col = static_cast<index_t>(rng() % static_cast<std::uint64_t>(n));
    const double v = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
    entries.push_back({row, col, v});
  }
  return coo_to_csr(std::move(entries), m, n);
}

inline DenseVector random_x(std::mt19937_64& rng, index_t n) {
  DenseVector x(static_cast<std::size_t>(n));
  for (double& v : x) v = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return x;
}

}  // namespace csr5::testing
