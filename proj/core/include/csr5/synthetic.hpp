#pragma once

#include <cstdint>
#include <string_view>

#include "csr5/csr.hpp"

namespace csr5 {

/// Shapes for generated test matrices. `regular` spreads the nonzeros
/// evenly across rows; `one_long_row` puts a configurable fraction of them
/// into a single row (the pathological load-balance case); `random_skew`
/// draws row lengths from a geometric-like distribution, which also
/// produces empty rows.
enum class SyntheticKind { regular, one_long_row, random_skew };

SyntheticKind parse_synthetic_kind(std::string_view name);
std::string_view synthetic_kind_name(SyntheticKind kind);

/// Deterministic for a fixed seed. Throws std::invalid_argument when
/// nnz_target cannot be placed (e.g. more entries than m * n, or a long
/// row wider than n).
CsrMatrix generate_synthetic(SyntheticKind kind, index_t m, index_t n, index_t nnz_target,
                             std::uint64_t seed, double long_row_fraction = 0.15);

}  // namespace csr5
