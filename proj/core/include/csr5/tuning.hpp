#pragma once

#include <optional>

#include "csr5/csr.hpp"

namespace csr5 {

/// Tile shape and the sparsity-driven selection rule for the tile height.
/// omega is the tile width (one SIMD lane per column), sigma the tile
/// height. r, s, t are nnz-per-row bounds and u the fallback height used
/// when the average row is longer than t.
struct TuningParams {
  index_t omega = 4;
  index_t sigma = 16;
  index_t r = 4;
  index_t s = 32;
  index_t t = 256;
  index_t u = 4;

  /// Throws std::invalid_argument unless omega >= 1, sigma >= 1,
  /// omega * sigma >= 2, r <= s <= t and u >= 1.
  void validate() const;
};

/// Tile width: the SIMD lane hint when given, otherwise 4 (the
/// double-precision width of a 256-bit vector unit).
index_t select_omega(std::optional<index_t> simd_width_hint = std::nullopt);

/// Tile height. A fixed value wins when supplied (the x86 setting);
/// otherwise the piecewise rule over the average row length:
///   sigma = r               if nnz/row <= r
///         = round(nnz/row)  if r < nnz/row <= s
///         = s               if s < nnz/row <= t
///         = u               otherwise.
index_t select_sigma(double nnz_per_row, const TuningParams& bounds,
                     std::optional<index_t> fixed_sigma = std::nullopt);

}  // namespace csr5
