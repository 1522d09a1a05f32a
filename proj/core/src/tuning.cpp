#include "csr5/tuning.hpp"

#include <cmath>
#include <stdexcept>

namespace csr5 {

void TuningParams::validate() const {
  if (omega < 1 || sigma < 1) throw std::invalid_argument("tuning: omega and sigma must be >= 1");
  if (omega * sigma < 2)
    throw std::invalid_argument("tuning: omega * sigma must be >= 2; a tile needs at least two "
                                "entries for segmentation");
  if (!(r <= s && s <= t)) throw std::invalid_argument("tuning: bounds must satisfy r <= s <= t");
  if (u < 1) throw std::invalid_argument("tuning: u must be >= 1");
}

index_t select_omega(std::optional<index_t> simd_width_hint) {
  if (simd_width_hint) {
    if (*simd_width_hint < 1) throw std::invalid_argument("select_omega: hint must be >= 1");
    return *simd_width_hint;
  }
  return 4;
}

index_t select_sigma(double nnz_per_row, const TuningParams& bounds,
                     std::optional<index_t> fixed_sigma) {
  if (fixed_sigma) return *fixed_sigma;
  if (!(bounds.r <= bounds.s && bounds.s <= bounds.t))
    throw std::invalid_argument("select_sigma: bounds must satisfy r <= s <= t");
  if (nnz_per_row <= static_cast<double>(bounds.r)) return bounds.r;
  if (nnz_per_row <= static_cast<double>(bounds.s)) return std::llround(nnz_per_row);
  if (nnz_per_row <= static_cast<double>(bounds.t)) return bounds.s;
  return bounds.u;
}

}  // namespace csr5
