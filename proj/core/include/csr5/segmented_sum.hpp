#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "csr5/csr.hpp"

namespace csr5 {

/// In-place serial segmented sum. A segment starts at a TRUE flag and runs
/// to the entry before the next TRUE flag. After the call each head
/// position holds its segment sum and every other position holds zero.
/// A leading run with no head is zeroed; those values are discarded.
template <class T>
void serial_segmented_sum(std::span<T> data, std::span<const std::uint8_t> flags) {
  if (data.size() != flags.size())
    throw std::invalid_argument("serial_segmented_sum: data/flag length mismatch");
  const std::size_t n = data.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (flags[i]) {
      for (std::size_t j = i + 1; j < n && !flags[j]; ++j) data[i] += data[j];
    } else {
      data[i] = T{};
    }
  }
}

/// In-place left-to-right inclusive scan.
void inclusive_prefix_sum(std::span<double> data);

/// In-place exclusive scan starting at zero.
void exclusive_prefix_sum(std::span<index_t> data);

/// In-place fast segmented sum: with S the inclusive scan of the input and
/// tmp its original values, data[i] becomes S[i + seg_offset[i]] - S[i] +
/// tmp[i]. At a position that heads a run (seg_offset counts the entries
/// belonging to it on the right) this equals the run sum; other positions
/// carry deterministic but meaningless values that callers must not read.
/// Requires i + seg_offset[i] < length for every i.
void fast_segmented_sum(std::span<double> data, std::span<const index_t> seg_offset,
                        std::span<double> scratch);

/// Convenience overload that allocates its own scratch buffer.
void fast_segmented_sum(std::span<double> data, std::span<const index_t> seg_offset);

}  // namespace csr5
