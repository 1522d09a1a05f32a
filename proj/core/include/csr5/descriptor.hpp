#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "csr5/csr.hpp"

namespace csr5 {

/// Logical view of one complete tile's descriptor.
///
/// y_offset[i] counts the segment heads (TRUE bit flags) in all columns
/// left of column i. seg_offset[i] counts the contiguous right-neighbor
/// columns that contain no head. bit_flag marks the first nonzero of each
/// matrix row, stored column-major ([i * sigma + j] for column i, depth j)
/// with position (0, 0) forced TRUE.
struct TileDescriptor {
  std::vector<index_t> y_offset;         // omega entries
  std::vector<index_t> seg_offset;       // omega entries
  std::vector<std::uint8_t> bit_flag;    // omega * sigma entries, column-major

  bool operator==(const TileDescriptor&) const = default;
};

/// Number of bits needed to represent every value in [0, v).
int ceil_log2(index_t v);

/// Bit-field layout of one packed descriptor column. Fields are laid out
/// most significant first as [y_offset | seg_offset | bit_flag]; the bit
/// flag for depth j sits at bit position sigma - 1 - j of its field.
struct DescriptorLayout {
  index_t omega = 0;
  index_t sigma = 0;
  int y_offset_bits = 0;
  int seg_offset_bits = 0;
  int word_bits = 32;  // 32 when the column fits, otherwise 64

  int column_bits() const { return y_offset_bits + seg_offset_bits + static_cast<int>(sigma); }

  bool operator==(const DescriptorLayout&) const = default;
};

/// Derives the layout for a tile shape. Uses 32-bit words when the column
/// fits and 64-bit words otherwise; throws std::invalid_argument when even
/// 64 bits are not enough (pick a smaller sigma).
DescriptorLayout make_descriptor_layout(index_t omega, index_t sigma);

/// Packs the three descriptor arrays into one word per column.
std::vector<std::uint64_t> pack_tile_descriptor(const TileDescriptor& d,
                                                const DescriptorLayout& layout);

/// Exact inverse of pack_tile_descriptor.
TileDescriptor unpack_tile_descriptor(std::span<const std::uint64_t> words,
                                      const DescriptorLayout& layout);

}  // namespace csr5
