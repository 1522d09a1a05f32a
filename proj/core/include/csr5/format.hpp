#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "csr5/csr.hpp"
#include "csr5/descriptor.hpp"
#include "csr5/tuning.hpp"

namespace csr5 {

/// Raw tile pointer word. The most significant bit of the configured word
/// width flags a tile whose row range contains at least one empty row; the
/// remaining bits hold the index of the first matrix row in the tile. A
/// flagged first tile therefore stores "negative zero": 1000...000.
struct TilePointer {
  std::uint64_t raw = 0;

  bool operator==(const TilePointer&) const = default;
};

/// 32 while row indices fit in 31 bits, otherwise 64.
int tile_ptr_bits_for_rows(index_t m);

std::uint64_t encode_tile_ptr(index_t row, bool empty_rows, int bits);
index_t decode_tile_ptr_row(std::uint64_t raw, int bits);
bool decode_tile_ptr_flag(std::uint64_t raw, int bits);

/// Position of (column i, depth j) of tile tid in the nonzero stream.
/// Descriptor generation walks logical positions (pre-transpose CSR
/// order); the SpMV kernel reads physical positions (post-transpose).
/// Everything indexes tiles through these two functions.
constexpr index_t tile_logical_index(index_t tid, index_t omega, index_t sigma, index_t i,
                                     index_t j) {
  return tid * omega * sigma + i * sigma + j;
}
constexpr index_t tile_physical_index(index_t tid, index_t omega, index_t sigma, index_t i,
                                      index_t j) {
  return tid * omega * sigma + j * omega + i;
}

/// Rightmost row r with row_ptr[r] <= g and row_ptr[r+1] > g, i.e. the row
/// containing nonzero g. Runs of equal row_ptr values (empty rows) resolve
/// to their last row, the one that actually owns the nonzero. The result
/// is clamped to [0, m-1] so that g = nnz names the final row.
index_t row_of_nonzero(std::span<const index_t> row_ptr, index_t g);

/// Tile pointers for all p + 1 tile boundaries (p = ceil(nnz / (omega *
/// sigma))), encoded at tile_ptr_bits_for_rows(a.m) width. Entries 0..p-1
/// carry the empty-row flag; the closing entry never does.
std::vector<TilePointer> generate_tile_ptr(const CsrMatrix& a, index_t omega, index_t sigma);

/// bit_flag for complete tile tid: TRUE where a matrix row starts, with
/// position (0, 0) forced TRUE. Column-major, omega * sigma entries.
std::vector<std::uint8_t> generate_bit_flag(const CsrMatrix& a, index_t tid, index_t omega,
                                            index_t sigma);

/// y_offset (exclusive scan of per-column head counts) and seg_offset
/// (contiguous headless right neighbors of each head-bearing column).
std::pair<std::vector<index_t>, std::vector<index_t>> generate_y_and_seg_offset(
    std::span<const std::uint8_t> bit_flag, index_t omega, index_t sigma);

/// Corrected relative row offsets for every segment head of a flagged
/// tile, in column-major head order. tile_row is the tile's decoded
/// pointer. One entry per TRUE in bit_flag.
std::vector<index_t> generate_empty_offset(const CsrMatrix& a, index_t tid, index_t tile_row,
                                           std::span<const std::uint8_t> bit_flag, index_t omega,
                                           index_t sigma);

/// Reorders each complete omega*sigma block from row-major (per column of
/// entries, i * sigma + j) to the transposed layout (j * omega + i). The
/// tail past the last complete block is left untouched. Uses one block of
/// scratch.
template <class T>
void transpose_tiles_forward(std::span<T> data, index_t omega, index_t sigma) {
  const index_t block = omega * sigma;
  if (block <= 1) return;
  std::vector<T> scratch(static_cast<std::size_t>(block));
  const index_t complete = static_cast<index_t>(data.size()) / block;
  for (index_t tid = 0; tid < complete; ++tid) {
    T* base = data.data() + tid * block;
    for (index_t i = 0; i < omega; ++i)
      for (index_t j = 0; j < sigma; ++j) scratch[static_cast<std::size_t>(j * omega + i)] = base[i * sigma + j];
    std::copy(scratch.begin(), scratch.end(), base);
  }
}

/// Exact inverse of transpose_tiles_forward.
template <class T>
void transpose_tiles_inverse(std::span<T> data, index_t omega, index_t sigma) {
  const index_t block = omega * sigma;
  if (block <= 1) return;
  std::vector<T> scratch(static_cast<std::size_t>(block));
  const index_t complete = static_cast<index_t>(data.size()) / block;
  for (index_t tid = 0; tid < complete; ++tid) {
    T* base = data.data() + tid * block;
    for (index_t i = 0; i < omega; ++i)
      for (index_t j = 0; j < sigma; ++j) scratch[static_cast<std::size_t>(i * sigma + j)] = base[j * omega + i];
    std::copy(scratch.begin(), scratch.end(), base);
  }
}

/// Word array stored at the narrowest configured width (32 or 64 bits).
class PackedWords {
 public:
  PackedWords() = default;
  PackedWords(std::span<const std::uint64_t> words, int word_bits);

  std::uint64_t operator[](std::size_t i) const {
    return bits_ == 32 ? static_cast<std::uint64_t>(w32_[i]) : w64_[i];
  }
  std::size_t size() const { return bits_ == 32 ? w32_.size() : w64_.size(); }
  int word_bits() const { return bits_; }
  std::size_t byte_size() const { return size() * static_cast<std::size_t>(bits_ / 8); }

  bool operator==(const PackedWords&) const = default;

 private:
  int bits_ = 32;
  std::vector<std::uint32_t> w32_;
  std::vector<std::uint64_t> w64_;
};

/// A sparse matrix in the five-array tiled format: the CSR row_ptr is kept
/// unchanged, col_idx/val are tile-transposed over the complete tiles with
/// the tail left in CSR order, and tile_ptr plus the packed per-tile
/// descriptors (with empty-row offset lists) are added on top.
struct Csr5Matrix {
  index_t m = 0;
  index_t n = 0;
  index_t nnz = 0;
  TuningParams params;

  index_t p = 0;           // tile count, ceil(nnz / (omega * sigma))
  index_t p_complete = 0;  // floor(nnz / (omega * sigma))
  index_t tail_len = 0;    // nnz mod (omega * sigma)

  int tile_ptr_bits = 32;
  DescriptorLayout layout;

  PackedWords tile_ptr;   // p + 1 words
  PackedWords tile_desc;  // p_complete * omega words

  // Concatenated per-tile head offset lists; tile tid owns
  // [empty_offset_ptr[tid], empty_offset_ptr[tid + 1]). Non-empty exactly
  // for flagged complete tiles.
  std::vector<index_t> empty_offset_ptr;
  std::vector<index_t> empty_offset;

  std::vector<index_t> row_ptr;  // m + 1, identical to the source CSR
  std::vector<index_t> col_idx;  // tile-transposed, tail unchanged
  std::vector<double> val;

  index_t omega() const { return params.omega; }
  index_t sigma() const { return params.sigma; }

  index_t tile_row(index_t tid) const {
    return decode_tile_ptr_row(tile_ptr[static_cast<std::size_t>(tid)], tile_ptr_bits);
  }
  bool tile_has_empty_rows(index_t tid) const {
    return decode_tile_ptr_flag(tile_ptr[static_cast<std::size_t>(tid)], tile_ptr_bits);
  }

  /// Unpacked descriptor of complete tile tid.
  TileDescriptor descriptor(index_t tid) const;

  /// Bytes added on top of the CSR arrays: tile_ptr plus the packed
  /// descriptors at their stored word widths.
  std::size_t metadata_bytes() const { return tile_ptr.byte_size() + tile_desc.byte_size(); }

  /// CSR footprint for the given index width (row_ptr + col_idx at
  /// index_bits plus 64-bit values).
  static std::size_t csr_bytes(index_t m, index_t nnz, int index_bits);
};

/// Builds the tiled format: tile_ptr, per-tile descriptors, empty-row
/// offset lists, then the block transposition of col_idx and val. With
/// parallel = false every step runs sequentially; both modes produce
/// identical output.
Csr5Matrix csr_to_csr5(const CsrMatrix& a, const TuningParams& params, bool parallel = true);

/// Drops the tile metadata and undoes the block transposition. The result
/// reproduces the source CSR arrays bit-exactly.
CsrMatrix csr5_to_csr(const Csr5Matrix& a5);

/// Text dump of the tile metadata, one tile per line. Debugging aid, not a
/// stable format.
void dump_format(const Csr5Matrix& a5, std::ostream& out);

}  // namespace csr5
