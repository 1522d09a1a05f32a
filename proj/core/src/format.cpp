#include "csr5/format.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

#include "csr5/segmented_sum.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csr5 {

namespace {

std::uint64_t flag_bit(int bits) { return std::uint64_t{1} << (bits - 1); }

}  // namespace

int tile_ptr_bits_for_rows(index_t m) {
  return m < (index_t{1} << 31) ? 32 : 64;
}

std::uint64_t encode_tile_ptr(index_t row, bool empty_rows, int bits) {
  const std::uint64_t flag = flag_bit(bits);
  const auto r = static_cast<std::uint64_t>(row);
  if (r >= flag) throw std::invalid_argument("tile_ptr: row index does not fit in " +
                                             std::to_string(bits - 1) + " bits");
  return empty_rows ? (r | flag) : r;
}

index_t decode_tile_ptr_row(std::uint64_t raw, int bits) {
  return static_cast<index_t>(raw & (flag_bit(bits) - 1));
}

bool decode_tile_ptr_flag(std::uint64_t raw, int bits) {
  return (raw & flag_bit(bits)) != 0;
}

index_t row_of_nonzero(std::span<const index_t> row_ptr, index_t g) {
  const index_t m = static_cast<index_t>(row_ptr.size()) - 1;
  if (m <= 0) return 0;
  // First row whose row_ptr exceeds g, minus one: the rightmost row of a
  // run of equal row pointers, which is the row owning nonzero g.
  const auto it = std::upper_bound(row_ptr.begin(), row_ptr.end(), g);
  index_t r = static_cast<index_t>(it - row_ptr.begin()) - 1;
  return std::clamp<index_t>(r, 0, m - 1);
}

std::vector<TilePointer> generate_tile_ptr(const CsrMatrix& a, index_t omega, index_t sigma) {
  const index_t nnz = a.nnz();
  const index_t block = omega * sigma;
  const index_t p = (nnz + block - 1) / block;
  const int bits = tile_ptr_bits_for_rows(a.m);
  const std::span<const index_t> row_ptr(a.row_ptr);

  std::vector<index_t> rows(static_cast<std::size_t>(p) + 1, 0);
  for (index_t tid = 0; tid <= p; ++tid) {
    rows[static_cast<std::size_t>(tid)] = row_of_nonzero(row_ptr, tid * block);
  }

  std::vector<TilePointer> ptr(static_cast<std::size_t>(p) + 1);
  for (index_t tid = 0; tid < p; ++tid) {
    bool empty = false;
    // The inclusive right endpoint mirrors the construction rule; a flag
    // raised by a boundary row only costs an empty_offset indirection.
    for (index_t rid = rows[static_cast<std::size_t>(tid)];
         rid <= rows[static_cast<std::size_t>(tid + 1)] && rid < a.m; ++rid) {
      if (a.row_ptr[rid] == a.row_ptr[rid + 1]) {
        empty = true;
        break;
      }
    }
    ptr[static_cast<std::size_t>(tid)].raw =
        encode_tile_ptr(rows[static_cast<std::size_t>(tid)], empty, bits);
  }
  ptr[static_cast<std::size_t>(p)].raw =
      encode_tile_ptr(rows[static_cast<std::size_t>(p)], false, bits);
  return ptr;
}

std::vector<std::uint8_t> generate_bit_flag(const CsrMatrix& a, index_t tid, index_t omega,
                                            index_t sigma) {
  const index_t block = omega * sigma;
  const index_t start = tid * block;
  const index_t end = start + block;
  std::vector<std::uint8_t> bf(static_cast<std::size_t>(block), 0);

  // Mark every row start falling inside the tile. Runs of equal row_ptr
  // values collapse onto the same position.
  const auto first = std::lower_bound(a.row_ptr.begin(), a.row_ptr.begin() + a.m, start);
  for (auto it = first; it != a.row_ptr.begin() + a.m && *it < end; ++it) {
    const index_t local = *it - start;  // logical position i * sigma + j
    bf[static_cast<std::size_t>(local)] = 1;
  }
  bf[0] = 1;  // seal the first segment from the top
  return bf;
}

std::pair<std::vector<index_t>, std::vector<index_t>> generate_y_and_seg_offset(
    std::span<const std::uint8_t> bit_flag, index_t omega, index_t sigma) {
  if (static_cast<index_t>(bit_flag.size()) != omega * sigma)
    throw std::invalid_argument("generate_y_and_seg_offset: bit_flag size mismatch");

  std::vector<index_t> y_offset(static_cast<std::size_t>(omega), 0);
  std::vector<index_t> seg_offset(static_cast<std::size_t>(omega), 0);
  std::vector<std::uint8_t> col_has_head(static_cast<std::size_t>(omega), 0);

  for (index_t i = 0; i < omega; ++i) {
    index_t heads = 0;
    for (index_t j = 0; j < sigma; ++j) heads += bit_flag[static_cast<std::size_t>(i * sigma + j)];
    y_offset[static_cast<std::size_t>(i)] = heads;
    col_has_head[static_cast<std::size_t>(i)] = heads > 0 ? 1 : 0;
    seg_offset[static_cast<std::size_t>(i)] = col_has_head[static_cast<std::size_t>(i)] ? 0 : 1;
  }
  exclusive_prefix_sum(y_offset);
  serial_segmented_sum(std::span<index_t>(seg_offset), std::span<const std::uint8_t>(col_has_head));
  return {std::move(y_offset), std::move(seg_offset)};
}

std::vector<index_t> generate_empty_offset(const CsrMatrix& a, index_t tid, index_t tile_row,
                                           std::span<const std::uint8_t> bit_flag, index_t omega,
                                           index_t sigma) {
  std::vector<index_t> offsets;
  const std::span<const index_t> row_ptr(a.row_ptr);
  for (index_t i = 0; i < omega; ++i) {
    for (index_t j = 0; j < sigma; ++j) {
      if (!bit_flag[static_cast<std::size_t>(i * sigma + j)]) continue;
      const index_t g = tile_logical_index(tid, omega, sigma, i, j);
      offsets.push_back(row_of_nonzero(row_ptr, g) - tile_row);
    }
  }
  return offsets;
}

PackedWords::PackedWords(std::span<const std::uint64_t> words, int word_bits) : bits_(word_bits) {
  if (word_bits == 32) {
    w32_.reserve(words.size());
    for (std::uint64_t w : words) {
      if (w >> 32) throw std::invalid_argument("PackedWords: value does not fit in 32 bits");
      w32_.push_back(static_cast<std::uint32_t>(w));
    }
  } else if (word_bits == 64) {
    w64_.assign(words.begin(), words.end());
  } else {
    throw std::invalid_argument("PackedWords: word width must be 32 or 64");
  }
}

TileDescriptor Csr5Matrix::descriptor(index_t tid) const {
  std::vector<std::uint64_t> words(static_cast<std::size_t>(params.omega));
  for (index_t i = 0; i < params.omega; ++i)
    words[static_cast<std::size_t>(i)] = tile_desc[static_cast<std::size_t>(tid * params.omega + i)];
  return unpack_tile_descriptor(words, layout);
}

std::size_t Csr5Matrix::csr_bytes(index_t m, index_t nnz, int index_bits) {
  const std::size_t idx = static_cast<std::size_t>(index_bits / 8);
  return static_cast<std::size_t>(nnz) * (idx + sizeof(double)) +
         static_cast<std::size_t>(m + 1) * idx;
}

Csr5Matrix csr_to_csr5(const CsrMatrix& a, const TuningParams& params, bool parallel) {
  params.validate();
  const index_t omega = params.omega;
  const index_t sigma = params.sigma;
  const index_t block = omega * sigma;

  Csr5Matrix r;
  r.m = a.m;
  r.n = a.n;
  r.nnz = a.nnz();
  r.params = params;
  r.p = (r.nnz + block - 1) / block;
  r.p_complete = r.nnz / block;
  r.tail_len = r.nnz % block;
  r.tile_ptr_bits = tile_ptr_bits_for_rows(a.m);
  r.layout = make_descriptor_layout(omega, sigma);
  r.row_ptr = a.row_ptr;
  r.col_idx = a.col_idx;
  r.val = a.val;

  const auto ptr = generate_tile_ptr(a, omega, sigma);
  {
    std::vector<std::uint64_t> raw(ptr.size());
    for (std::size_t i = 0; i < ptr.size(); ++i) raw[i] = ptr[i].raw;
    r.tile_ptr = PackedWords(raw, r.tile_ptr_bits);
  }

  const index_t pc = r.p_complete;
  std::vector<std::uint64_t> desc_words(static_cast<std::size_t>(pc * omega), 0);
  std::vector<std::vector<index_t>> empty_lists(static_cast<std::size_t>(pc));

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (index_t tid = 0; tid < pc; ++tid) {
    const auto bf = generate_bit_flag(a, tid, omega, sigma);
    auto [y_offset, seg_offset] = generate_y_and_seg_offset(bf, omega, sigma);
    TileDescriptor d{std::move(y_offset), std::move(seg_offset), bf};
    const auto words = pack_tile_descriptor(d, r.layout);
    std::copy(words.begin(), words.end(), desc_words.begin() + tid * omega);
    if (decode_tile_ptr_flag(ptr[static_cast<std::size_t>(tid)].raw, r.tile_ptr_bits)) {
      empty_lists[static_cast<std::size_t>(tid)] = generate_empty_offset(
          a, tid, decode_tile_ptr_row(ptr[static_cast<std::size_t>(tid)].raw, r.tile_ptr_bits),
          bf, omega, sigma);
    }
  }
  r.tile_desc = PackedWords(desc_words, r.layout.word_bits);

  r.empty_offset_ptr.assign(static_cast<std::size_t>(pc) + 1, 0);
  for (index_t tid = 0; tid < pc; ++tid) {
    r.empty_offset_ptr[static_cast<std::size_t>(tid + 1)] =
        r.empty_offset_ptr[static_cast<std::size_t>(tid)] +
        static_cast<index_t>(empty_lists[static_cast<std::size_t>(tid)].size());
  }
  r.empty_offset.resize(static_cast<std::size_t>(r.empty_offset_ptr.back()));
  for (index_t tid = 0; tid < pc; ++tid) {
    std::copy(empty_lists[static_cast<std::size_t>(tid)].begin(),
              empty_lists[static_cast<std::size_t>(tid)].end(),
              r.empty_offset.begin() + r.empty_offset_ptr[static_cast<std::size_t>(tid)]);
  }

#ifdef _OPENMP
#pragma omp parallel if (parallel)
  {
    std::vector<index_t> cidx_scratch(static_cast<std::size_t>(block));
    std::vector<double> val_scratch(static_cast<std::size_t>(block));
#pragma omp for schedule(static)
    for (index_t tid = 0; tid < pc; ++tid) {
      index_t* ci = r.col_idx.data() + tid * block;
      double* vv = r.val.data() + tid * block;
      for (index_t i = 0; i < omega; ++i) {
        for (index_t j = 0; j < sigma; ++j) {
          cidx_scratch[static_cast<std::size_t>(j * omega + i)] = ci[i * sigma + j];
          val_scratch[static_cast<std::size_t>(j * omega + i)] = vv[i * sigma + j];
        }
      }
      std::copy(cidx_scratch.begin(), cidx_scratch.end(), ci);
      std::copy(val_scratch.begin(), val_scratch.end(), vv);
    }
  }
#else
  (void)parallel;
  transpose_tiles_forward(std::span<index_t>(r.col_idx), omega, sigma);
  transpose_tiles_forward(std::span<double>(r.val), omega, sigma);
#endif

  return r;
}

CsrMatrix csr5_to_csr(const Csr5Matrix& a5) {
  CsrMatrix a;
  a.m = a5.m;
  a.n = a5.n;
  a.row_ptr = a5.row_ptr;
  a.col_idx = a5.col_idx;
  a.val = a5.val;
  transpose_tiles_inverse(std::span<index_t>(a.col_idx), a5.omega(), a5.sigma());
  transpose_tiles_inverse(std::span<double>(a.val), a5.omega(), a5.sigma());
  validate(a);
  return a;
}

void dump_format(const Csr5Matrix& a5, std::ostream& out) {
  out << "csr5 m=" << a5.m << " n=" << a5.n << " nnz=" << a5.nnz << " omega=" << a5.omega()
      << " sigma=" << a5.sigma() << " tiles=" << a5.p << " complete=" << a5.p_complete
      << " tail=" << a5.tail_len << " tile_ptr_bits=" << a5.tile_ptr_bits
      << " desc_word_bits=" << a5.layout.word_bits << " metadata_bytes=" << a5.metadata_bytes()
      << " empty_offset_entries=" << a5.empty_offset.size() << '\n';
  for (index_t tid = 0; tid < a5.p; ++tid) {
    out << "tile " << tid << ": row=" << a5.tile_row(tid)
        << " empty=" << (a5.tile_has_empty_rows(tid) ? 1 : 0);
    if (tid >= a5.p_complete) {
      out << " tail nnz=" << a5.tail_len << '\n';
      continue;
    }
    const TileDescriptor d = a5.descriptor(tid);
    out << " y_offset=[";
    for (index_t i = 0; i < a5.omega(); ++i)
      out << (i ? "," : "") << d.y_offset[static_cast<std::size_t>(i)];
    out << "] seg_offset=[";
    for (index_t i = 0; i < a5.omega(); ++i)
      out << (i ? "," : "") << d.seg_offset[static_cast<std::size_t>(i)];
    out << "] bit_flag=[";
    for (index_t i = 0; i < a5.omega(); ++i) {
      if (i) out << ",";
      for (index_t j = 0; j < a5.sigma(); ++j)
        out << (d.bit_flag[static_cast<std::size_t>(i * a5.sigma() + j)] ? '1' : '0');
    }
    out << "]";
    if (a5.tile_has_empty_rows(tid)) {
      out << " empty_offset=[";
      for (index_t k = a5.empty_offset_ptr[static_cast<std::size_t>(tid)];
           k < a5.empty_offset_ptr[static_cast<std::size_t>(tid + 1)]; ++k) {
        if (k != a5.empty_offset_ptr[static_cast<std::size_t>(tid)]) out << ",";
        out << a5.empty_offset[static_cast<std::size_t>(k)];
      }
      out << "]";
    }
    out << '\n';
  }
}

}  // namespace csr5
