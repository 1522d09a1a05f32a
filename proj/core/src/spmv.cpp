#include "csr5/spmv.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "csr5/segmented_sum.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csr5 {

namespace {

void check_x(index_t n, const DenseVector& x) {
  if (static_cast<index_t>(x.size()) != n)
    throw std::invalid_argument("spmv: x has length " + std::to_string(x.size()) +
                                ", expected " + std::to_string(n));
}

void check_y(index_t m, std::span<double> y) {
  if (static_cast<index_t>(y.size()) != m)
    throw std::invalid_argument("spmv: y has length " + std::to_string(y.size()) +
                                ", expected " + std::to_string(m));
}

std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

/// Runs one complete tile and hands every partial sum to emit(row, value,
/// accumulate). Scanning down a column, a TRUE flag closes the running
/// segment: the first TRUE closes the piece continuing from the previous
/// column (kept in tmp, shifted one slot left), later TRUEs close segments
/// sealed inside the column. Whatever is left at the bottom is the
/// column's unsealed piece. A column without any head forwards its whole
/// sum through tmp instead and emits nothing. The fast segmented sum then
/// splices the forwarded pieces onto the bottom sums across headless
/// column runs.
template <class EmitFn>
void process_tile(const Csr5Matrix& a5, index_t tid, const double* x, SpmvWorkspace& ws,
                  EmitFn&& emit) {
  const index_t omega = a5.omega();
  const index_t sigma = a5.sigma();
  const DescriptorLayout& L = a5.layout;
  const std::uint64_t seg_mask = low_mask(L.seg_offset_bits);
  const std::uint64_t flag_mask = low_mask(static_cast<int>(sigma));

  const index_t tile_row = a5.tile_row(tid);
  const bool flagged = a5.tile_has_empty_rows(tid);
  const index_t* eo = flagged
                          ? a5.empty_offset.data() + a5.empty_offset_ptr[static_cast<std::size_t>(tid)]
                          : nullptr;
  const auto head_row = [&](index_t head) { return tile_row + (eo ? eo[head] : head); };

  ws.resize(omega);
  std::fill(ws.tmp.begin(), ws.tmp.end(), 0.0);

  for (index_t i = 0; i < omega; ++i) {
    const std::uint64_t w = a5.tile_desc[static_cast<std::size_t>(tid * omega + i)];
    index_t head = static_cast<index_t>((w >> (L.seg_offset_bits + sigma)) &
                                        low_mask(L.y_offset_bits));
    ws.seg_offset[static_cast<std::size_t>(i)] = static_cast<index_t>((w >> sigma) & seg_mask);
    const std::uint64_t flags = w & flag_mask;

    double sum = 0.0;
    bool seen_head = false;
    for (index_t j = 0; j < sigma; ++j) {
      if ((flags >> (sigma - 1 - j)) & 1u) {
        if (!seen_head) {
          // Piece continuing the previous column's open segment. Column 0
          // never produces one: its first flag is the forced head at depth
          // 0, so nothing has accumulated yet.
          assert(i > 0 || (j == 0 && sum == 0.0));
          if (i > 0) ws.tmp[static_cast<std::size_t>(i - 1)] = sum;
          seen_head = true;
        } else {
          // Segment sealed inside this column. Head 0 opens the tile's
          // first row, which the previous tile may also touch.
          emit(head_row(head), sum, /*accumulate=*/head == 0);
          ++head;
        }
        sum = 0.0;
      }
      const index_t ptr = tile_physical_index(tid, omega, sigma, i, j);
      sum += a5.val[static_cast<std::size_t>(ptr)] *
             x[static_cast<std::size_t>(a5.col_idx[static_cast<std::size_t>(ptr)])];
    }
    ws.last_tmp[static_cast<std::size_t>(i)] = sum;
    ws.has_head[static_cast<std::size_t>(i)] = seen_head ? 1 : 0;
    if (!seen_head && i > 0) ws.tmp[static_cast<std::size_t>(i - 1)] = sum;
    ws.blue_head[static_cast<std::size_t>(i)] = head;
  }

  fast_segmented_sum(std::span<double>(ws.tmp), std::span<const index_t>(ws.seg_offset),
                     std::span<double>(ws.scan_scratch));

  for (index_t i = 0; i < omega; ++i) {
    if (!ws.has_head[static_cast<std::size_t>(i)]) continue;
    const double v =
        ws.last_tmp[static_cast<std::size_t>(i)] + ws.tmp[static_cast<std::size_t>(i)];
    emit(head_row(ws.blue_head[static_cast<std::size_t>(i)]), v, /*accumulate=*/true);
  }
}

/// Sequential row block over the rows the tail covers, added into y on top
/// of the tile contributions.
void tail_spmv_add(const Csr5Matrix& a5, const double* x, double* y) {
  if (a5.tail_len == 0) return;
  const index_t tail_start = a5.p_complete * a5.omega() * a5.sigma();
  for (index_t r = a5.tile_row(a5.p_complete); r < a5.m; ++r) {
    const index_t lo = std::max(a5.row_ptr[static_cast<std::size_t>(r)], tail_start);
    const index_t hi = a5.row_ptr[static_cast<std::size_t>(r + 1)];
    if (lo >= hi) continue;
    double sum = 0.0;
    for (index_t k = lo; k < hi; ++k) {
      sum += a5.val[static_cast<std::size_t>(k)] *
             x[static_cast<std::size_t>(a5.col_idx[static_cast<std::size_t>(k)])];
    }
    y[static_cast<std::size_t>(r)] += sum;
  }
}

}  // namespace

void SpmvWorkspace::resize(index_t omega) {
  const auto w = static_cast<std::size_t>(omega);
  if (tmp.size() == w) return;
  tmp.resize(w);
  last_tmp.resize(w);
  scan_scratch.resize(w);
  seg_offset.resize(w);
  blue_head.resize(w);
  has_head.resize(w);
}

void spmv_csr_scalar(const CsrMatrix& a, const DenseVector& x, std::span<double> y) {
  check_x(a.n, x);
  check_y(a.m, y);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (index_t i = 0; i < a.m; ++i) {
    double sum = 0.0;
    for (index_t k = a.row_ptr[static_cast<std::size_t>(i)];
         k < a.row_ptr[static_cast<std::size_t>(i + 1)]; ++k) {
      sum += a.val[static_cast<std::size_t>(k)] *
             x[static_cast<std::size_t>(a.col_idx[static_cast<std::size_t>(k)])];
    }
    y[static_cast<std::size_t>(i)] = sum;
  }
}

DenseVector spmv_csr_scalar(const CsrMatrix& a, const DenseVector& x) {
  DenseVector y(static_cast<std::size_t>(a.m));
  spmv_csr_scalar(a, x, y);
  return y;
}

void spmv_csr_segsum(const CsrMatrix& a, const DenseVector& x, std::span<double> y) {
  check_x(a.n, x);
  check_y(a.m, y);
  const index_t nnz = a.nnz();
  if (nnz == 0) {
    std::fill(y.begin(), y.end(), 0.0);
    return;
  }

  std::vector<std::uint8_t> bit_flag(static_cast<std::size_t>(nnz), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (index_t i = 0; i < a.m; ++i) {
    if (a.row_ptr[static_cast<std::size_t>(i)] < nnz)
      bit_flag[static_cast<std::size_t>(a.row_ptr[static_cast<std::size_t>(i)])] = 1;
  }

  std::vector<double> product(static_cast<std::size_t>(nnz));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (index_t j = 0; j < nnz; ++j) {
    product[static_cast<std::size_t>(j)] =
        a.val[static_cast<std::size_t>(j)] *
        x[static_cast<std::size_t>(a.col_idx[static_cast<std::size_t>(j)])];
  }

  serial_segmented_sum(std::span<double>(product), std::span<const std::uint8_t>(bit_flag));

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (index_t k = 0; k < a.m; ++k) {
    if (a.row_ptr[static_cast<std::size_t>(k)] == a.row_ptr[static_cast<std::size_t>(k + 1)]) {
      y[static_cast<std::size_t>(k)] = 0.0;
    } else {
      y[static_cast<std::size_t>(k)] =
          product[static_cast<std::size_t>(a.row_ptr[static_cast<std::size_t>(k)])];
    }
  }
}

DenseVector spmv_csr_segsum(const CsrMatrix& a, const DenseVector& x) {
  DenseVector y(static_cast<std::size_t>(a.m));
  spmv_csr_segsum(a, x, y);
  return y;
}

std::vector<TileContribution> spmv_csr5_tile(const Csr5Matrix& a5, index_t tid,
                                             const DenseVector& x, SpmvWorkspace& ws) {
  if (tid < 0 || tid >= a5.p_complete)
    throw std::invalid_argument("spmv_csr5_tile: tile " + std::to_string(tid) +
                                " is not a complete tile");
  check_x(a5.n, x);
  std::vector<TileContribution> out;
  process_tile(a5, tid, x.data(), ws, [&](index_t row, double v, bool accumulate) {
    out.push_back({row, v, accumulate});
  });
  return out;
}

void spmv_csr5(const Csr5Matrix& a5, const DenseVector& x, std::span<double> y, SpmvMode mode) {
  check_x(a5.n, x);
  check_y(a5.m, y);
  std::fill(y.begin(), y.end(), 0.0);
  if (a5.nnz == 0) return;

  const index_t pc = a5.p_complete;
  const double* xp = x.data();
  double* yp = y.data();

  if (mode == SpmvMode::deterministic) {
    // Every tile owns a fixed slot range of the boundary buffer, so the
    // parallel phase writes race-free and the ordered combine below is
    // independent of the schedule.
    const index_t cap = a5.omega() + 1;
    std::vector<index_t> acc_rows(static_cast<std::size_t>(pc * cap));
    std::vector<double> acc_vals(static_cast<std::size_t>(pc * cap));
    std::vector<index_t> acc_count(static_cast<std::size_t>(pc), 0);

#ifdef _OPENMP
#pragma omp parallel
#endif
    {
      SpmvWorkspace ws;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
      for (index_t tid = 0; tid < pc; ++tid) {
        index_t count = 0;
        process_tile(a5, tid, xp, ws, [&](index_t row, double v, bool accumulate) {
          if (accumulate) {
            assert(count < cap);
            acc_rows[static_cast<std::size_t>(tid * cap + count)] = row;
            acc_vals[static_cast<std::size_t>(tid * cap + count)] = v;
            ++count;
          } else {
            yp[row] = v;
          }
        });
        acc_count[static_cast<std::size_t>(tid)] = count;
      }
    }

    for (index_t tid = 0; tid < pc; ++tid) {
      for (index_t k = 0; k < acc_count[static_cast<std::size_t>(tid)]; ++k) {
        yp[acc_rows[static_cast<std::size_t>(tid * cap + k)]] +=
            acc_vals[static_cast<std::size_t>(tid * cap + k)];
      }
    }
  } else {
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
      SpmvWorkspace ws;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
      for (index_t tid = 0; tid < pc; ++tid) {
        process_tile(a5, tid, xp, ws, [&](index_t row, double v, bool accumulate) {
          if (accumulate) {
#ifdef _OPENMP
#pragma omp atomic
#endif
            yp[row] += v;
          } else {
            yp[row] = v;
          }
        });
      }
    }
  }

  tail_spmv_add(a5, xp, yp);
}

DenseVector spmv_csr5(const Csr5Matrix& a5, const DenseVector& x, SpmvMode mode) {
  DenseVector y(static_cast<std::size_t>(a5.m));
  spmv_csr5(a5, x, y, mode);
  return y;
}

}  // namespace csr5
