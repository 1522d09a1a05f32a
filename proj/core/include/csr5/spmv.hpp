#pragma once

#include <span>
#include <vector>

#include "csr5/csr.hpp"
#include "csr5/format.hpp"

namespace csr5 {

/// How cross-tile partial sums reach y. Tiles always run in parallel; the
/// deterministic mode buffers boundary contributions per tile and combines
/// them in ascending tile order, which makes the result bit-identical
/// across runs and thread counts. The atomic mode adds them concurrently
/// and is only reproducible up to floating-point reassociation.
enum class SpmvMode { deterministic, atomic };

/// One partial sum leaving a tile. `accumulate` contributions must be
/// added to y (the row may be shared with a neighboring tile or the tail);
/// the others are owned by exactly one tile and may be stored.
struct TileContribution {
  index_t row = 0;
  double value = 0.0;
  bool accumulate = false;
};

/// Per-worker scratch for the tile kernel; never shared between
/// concurrently executing tiles.
struct SpmvWorkspace {
  std::vector<double> tmp;           // unsealed top pieces, shifted one column left
  std::vector<double> last_tmp;      // unsealed bottom piece per column
  std::vector<double> scan_scratch;  // fast segmented sum scratch
  std::vector<index_t> seg_offset;
  std::vector<index_t> blue_head;    // head index owning each column's bottom piece
  std::vector<std::uint8_t> has_head;

  void resize(index_t omega);
};

/// Row-parallel reference kernel over the CSR arrays.
void spmv_csr_scalar(const CsrMatrix& a, const DenseVector& x, std::span<double> y);
DenseVector spmv_csr_scalar(const CsrMatrix& a, const DenseVector& x);

/// CSR SpMV via scatter, entrywise products, serial segmented sum and a
/// gather that zeroes empty rows.
void spmv_csr_segsum(const CsrMatrix& a, const DenseVector& x, std::span<double> y);
DenseVector spmv_csr_segsum(const CsrMatrix& a, const DenseVector& x);

/// Contributions of one complete tile, in emission order: the sealed
/// interior segments first (per column, top to bottom), then the boundary
/// sums after the fast segmented sum. Exposed for testing; spmv_csr5 runs
/// the same kernel.
std::vector<TileContribution> spmv_csr5_tile(const Csr5Matrix& a5, index_t tid,
                                             const DenseVector& x, SpmvWorkspace& ws);

/// Tile-parallel SpMV over the tiled format, tail handled by a sequential
/// row block pass.
void spmv_csr5(const Csr5Matrix& a5, const DenseVector& x, std::span<double> y,
               SpmvMode mode = SpmvMode::deterministic);
DenseVector spmv_csr5(const Csr5Matrix& a5, const DenseVector& x,
                      SpmvMode mode = SpmvMode::deterministic);

}  // namespace csr5
