#pragma once

#include <cstdint>
#include <vector>

namespace csr5 {

using index_t = std::int64_t;

/// One coordinate-format entry. Indices are 0-based.
struct CooEntry {
  index_t row = 0;
  index_t col = 0;
  double value = 0.0;
};

/// Dense vector; its length must match the matrix dimension it is paired
/// with (n for the input x, m for the result y).
using DenseVector = std::vector<double>;

/// Compressed sparse row matrix in canonical form: row_ptr is
/// non-decreasing with row_ptr[0] = 0 and row_ptr[m] = nnz, every column
/// index lies in [0, n), and column indices are strictly increasing within
/// each row.
struct CsrMatrix {
  index_t m = 0;
  index_t n = 0;
  std::vector<index_t> row_ptr;  // m + 1 entries
  std::vector<index_t> col_idx;  // nnz entries
  std::vector<double> val;       // nnz entries

  index_t nnz() const { return row_ptr.empty() ? 0 : row_ptr.back(); }

  bool operator==(const CsrMatrix&) const = default;
};

/// Throws std::runtime_error if `a` violates canonical form.
void validate(const CsrMatrix& a);

/// Builds a canonical CsrMatrix from coordinate entries. Duplicate
/// (row, col) pairs are summed. An out-of-bounds entry raises
/// std::invalid_argument naming the offending entry.
CsrMatrix coo_to_csr(std::vector<CooEntry> entries, index_t m, index_t n);

/// Expands a CSR matrix back to coordinate entries in row-major order.
std::vector<CooEntry> csr_to_coo(const CsrMatrix& a);

/// Reference kernel: y[i] = sum of val[j] * x[col_idx[j]] over row i,
/// accumulated sequentially in row order. Every other kernel in this
/// library is checked against it.
DenseVector dense_spmv_oracle(const CsrMatrix& a, const DenseVector& x);

}  // namespace csr5
