#include "csr5/csr.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace csr5 {

void validate(const CsrMatrix& a) {
  if (a.m < 0 || a.n < 0) throw std::runtime_error("csr: negative dimension");
  if (static_cast<index_t>(a.row_ptr.size()) != a.m + 1)
    throw std::runtime_error("csr: row_ptr has size " + std::to_string(a.row_ptr.size()) +
                             ", expected " + std::to_string(a.m + 1));
  if (!a.row_ptr.empty() && a.row_ptr.front() != 0)
    throw std::runtime_error("csr: row_ptr[0] != 0");
  for (index_t i = 0; i < a.m; ++i) {
    if (a.row_ptr[i] > a.row_ptr[i + 1])
      throw std::runtime_error("csr: row_ptr decreases at row " + std::to_string(i));
  }
  const index_t nnz = a.row_ptr.empty() ? 0 : a.row_ptr.back();
  if (static_cast<index_t>(a.col_idx.size()) != nnz || static_cast<index_t>(a.val.size()) != nnz)
    throw std::runtime_error("csr: col_idx/val size does not match row_ptr[m]");
  for (index_t i = 0; i < a.m; ++i) {
    for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      if (a.col_idx[k] < 0 || a.col_idx[k] >= a.n)
        throw std::runtime_error("csr: column index " + std::to_string(a.col_idx[k]) +
                                 " out of range in row " + std::to_string(i));
      if (k > a.row_ptr[i] && a.col_idx[k - 1] >= a.col_idx[k])
        throw std::runtime_error("csr: columns not strictly increasing in row " +
                                 std::to_string(i));
    }
  }
}

CsrMatrix coo_to_csr(std::vector<CooEntry> entries, index_t m, index_t n) {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const CooEntry& e = entries[k];
    if (e.row < 0 || e.row >= m || e.col < 0 || e.col >= n)
      throw std::invalid_argument("coo entry " + std::to_string(k) + " out of bounds: (" +
                                  std::to_string(e.row) + ", " + std::to_string(e.col) +
                                  ") for a " + std::to_string(m) + "x" + std::to_string(n) +
                                  " matrix");
  }

  std::stable_sort(entries.begin(), entries.end(), [](const CooEntry& a, const CooEntry& b) {
    return a.row < b.row || (a.row == b.row && a.col < b.col);
  });

  CsrMatrix a;
  a.m = m;
  a.n = n;
  a.row_ptr.assign(static_cast<std::size_t>(m) + 1, 0);
  a.col_idx.reserve(entries.size());
  a.val.reserve(entries.size());

  for (std::size_t k = 0; k < entries.size();) {
    const index_t row = entries[k].row;
    const index_t col = entries[k].col;
    double sum = 0.0;
    while (k < entries.size() && entries[k].row == row && entries[k].col == col) {
      sum += entries[k].value;
      ++k;
    }
    a.col_idx.push_back(col);
    a.val.push_back(sum);
    a.row_ptr[row + 1] += 1;
  }
  for (index_t i = 0; i < m; ++i) a.row_ptr[i + 1] += a.row_ptr[i];

  validate(a);
  return a;
}

std::vector<CooEntry> csr_to_coo(const CsrMatrix& a) {
  std::vector<CooEntry> entries;
  entries.reserve(static_cast<std::size_t>(a.nnz()));
  for (index_t i = 0; i < a.m; ++i) {
    for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      entries.push_back({i, a.col_idx[k], a.val[k]});
    }
  }
  return entries;
}

DenseVector dense_spmv_oracle(const CsrMatrix& a, const DenseVector& x) {
  if (static_cast<index_t>(x.size()) != a.n)
    throw std::invalid_argument("dense_spmv_oracle: x has length " + std::to_string(x.size()) +
                                ", expected " + std::to_string(a.n));
  DenseVector y(static_cast<std::size_t>(a.m), 0.0);
  for (index_t i = 0; i < a.m; ++i) {
    double sum = 0.0;
    for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      sum += a.val[k] * x[static_cast<std::size_t>(a.col_idx[k])];
    }
    y[static_cast<std::size_t>(i)] = sum;
  }
  return y;
}

}  // namespace csr5
