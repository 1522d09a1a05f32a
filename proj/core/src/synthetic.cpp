#include "csr5/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace csr5 {

namespace {

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Values in [0.5, 1.5): positive and away from zero, so row sums stay
// well-conditioned for relative-error comparisons.
double random_value(std::mt19937_64& rng) { return 0.5 + unit_double(rng); }

index_t random_below(std::mt19937_64& rng, index_t bound) {
  return static_cast<index_t>(rng() % static_cast<std::uint64_t>(bound));
}

// L distinct sorted columns out of [0, n).
std::vector<index_t> sample_columns(std::mt19937_64& rng, index_t l, index_t n) {
  std::vector<index_t> cols;
  if (l == n) {
    cols.resize(static_cast<std::size_t>(n));
    for (index_t c = 0; c < n; ++c) cols[static_cast<std::size_t>(c)] = c;
    return cols;
  }
  if (l <= n / 2) {
    std::unordered_set<index_t> picked;
    while (static_cast<index_t>(picked.size()) < l) picked.insert(random_below(rng, n));
    cols.assign(picked.begin(), picked.end());
  } else {
    std::unordered_set<index_t> excluded;
    while (static_cast<index_t>(excluded.size()) < n - l) excluded.insert(random_below(rng, n));
    cols.reserve(static_cast<std::size_t>(l));
    for (index_t c = 0; c < n; ++c)
      if (!excluded.contains(c)) cols.push_back(c);
  }
  std::sort(cols.begin(), cols.end());
  return cols;
}

// L evenly spaced columns; strictly increasing whenever l <= n.
void evenly_spaced_columns(index_t l, index_t n, std::vector<index_t>& out) {
  for (index_t j = 0; j < l; ++j) out.push_back(j * n / l);
}

CsrMatrix from_row_lengths(const std::vector<index_t>& lengths, index_t m, index_t n,
                           std::mt19937_64& rng, bool random_columns) {
  CsrMatrix a;
  a.m = m;
  a.n = n;
  a.row_ptr.assign(static_cast<std::size_t>(m) + 1, 0);
  index_t nnz = 0;
  for (index_t i = 0; i < m; ++i) {
    nnz += lengths[static_cast<std::size_t>(i)];
    a.row_ptr[static_cast<std::size_t>(i + 1)] = nnz;
  }
  a.col_idx.reserve(static_cast<std::size_t>(nnz));
  a.val.reserve(static_cast<std::size_t>(nnz));
  for (index_t i = 0; i < m; ++i) {
    const index_t l = lengths[static_cast<std::size_t>(i)];
    if (l == 0) continue;
    if (random_columns) {
      const auto cols = sample_columns(rng, l, n);
      a.col_idx.insert(a.col_idx.end(), cols.begin(), cols.end());
    } else {
      evenly_spaced_columns(l, n, a.col_idx);
    }
    for (index_t j = 0; j < l; ++j) a.val.push_back(random_value(rng));
  }
  validate(a);
  return a;
}

}  // namespace

SyntheticKind parse_synthetic_kind(std::string_view name) {
  if (name == "regular") return SyntheticKind::regular;
  if (name == "one-long-row") return SyntheticKind::one_long_row;
  if (name == "random") return SyntheticKind::random_skew;
  throw std::invalid_argument("unknown synthetic kind '" + std::string(name) +
                              "' (expected regular, one-long-row or random)");
}

std::string_view synthetic_kind_name(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::regular: return "regular";
    case SyntheticKind::one_long_row: return "one-long-row";
    case SyntheticKind::random_skew: return "random";
  }
  return "?";
}

CsrMatrix generate_synthetic(SyntheticKind kind, index_t m, index_t n, index_t nnz_target,
                             std::uint64_t seed, double long_row_fraction) {
  if (m < 1 || n < 1) throw std::invalid_argument("generate_synthetic: m and n must be >= 1");
  if (nnz_target < 0 || nnz_target > m * n)
    throw std::invalid_argument("generate_synthetic: nnz_target " + std::to_string(nnz_target) +
                                " infeasible for " + std::to_string(m) + "x" + std::to_string(n));
  std::mt19937_64 rng(seed);
  std::vector<index_t> lengths(static_cast<std::size_t>(m), 0);

  switch (kind) {
    case SyntheticKind::regular: {
      const index_t base = nnz_target / m;
      const index_t extra = nnz_target % m;
      for (index_t i = 0; i < m; ++i)
        lengths[static_cast<std::size_t>(i)] = base + (i < extra ? 1 : 0);
      if (base + (extra ? 1 : 0) > n)
        throw std::invalid_argument("generate_synthetic: rows would exceed n columns");
      return from_row_lengths(lengths, m, n, rng, /*random_columns=*/false);
    }
    case SyntheticKind::one_long_row: {
      if (long_row_fraction < 0.0 || long_row_fraction > 1.0)
        throw std::invalid_argument("generate_synthetic: fraction must be in [0, 1]");
      index_t long_len = static_cast<index_t>(std::llround(long_row_fraction *
                                                           static_cast<double>(nnz_target)));
      long_len = std::min(long_len, nnz_target);
      if (long_len > n)
        throw std::invalid_argument("generate_synthetic: long row of " +
                                    std::to_string(long_len) + " entries exceeds n");
      const index_t rest = nnz_target - long_len;
      if (m == 1) {
        lengths[0] = nnz_target;
        if (nnz_target > n)
          throw std::invalid_argument("generate_synthetic: single row exceeds n");
      } else {
        if (rest > (m - 1) * n)
          throw std::invalid_argument("generate_synthetic: remaining entries do not fit");
        const index_t long_row = random_below(rng, m);
        const index_t base = rest / (m - 1);
        const index_t extra = rest % (m - 1);
        if (base + (extra ? 1 : 0) > n)
          throw std::invalid_argument("generate_synthetic: rows would exceed n columns");
        index_t k = 0;
        for (index_t i = 0; i < m; ++i) {
          if (i == long_row) {
            lengths[static_cast<std::size_t>(i)] = long_len;
          } else {
            lengths[static_cast<std::size_t>(i)] = base + (k < extra ? 1 : 0);
            ++k;
          }
        }
      }
      return from_row_lengths(lengths, m, n, rng, /*random_columns=*/false);
    }
    case SyntheticKind::random_skew: {
      const double mean = static_cast<double>(nnz_target) / static_cast<double>(m);
      index_t total = 0;
      for (index_t i = 0; i < m; ++i) {
        const double u = unit_double(rng);
        const auto draw = static_cast<index_t>(-mean * std::log1p(-u));
        lengths[static_cast<std::size_t>(i)] = std::clamp<index_t>(draw, 0, n);
        total += lengths[static_cast<std::size_t>(i)];
      }
      while (total < nnz_target) {
        const index_t i = random_below(rng, m);
        if (lengths[static_cast<std::size_t>(i)] < n) {
          ++lengths[static_cast<std::size_t>(i)];
          ++total;
        }
      }
      while (total > nnz_target) {
        const index_t i = random_below(rng, m);
        if (lengths[static_cast<std::size_t>(i)] > 0) {
          --lengths[static_cast<std::size_t>(i)];
          --total;
        }
      }
      return from_row_lengths(lengths, m, n, rng, /*random_columns=*/true);
    }
  }
  throw std::logic_error("generate_synthetic: unreachable");
}

}  // namespace csr5
