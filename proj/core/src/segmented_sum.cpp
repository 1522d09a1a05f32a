#include "csr5/segmented_sum.hpp"

#include <algorithm>
#include <vector>

namespace csr5 {

void inclusive_prefix_sum(std::span<double> data) {
  double acc = 0.0;
  for (double& v : data) {
    acc += v;
    v = acc;
  }
}

void exclusive_prefix_sum(std::span<index_t> data) {
  index_t acc = 0;
  for (index_t& v : data) {
    const index_t next = acc + v;
    v = acc;
    acc = next;
  }
}

void fast_segmented_sum(std::span<double> data, std::span<const index_t> seg_offset,
                        std::span<double> scratch) {
  const std::size_t n = data.size();
  if (seg_offset.size() != n)
    throw std::invalid_argument("fast_segmented_sum: data/seg_offset length mismatch");
  if (scratch.size() < n) throw std::invalid_argument("fast_segmented_sum: scratch too small");
  for (std::size_t i = 0; i < n; ++i) {
    if (seg_offset[i] < 0 || i + static_cast<std::size_t>(seg_offset[i]) >= n)
      throw std::out_of_range("fast_segmented_sum: seg_offset[" + std::to_string(i) +
                              "] reaches past the end");
  }
  std::copy(data.begin(), data.end(), scratch.begin());
  inclusive_prefix_sum(data);
  // Ascending order is safe: position i + seg_offset[i] is never written
  // before position i is read.
  for (std::size_t i = 0; i < n; ++i) {
    data[i] = data[i + static_cast<std::size_t>(seg_offset[i])] - data[i] + scratch[i];
  }
}

void fast_segmented_sum(std::span<double> data, std::span<const index_t> seg_offset) {
  std::vector<double> scratch(data.size());
  fast_segmented_sum(data, seg_offset, scratch);
}

}  // namespace csr5
