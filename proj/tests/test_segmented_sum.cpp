#include <doctest.h>

#include <random>
#include <vector>

#include "csr5/segmented_sum.hpp"

using namespace csr5;

namespace {

// seg_offset as the format defines it: a head counts the contiguous
// headless positions to its right, everything else is zero.
std::vector<index_t> seg_offset_from_heads(const std::vector<std::uint8_t>& heads) {
  const std::size_t n = heads.size();
  std::vector<index_t> off(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!heads[i]) continue;
    std::size_t j = i + 1;
    while (j < n && !heads[j]) ++j;
    off[i] = static_cast<index_t>(j - i - 1);
  }
  return off;
}

}  // namespace

TEST_CASE("serial segmented sum: two segments") {
  std::vector<double> data{1, 2, 3, 4};
  const std::vector<std::uint8_t> flags{1, 0, 1, 0};
  serial_segmented_sum(std::span<double>(data), std::span<const std::uint8_t>(flags));
  CHECK(data == std::vector<double>{3, 0, 7, 0});
}

TEST_CASE("serial segmented sum: singleton") {
  std::vector<double> data{5};
  const std::vector<std::uint8_t> flags{1};
  serial_segmented_sum(std::span<double>(data), std::span<const std::uint8_t>(flags));
  CHECK(data == std::vector<double>{5});
}

TEST_CASE("serial segmented sum: headless prefix is zeroed") {
  std::vector<double> data{1, 2};
  const std::vector<std::uint8_t> flags{0, 0};
  serial_segmented_sum(std::span<double>(data), std::span<const std::uint8_t>(flags));
  CHECK(data == std::vector<double>{0, 0});
}

TEST_CASE("serial segmented sum: length mismatch") {
  std::vector<double> data{1, 2};
  const std::vector<std::uint8_t> flags{1};
  CHECK_THROWS_AS(
      serial_segmented_sum(std::span<double>(data), std::span<const std::uint8_t>(flags)),
      std::invalid_argument);
}

TEST_CASE("prefix sums") {
  std::vector<double> inc{1, 2, 3};
  inclusive_prefix_sum(inc);
  CHECK(inc == std::vector<double>{1, 3, 6});

  std::vector<index_t> exc{1, 2, 3};
  exclusive_prefix_sum(exc);
  CHECK(exc == std::vector<index_t>{0, 1, 3});

  std::vector<double> empty;
  inclusive_prefix_sum(empty);
  CHECK(empty.empty());

  std::vector<double> zeros(5, 0.0);
  inclusive_prefix_sum(zeros);
  CHECK(zeros == std::vector<double>(5, 0.0));
}

TEST_CASE("fast segmented sum: worked example") {
  std::vector<double> data{1, 2, 3, 4};
  const std::vector<index_t> off{0, 1, 0, 0};
  fast_segmented_sum(std::span<double>(data), std::span<const index_t>(off));
  CHECK(data[0] == 1.0);
  CHECK(data[1] == 5.0);  // 2 + 3
}

TEST_CASE("fast segmented sum: zero offsets keep the input") {
  std::vector<double> data{2.5, -1.25, 8.0};
  const std::vector<index_t> off{0, 0, 0};
  fast_segmented_sum(std::span<double>(data), std::span<const index_t>(off));
  CHECK(data == std::vector<double>{2.5, -1.25, 8.0});
}

TEST_CASE("fast segmented sum: pair reduction") {
  std::vector<double> data{3.0, 4.0};
  const std::vector<index_t> off{1, 0};
  fast_segmented_sum(std::span<double>(data), std::span<const index_t>(off));
  CHECK(data[0] == 7.0);
}

TEST_CASE("fast segmented sum: offset past the end") {
  std::vector<double> data{1, 2};
  const std::vector<index_t> off{2, 0};
  CHECK_THROWS_AS(fast_segmented_sum(std::span<double>(data), std::span<const index_t>(off)),
                  std::out_of_range);
}

TEST_CASE("fast segmented sum agrees with the serial one at head positions") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 64;
    std::vector<double> data(n);
    std::vector<std::uint8_t> heads(n);
    for (std::size_t i = 0; i < n; ++i) {
      data[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
      heads[i] = rng() % 3 == 0 ? 1 : 0;
    }
    const auto off = seg_offset_from_heads(heads);

    std::vector<double> fast(data);
    fast_segmented_sum(std::span<double>(fast), std::span<const index_t>(off));
    std::vector<double> serial(data);
    serial_segmented_sum(std::span<double>(serial), std::span<const std::uint8_t>(heads));

    for (std::size_t i = 0; i < n; ++i) {
      if (!heads[i]) continue;
      CHECK(fast[i] == doctest::Approx(serial[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("fast segmented sum is bit-exact on integer data") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 64;
    std::vector<double> data(n);
    std::vector<std::uint8_t> heads(n);
    for (std::size_t i = 0; i < n; ++i) {
      data[i] = static_cast<double>(static_cast<std::int64_t>(rng() % (1ull << 34)) -
                                    (1ll << 33));
      heads[i] = rng() % 4 == 0 ? 1 : 0;
    }
    const auto off = seg_offset_from_heads(heads);

    std::vector<double> fast(data);
    fast_segmented_sum(std::span<double>(fast), std::span<const index_t>(off));
    std::vector<double> serial(data);
    serial_segmented_sum(std::span<double>(serial), std::span<const std::uint8_t>(heads));

    for (std::size_t i = 0; i < n; ++i) {
      if (heads[i]) CHECK(fast[i] == serial[i]);
    }
  }
}
