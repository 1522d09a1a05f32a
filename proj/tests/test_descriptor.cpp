#include <doctest.h>

#include <stdexcept>

#include <random>

#include "csr5/descriptor.hpp"
#include "csr5/format.hpp"

using namespace csr5;

namespace {

// Valid random descriptor: draw a bit_flag with a forced head and derive
// y_offset / seg_offset from it, as the conversion does.
TileDescriptor random_descriptor(std::mt19937_64& rng, index_t omega, index_t sigma) {
  std::vector<std::uint8_t> bf(static_cast<std::size_t>(omega * sigma), 0);
  for (auto& b : bf) b = rng() % 4 == 0 ? 1 : 0;
  bf[0] = 1;
  auto [y, seg] = generate_y_and_seg_offset(bf, omega, sigma);
  return TileDescriptor{std::move(y), std::move(seg), std::move(bf)};
}

}  // namespace

TEST_CASE("ceil_log2") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(32) == 5);
  CHECK(ceil_log2(33) == 6);
  CHECK(ceil_log2(512) == 9);
  CHECK_THROWS_AS(ceil_log2(0), std::invalid_argument);
}

TEST_CASE("layout for omega=32 sigma=16 needs 9+5+16 = 30 bits") {
  const DescriptorLayout layout = make_descriptor_layout(32, 16);
  CHECK(layout.y_offset_bits == 9);
  CHECK(layout.seg_offset_bits == 5);
  CHECK(layout.column_bits() == 30);
  CHECK(layout.word_bits == 32);
}

TEST_CASE("layout picks 64-bit words when a column overflows 32 bits") {
  const DescriptorLayout layout = make_descriptor_layout(4, 40);
  CHECK(layout.column_bits() > 32);
  CHECK(layout.word_bits == 64);
}

TEST_CASE("layout rejects columns wider than 64 bits") {
  CHECK_THROWS_WITH_AS(make_descriptor_layout(4, 60), doctest::Contains("smaller sigma"),
                       std::invalid_argument);
}

TEST_CASE("all-zero descriptor packs to all-zero words") {
  const DescriptorLayout layout = make_descriptor_layout(4, 4);
  TileDescriptor d;
  d.y_offset.assign(4, 0);
  d.seg_offset.assign(4, 0);
  d.bit_flag.assign(16, 0);
  const auto words = pack_tile_descriptor(d, layout);
  for (auto w : words) CHECK(w == 0);
}

TEST_CASE("bit_flag depth 0 lands in the top bit of its field") {
  const DescriptorLayout layout = make_descriptor_layout(2, 4);
  TileDescriptor d;
  d.y_offset.assign(2, 0);
  d.seg_offset.assign(2, 0);
  d.bit_flag.assign(8, 0);
  d.bit_flag[0] = 1;  // column 0, depth 0
  const auto words = pack_tile_descriptor(d, layout);
  CHECK(words[0] == 0x8);  // bit sigma-1 = 3
}

TEST_CASE("pack/unpack round-trips random descriptors") {
  std::mt19937_64 rng(17);
  for (index_t omega : {1, 2, 4, 8, 32}) {
    for (index_t sigma : {2, 4, 12, 16}) {
      const DescriptorLayout layout = make_descriptor_layout(omega, sigma);
      for (int trial = 0; trial < 50; ++trial) {
        const TileDescriptor d = random_descriptor(rng, omega, sigma);
        const auto words = pack_tile_descriptor(d, layout);
        CHECK(unpack_tile_descriptor(words, layout) == d);
      }
    }
  }
}

TEST_CASE("pack rejects out-of-range fields") {
  const DescriptorLayout layout = make_descriptor_layout(4, 4);
  TileDescriptor d;
  d.y_offset.assign(4, 0);
  d.seg_offset.assign(4, 0);
  d.bit_flag.assign(16, 0);
  d.y_offset[2] = 1 << 10;
  CHECK_THROWS_AS(pack_tile_descriptor(d, layout), std::invalid_argument);
}
