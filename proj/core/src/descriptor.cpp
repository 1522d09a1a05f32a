#include "csr5/descriptor.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace csr5 {

namespace {

std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

}  // namespace

int ceil_log2(index_t v) {
  if (v < 1) throw std::invalid_argument("ceil_log2: argument must be >= 1");
  return std::bit_width(static_cast<std::uint64_t>(v) - 1);
}

DescriptorLayout make_descriptor_layout(index_t omega, index_t sigma) {
  if (omega < 1 || sigma < 1)
    throw std::invalid_argument("descriptor layout: omega and sigma must be >= 1");
  DescriptorLayout layout;
  layout.omega = omega;
  layout.sigma = sigma;
  layout.y_offset_bits = ceil_log2(omega * sigma);
  layout.seg_offset_bits = ceil_log2(omega);
  const int total = layout.column_bits();
  if (total > 64)
    throw std::invalid_argument("descriptor layout: " + std::to_string(total) +
                                " bits per column exceed a 64-bit word; choose a smaller sigma");
  layout.word_bits = total <= 32 ? 32 : 64;
  return layout;
}

std::vector<std::uint64_t> pack_tile_descriptor(const TileDescriptor& d,
                                                const DescriptorLayout& layout) {
  const index_t omega = layout.omega;
  const index_t sigma = layout.sigma;
  if (static_cast<index_t>(d.y_offset.size()) != omega ||
      static_cast<index_t>(d.seg_offset.size()) != omega ||
      static_cast<index_t>(d.bit_flag.size()) != omega * sigma)
    throw std::invalid_argument("pack_tile_descriptor: array sizes do not match the layout");

  std::vector<std::uint64_t> words(static_cast<std::size_t>(omega), 0);
  for (index_t i = 0; i < omega; ++i) {
    const auto y = static_cast<std::uint64_t>(d.y_offset[i]);
    const auto s = static_cast<std::uint64_t>(d.seg_offset[i]);
    if (y > low_mask(layout.y_offset_bits) || s > low_mask(layout.seg_offset_bits))
      throw std::invalid_argument("pack_tile_descriptor: field overflow in column " +
                                  std::to_string(i));
    std::uint64_t w = (y << (layout.seg_offset_bits + sigma)) | (s << sigma);
    for (index_t j = 0; j < sigma; ++j) {
      if (d.bit_flag[static_cast<std::size_t>(i * sigma + j)])
        w |= std::uint64_t{1} << (sigma - 1 - j);
    }
    words[static_cast<std::size_t>(i)] = w;
  }
  return words;
}

TileDescriptor unpack_tile_descriptor(std::span<const std::uint64_t> words,
                                      const DescriptorLayout& layout) {
  const index_t omega = layout.omega;
  const index_t sigma = layout.sigma;
  if (static_cast<index_t>(words.size()) != omega)
    throw std::invalid_argument("unpack_tile_descriptor: expected one word per column");

  TileDescriptor d;
  d.y_offset.resize(static_cast<std::size_t>(omega));
  d.seg_offset.resize(static_cast<std::size_t>(omega));
  d.bit_flag.assign(static_cast<std::size_t>(omega * sigma), 0);
  for (index_t i = 0; i < omega; ++i) {
    const std::uint64_t w = words[static_cast<std::size_t>(i)];
    d.y_offset[static_cast<std::size_t>(i)] =
        static_cast<index_t>((w >> (layout.seg_offset_bits + sigma)) &
                             low_mask(layout.y_offset_bits));
    d.seg_offset[static_cast<std::size_t>(i)] =
        static_cast<index_t>((w >> sigma) & low_mask(layout.seg_offset_bits));
    for (index_t j = 0; j < sigma; ++j) {
      d.bit_flag[static_cast<std::size_t>(i * sigma + j)] =
          static_cast<std::uint8_t>((w >> (sigma - 1 - j)) & 1u);
    }
  }
  return d;
}

}  // namespace csr5
