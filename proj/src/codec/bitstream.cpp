#include "item/codec/bitstream.hpp"

#include <bit>

#include "item/common/error.hpp"

namespace item::codec {

int ue_bits(std::uint32_t v) {
  const std::uint64_t x = static_cast<std::uint64_t>(v) + 1;
  return 2 * (63 - std::countl_zero(x)) + 1;
}

namespace {
std::uint32_t se_to_ue(std::int32_t v) {
  return v > 0 ? 2u * static_cast<std::uint32_t>(v) - 1u : 2u * static_cast<std::uint32_t>(-static_cast<std::int64_t>(v));
}
}  // namespace

int se_bits(std::int32_t v) { return ue_bits(se_to_ue(v)); }

void BitWriter::put_bits(std::uint32_t value, int count) {
  for (int i = count - 1; i >= 0; --i) {
    if (bits_ % 8 == 0) bytes_.push_back(0);
    if ((value >> i) & 1u) bytes_.back() = static_cast<std::uint8_t>(bytes_.back() | (0x80u >> (bits_ % 8)));
    ++bits_;
  }
}

void BitWriter::put_ue(std::uint32_t v) {
  const std::uint64_t x = static_cast<std::uint64_t>(v) + 1;
  const int len = 63 - std::countl_zero(x);
  put_bits(0, len);
  // x has len+1 significant bits; write them high to low
  if (len >= 32) {
    put_bits(static_cast<std::uint32_t>(x >> 32), len + 1 - 32);
    put_bits(static_cast<std::uint32_t>(x), 32);
  } else {
    put_bits(static_cast<std::uint32_t>(x), len + 1);
  }
}

void BitWriter::put_se(std::int32_t v) { put_ue(se_to_ue(v)); }

void BitWriter::align() {
  while (bits_ % 8 != 0) put_bit(false);
}

std::uint32_t BitReader::get_bits(int count) {
  if (static_cast<std::size_t>(count) > bits_left()) throw CorruptStream("bitstream: read past end of data");
  std::uint32_t v = 0;
  for (int i = 0; i < count; ++i) {
    const std::uint8_t byte = data_[pos_ / 8];
    v = (v << 1) | ((byte >> (7 - pos_ % 8)) & 1u);
    ++pos_;
  }
  return v;
}

std::uint32_t BitReader::get_ue() {
  int zeros = 0;
  while (!get_bit()) {
    if (++zeros > 31) throw CorruptStream("bitstream: Exp-Golomb prefix too long");
  }
  if (zeros == 0) return 0;
  const std::uint64_t suffix = get_bits(zeros);
  const std::uint64_t value = (std::uint64_t{1} << zeros) - 1 + suffix;
  if (value > 0xFFFFFFFFull) throw CorruptStream("bitstream: Exp-Golomb value overflows 32 bits");
  return static_cast<std::uint32_t>(value);
}

std::int32_t BitReader::get_se() {
  const std::uint32_t k = get_ue();
  if (k == 0) return 0;
  if (k % 2 == 1) return static_cast<std::int32_t>((k + 1) / 2);
  return -static_cast<std::int32_t>(k / 2);
}

}  // namespace item::codec
