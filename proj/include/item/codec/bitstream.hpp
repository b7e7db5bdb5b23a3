#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace item::codec {

/// Length in bits of the unsigned Exp-Golomb code for `v`.
int ue_bits(std::uint32_t v);
/// Length in bits of the signed Exp-Golomb code for `v` (0, 1, -1, 2, -2, ...).
int se_bits(std::int32_t v);

/// MSB-first bit writer.
class BitWriter {
 public:
  void put_bits(std::uint32_t value, int count);
  void put_bit(bool b) { put_bits(b ? 1u : 0u, 1); }
  void put_ue(std::uint32_t v);
  void put_se(std::int32_t v);
  /// Pads with zero bits to the next byte boundary.
  void align();

  std::size_t bit_count() const { return bits_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

/// Counts bits without storing them; same interface as BitWriter.
class BitCounter {
 public:
  void put_bits(std::uint32_t, int count) { bits_ += static_cast<std::size_t>(count); }
  void put_bit(bool) { ++bits_; }
  void put_ue(std::uint32_t v) { bits_ += static_cast<std::size_t>(ue_bits(v)); }
  void put_se(std::int32_t v) { bits_ += static_cast<std::size_t>(se_bits(v)); }
  std::size_t bit_count() const { return bits_; }

 private:
  std::size_t bits_ = 0;
};

/// MSB-first bit reader over a byte span. Reading past the end or an
/// Exp-Golomb prefix longer than 31 zeros throws CorruptStream.
class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint32_t get_bits(int count);
  bool get_bit() { return get_bits(1) != 0; }
  std::uint32_t get_ue();
  std::int32_t get_se();

  std::size_t position() const { return pos_; }
  std::size_t bits_left() const { return data_.size() * 8 - pos_; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace item::codec
