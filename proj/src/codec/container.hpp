#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <zlib.h>

// Byte-level helpers for the ITEMOBJ1 container. Integers are little-endian.
namespace item::codec::container {

inline constexpr std::string_view kMagic = "ITEMOBJ1";
inline constexpr std::size_t kHeaderSize = 8 + 2 + 2 + 1 + 2 + 4 + 4 + 4 + 4;
inline constexpr int kMaxDimension = 4096;

inline void put_le(std::vector<std::uint8_t>& out, std::uint32_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint32_t get_le(const std::uint8_t* p, int bytes) {
  std::uint32_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

inline std::uint32_t crc32_of(const std::uint8_t* p, std::size_t n) {
  return static_cast<std::uint32_t>(::crc32(::crc32(0L, Z_NULL, 0), p, static_cast<uInt>(n)));
}

}  // namespace item::codec::container
