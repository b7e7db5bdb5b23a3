#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <string_view>

namespace item::codec {

/// Motion vector in quarter-pel units.
struct MotionVector {
  int dx = 0;
  int dy = 0;

  friend bool operator==(const MotionVector&, const MotionVector&) = default;
  int l1() const { return std::abs(dx) + std::abs(dy); }
};

/// Macroblock modes in enumeration (tie-break and bitstream code) order.
enum class MbType : std::uint8_t { Skip = 0, Inter16x16, Inter16x8, Inter8x16, P8x8, I4MB, I16MB };
inline constexpr int kMbTypeCount = 7;

/// Sub-partition of one 8x8 block of a P8x8 macroblock.
enum class SubType : std::uint8_t { Sub8x8 = 0, Sub8x4, Sub4x8, Sub4x4 };

/// Intra 4x4 prediction modes.
enum Intra4Mode : std::uint8_t {
  kI4Vertical = 0,
  kI4Horizontal,
  kI4DC,
  kI4DiagDownLeft,
  kI4DiagDownRight,
  kI4VerticalRight,
  kI4HorizontalDown,
  kI4VerticalLeft,
  kI4HorizontalUp,
};

/// Intra 16x16 prediction modes.
enum Intra16Mode : std::uint8_t { kI16Vertical = 0, kI16Horizontal, kI16DC, kI16Plane };

inline constexpr bool is_intra(MbType t) { return t == MbType::I4MB || t == MbType::I16MB; }
inline constexpr bool is_inter(MbType t) { return !is_intra(t); }

std::string_view to_string(MbType t);

/// Everything about a macroblock's prediction that the bitstream carries.
struct MbInfo {
  MbType type = MbType::Skip;
  std::array<SubType, 4> sub{};
  /// One vector per 4x4 luma block, raster order inside the macroblock.
  std::array<MotionVector, 16> mv{};
  std::array<std::uint8_t, 16> i4_modes{};
  std::uint8_t i16_mode = kI16DC;
};

/// Quantized residual levels of one macroblock: 16 luma blocks (raster
/// order), then 4 Cb and 4 Cr blocks.
struct MbLevels {
  std::array<std::array<std::int32_t, 16>, 24> blocks{};
};

}  // namespace item::codec
