#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "item/codec/transform.hpp"
#include "item/codec/types.hpp"

namespace item::codec {

/// Reconstructed samples around a 4x4 block. Unavailable samples are 128;
/// a missing top-right repeats top[3] when the top row exists.
struct Intra4Neighbors {
  std::array<int, 8> top{128, 128, 128, 128, 128, 128, 128, 128};  // top[0..3] above, top[4..7] above-right
  std::array<int, 4> left{128, 128, 128, 128};
  int top_left = 128;
  bool has_top = false;
  bool has_left = false;
};

constexpr std::array<int, 16> unavailable16() {
  std::array<int, 16> a{};
  a.fill(128);
  return a;
}

/// Reconstructed samples around a 16x16 (or 8x8 chroma) block.
struct Intra16Neighbors {
  std::array<int, 16> top = unavailable16();
  std::array<int, 16> left = unavailable16();
  int top_left = 128;
  bool has_top = false;
  bool has_left = false;
};

/// 4x4 prediction for `mode`. DC averages only the available sides (128
/// with none); directional modes read the 128 substitutes.
std::array<std::uint8_t, 16> predict_intra4(const Intra4Neighbors& n, int mode);

/// 16x16 prediction (vertical, horizontal, DC, plane).
std::array<std::uint8_t, 256> predict_intra16(const Intra16Neighbors& n, int mode);

/// Chroma intra prediction: DC over the available 8 top and 8 left samples.
std::array<std::uint8_t, 64> predict_chroma_dc(const Intra16Neighbors& n);

/// Nominal orientation in degrees of each directional 4x4 mode (DC: none).
std::optional<double> intra4_mode_angle(int mode);

/// Dominant edge angle from a 4x4 forward-transform block:
/// atan(sum_j F[0][j] / sum_i F[i][0]) for i,j in 1..3, mapped to [0, 180).
/// Zero denominator with nonzero numerator gives 90; both zero gives no edge.
std::optional<double> dominant_edge_angle(const Block4x4& coeffs);

/// Three distinct candidate 4x4 modes: DC plus the two directional modes
/// closest (mod 180) to the edge angle, ties to the lower mode index. With no
/// edge the set is DC, the most probable mode, and the lowest-index other
/// mode.
std::array<int, 3> select_intra4_modes(std::optional<double> angle, int most_probable_mode);

}  // namespace item::codec
