#pragma once

#include <cstdint>

#include "item/media/frame.hpp"

namespace item::chromakey {

struct KeyColor {
  std::uint8_t y = 41;
  std::uint8_t cb = 240;
  std::uint8_t cr = 110;
};

struct RecoveryParams {
  /// Max Euclidean YCbCr distance to the key for a pixel to count as background.
  double color_tolerance = 32.0;
  /// A foreground pixel with more than this many background 8-neighbours is
  /// reassigned to background. Must be in [0, 8].
  int neighbor_threshold = 5;
};

/// Replaces every background pixel with the key color. A chroma sample is
/// keyed when any of its four luma pixels is background, so background pixels
/// always carry the exact key triple.
media::Frame apply_key(const media::Frame& frame, const media::ForegroundMask& mask, KeyColor key = {});

/// Thresholding recovery: background iff distance to key <= tolerance.
/// Chroma is upsampled by replication.
media::ForegroundMask recover_mask(const media::Frame& decoded, KeyColor key, double color_tolerance);

/// One Jacobi pass of the neighbour-count filter: every decision reads the
/// input mask; pixels outside the frame count as background.
media::ForegroundMask clean_mask(const media::ForegroundMask& mask, int neighbor_threshold);

/// recover_mask followed by clean_mask.
media::ForegroundMask recover_clean_mask(const media::Frame& decoded, KeyColor key, const RecoveryParams& params);

/// True when every luma and chroma sample of the 16x16 macroblock at
/// (mb_x, mb_y) equals the key exactly.
bool macroblock_is_key(const media::Frame& frame, int mb_x, int mb_y, KeyColor key = {});

}  // namespace item::chromakey
