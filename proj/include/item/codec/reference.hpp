#pragma once

#include <cstdint>
#include <vector>

#include "item/codec/types.hpp"
#include "item/media/frame.hpp"

namespace item::codec {

/// Reconstructed reference frame with precomputed quarter-pel luma
/// (six-tap half-pel, bilinear quarter-pel) and edge-replicated padding.
/// Coordinates outside the padded area are clamped, so any vector is safe.
class RefPicture {
 public:
  explicit RefPicture(const media::Frame& recon, int pad = 32);

  int width() const { return width_; }
  int height() const { return height_; }

  /// Luma sample at quarter-pel position (qx, qy) in frame coordinates * 4.
  std::uint8_t luma_q(int qx, int qy) const;

  /// Full-pel luma at (x, y); valid for -pad <= x,y < size + pad.
  const std::uint8_t* full_pel(int x, int y) const { return full_.data() + (y + pad_) * full_stride_ + (x + pad_); }
  int full_stride() const { return full_stride_; }
  int pad() const { return pad_; }

  /// Motion-compensated w x h luma block whose top-left is at integer (x, y).
  void predict_luma(int x, int y, int w, int h, MotionVector mv, std::uint8_t* out, int out_stride) const;
  /// Chroma prediction (eighth-pel bilinear) at chroma position (cx, cy).
  void predict_chroma(int cx, int cy, int w, int h, MotionVector mv, std::uint8_t* cb, std::uint8_t* cr,
                      int out_stride) const;

 private:
  int width_;
  int height_;
  int pad_;
  int full_stride_;
  std::vector<std::uint8_t> full_;
  int q_stride_;
  int q_rows_;
  std::vector<std::uint8_t> quarter_;
  int chroma_width_;
  int chroma_height_;
  std::vector<std::uint8_t> cb_;
  std::vector<std::uint8_t> cr_;
};

}  // namespace item::codec
