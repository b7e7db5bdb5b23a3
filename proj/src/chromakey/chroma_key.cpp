#include "item/chromakey/chroma_key.hpp"

#include "item/common/error.hpp"

namespace item::chromakey {

using media::ForegroundMask;
using media::Frame;

Frame apply_key(const Frame& frame, const ForegroundMask& mask, KeyColor key) {
  if (mask.width() != frame.width() || mask.height() != frame.height()) {
    throw InvalidArgument("apply_key: mask does not match frame");
  }
  Frame out = frame;
  for (int r = 0; r < frame.height(); ++r) {
    for (int c = 0; c < frame.width(); ++c) {
      if (!mask.at(c, r)) out.y(c, r) = key.y;
    }
  }
  for (int r = 0; r < frame.chroma_height(); ++r) {
    for (int c = 0; c < frame.chroma_width(); ++c) {
      const bool all_fg = mask.at(2 * c, 2 * r) && mask.at(2 * c + 1, 2 * r) && mask.at(2 * c, 2 * r + 1) &&
                          mask.at(2 * c + 1, 2 * r + 1);
      if (!all_fg) {
        out.cb(c, r) = key.cb;
        out.cr(c, r) = key.cr;
      }
    }
  }
  return out;
}

ForegroundMask recover_mask(const Frame& decoded, KeyColor key, double color_tolerance) {
  ForegroundMask mask(decoded.width(), decoded.height());
  const double tol2 = color_tolerance * color_tolerance;
  for (int r = 0; r < decoded.height(); ++r) {
    for (int c = 0; c < decoded.width(); ++c) {
      const double dy = static_cast<double>(decoded.y(c, r)) - key.y;
      const double db = static_cast<double>(decoded.cb(c / 2, r / 2)) - key.cb;
      const double dr = static_cast<double>(decoded.cr(c / 2, r / 2)) - key.cr;
      mask.set(c, r, dy * dy + db * db + dr * dr > tol2);
    }
  }
  return mask;
}

ForegroundMask clean_mask(const ForegroundMask& mask, int neighbor_threshold) {
  if (neighbor_threshold < 0 || neighbor_threshold > 8) {
    throw InvalidArgument("clean_mask: neighbor_threshold must be in [0, 8]");
  }
  ForegroundMask out = mask;
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (!mask.at(c, r)) continue;
      int background = 0;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const int rr = r + dr;
          const int cc = c + dc;
          if (rr < 0 || cc < 0 || rr >= mask.height() || cc >= mask.width() || !mask.at(cc, rr)) ++background;
        }
      }
      if (background > neighbor_threshold) out.set(c, r, false);
    }
  }
  return out;
}

ForegroundMask recover_clean_mask(const Frame& decoded, KeyColor key, const RecoveryParams& params) {
  return clean_mask(recover_mask(decoded, key, params.color_tolerance), params.neighbor_threshold);
}

bool macroblock_is_key(const Frame& frame, int mb_x, int mb_y, KeyColor key) {
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) {
      if (frame.y(mb_x * 16 + c, mb_y * 16 + r) != key.y) return false;
    }
  }
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      if (frame.cb(mb_x * 8 + c, mb_y * 8 + r) != key.cb || frame.cr(mb_x * 8 + c, mb_y * 8 + r) != key.cr) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace item::chromakey
