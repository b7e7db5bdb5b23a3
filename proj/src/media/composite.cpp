#include "item/media/composite.hpp"

#include "item/common/error.hpp"

namespace item::media {

Frame composite_over(const Frame& object, const ForegroundMask& mask, const Frame& background, Offset offset) {
  if (mask.width() != object.width() || mask.height() != object.height()) {
    throw InvalidArgument("composite_over: mask does not match object frame");
  }
  if (offset.x < 0 || offset.y < 0 || offset.x + object.width() > background.width() ||
      offset.y + object.height() > background.height()) {
    throw InvalidArgument("composite_over: object does not fit in background at offset");
  }
  if (offset.x % 2 != 0 || offset.y % 2 != 0) throw InvalidArgument("composite_over: offsets must be even");

  Frame out = background;
  for (int r = 0; r < object.height(); ++r) {
    for (int c = 0; c < object.width(); ++c) {
      if (mask.at(c, r)) out.y(offset.x + c, offset.y + r) = object.y(c, r);
    }
  }
  const ForegroundMask chroma_mask = mask.majority_subsample();
  const int cx0 = offset.x / 2;
  const int cy0 = offset.y / 2;
  for (int r = 0; r < chroma_mask.height(); ++r) {
    for (int c = 0; c < chroma_mask.width(); ++c) {
      if (!chroma_mask.at(c, r)) continue;
      out.cb(cx0 + c, cy0 + r) = object.cb(c, r);
      out.cr(cx0 + c, cy0 + r) = object.cr(c, r);
    }
  }
  return out;
}

}  // namespace item::media
