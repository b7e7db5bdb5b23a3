#pragma once

#include "item/media/frame.hpp"

namespace item::media {

struct Offset {
  int x = 0;
  int y = 0;
};

/// Pastes the masked pixels of `object` onto `background` with the object's
/// top-left corner at `offset`. Chroma uses the 2x2 majority-subsampled mask,
/// so offsets must be even. Throws InvalidArgument when the object does not
/// fit or an offset is odd.
Frame composite_over(const Frame& object, const ForegroundMask& mask, const Frame& background, Offset offset);

}  // namespace item::media
