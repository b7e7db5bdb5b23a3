#include "item/media/frame.hpp"

#include <algorithm>

#include "item/common/error.hpp"

namespace item::media {

Frame::Frame(int width, int height, std::uint8_t y, std::uint8_t cb, std::uint8_t cr)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0 || width % 16 != 0 || height % 16 != 0) {
    throw InvalidArgument("frame dimensions must be positive multiples of 16, got " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
  y_.assign(static_cast<std::size_t>(width) * height, y);
  cb_.assign(static_cast<std::size_t>(width / 2) * (height / 2), cb);
  cr_.assign(static_cast<std::size_t>(width / 2) * (height / 2), cr);
}

ForegroundMask::ForegroundMask(int width, int height, bool value) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw InvalidArgument("negative mask dimensions");
  bits_.assign(static_cast<std::size_t>(width) * height, value ? 1 : 0);
}

std::size_t ForegroundMask::popcount() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

ForegroundMask ForegroundMask::majority_subsample() const {
  ForegroundMask out(width_ / 2, height_ / 2);
  for (int r = 0; r < out.height(); ++r) {
    for (int c = 0; c < out.width(); ++c) {
      const int votes = at(2 * c, 2 * r) + at(2 * c + 1, 2 * r) + at(2 * c, 2 * r + 1) + at(2 * c + 1, 2 * r + 1);
      out.set(c, r, votes >= 2);
    }
  }
  return out;
}

void VideoSequence::validate() const {
  for (const auto& f : frames) {
    if (!f.same_size(frames.front())) throw InvalidArgument("sequence frames differ in size");
  }
  if (masks) {
    if (masks->size() != frames.size()) throw InvalidArgument("mask count does not match frame count");
    for (std::size_t i = 0; i < frames.size(); ++i) {
      if ((*masks)[i].width() != frames[i].width() || (*masks)[i].height() != frames[i].height()) {
        throw InvalidArgument("mask dimensions do not match frame " + std::to_string(i));
      }
    }
  }
  if (fps_num <= 0 || fps_den <= 0) throw InvalidArgument("frame rate must be positive");
}

}  // namespace item::media
