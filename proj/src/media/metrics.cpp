#include "item/media/metrics.hpp"

#include <cmath>

#include "item/common/error.hpp"

namespace item::media {

double psnr_luma(const Frame& a, const Frame& b, const ForegroundMask* region) {
  if (!a.same_size(b)) throw InvalidArgument("psnr_luma: dimension mismatch");
  if (region && (region->width() != a.width() || region->height() != a.height())) {
    throw InvalidArgument("psnr_luma: region dimension mismatch");
  }
  double sse = 0.0;
  std::size_t count = 0;
  for (int r = 0; r < a.height(); ++r) {
    for (int c = 0; c < a.width(); ++c) {
      if (region && !region->at(c, r)) continue;
      const double d = static_cast<double>(a.y(c, r)) - b.y(c, r);
      sse += d * d;
      ++count;
    }
  }
  if (count == 0) throw InvalidArgument("psnr_luma: empty region");
  if (sse == 0.0) return kPsnrCap;
  const double mse = sse / static_cast<double>(count);
  return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

double luma_sse(const Frame& a, const Frame& b) {
  if (!a.same_size(b)) throw InvalidArgument("luma_sse: dimension mismatch");
  double sse = 0.0;
  for (std::size_t i = 0; i < a.y_plane().size(); ++i) {
    const double d = static_cast<double>(a.y_plane()[i]) - b.y_plane()[i];
    sse += d * d;
  }
  return sse;
}

}  // namespace item::media
