#pragma once

#include <optional>

#include "item/media/frame.hpp"

namespace item::media {

/// Reported for zero MSE instead of +inf.
inline constexpr double kPsnrCap = 99.0;

/// Luma PSNR in dB, optionally restricted to the pixels set in `region`.
/// Throws InvalidArgument on size mismatch or an empty region.
double psnr_luma(const Frame& a, const Frame& b, const ForegroundMask* region = nullptr);

/// Sum of squared luma differences.
double luma_sse(const Frame& a, const Frame& b);

}  // namespace item::media
