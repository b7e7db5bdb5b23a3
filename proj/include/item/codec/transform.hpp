#pragma once

#include <array>
#include <cstdint>

namespace item::codec {

using Block4x4 = std::array<std::int32_t, 16>;

/// Raster index -> zigzag position order for 4x4 blocks.
extern const std::array<int, 16> kZigzag4x4;

/// Non-owning view of an 8-bit sample block.
struct BlockView {
  const std::uint8_t* data = nullptr;
  int stride = 0;
  int width = 0;
  int height = 0;

  std::uint8_t at(int x, int y) const { return data[y * stride + x]; }
};

/// Sum of absolute 4x4 Hadamard coefficients of (a - b), unnormalized.
int satd4x4(const std::uint8_t* a, int stride_a, const std::uint8_t* b, int stride_b);

/// SATD of two equally sized blocks, summed over their 4x4 sub-blocks.
/// Legal sizes: 4x4, 8x4, 4x8, 8x8, 16x8, 8x16, 16x16. Throws
/// InvalidArgument on a size mismatch or an illegal size.
int satd(const BlockView& a, const BlockView& b);

/// Number of 4x4 SATD kernels evaluated on this thread since the last reset.
std::uint64_t satd_call_count();
void reset_satd_call_count();

/// 4x4 integer core transform (forward).
Block4x4 forward_transform(const Block4x4& residual);
/// Inverse core transform including the final (x + 32) >> 6 rounding.
Block4x4 inverse_transform(const Block4x4& coeffs);

/// Dead-zone uniform quantizer; Qstep doubles every 6 qp and is 1.0 at qp 4.
/// The rounding offset is 1/3 of a step for intra blocks and 1/6 for inter.
Block4x4 quantize(const Block4x4& coeffs, int qp, bool intra);
Block4x4 dequantize(const Block4x4& levels, int qp);

/// Residual -> levels -> reconstructed residual, as both encoder and decoder
/// see it. Returns true when any level is nonzero.
bool code_residual(const Block4x4& residual, int qp, bool intra, Block4x4& levels, Block4x4& recon_residual);

Block4x4 reconstruct_residual(const Block4x4& levels, int qp);

}  // namespace item::codec
