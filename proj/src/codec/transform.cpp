#include "item/codec/transform.hpp"

#include <cstdlib>

#include "item/common/error.hpp"

namespace item::codec {

const std::array<int, 16> kZigzag4x4 = {0, 1, 4, 8, 5, 2, 3, 6, 9, 12, 13, 10, 7, 11, 14, 15};

namespace {

thread_local std::uint64_t g_satd_calls = 0;

// quantizer multipliers and dequantizer scales per (qp % 6) and position class
constexpr int kQuantMf[6][3] = {{13107, 5243, 8066}, {11916, 4660, 7490}, {10082, 4194, 6554},
                                {9362, 3647, 5825},  {8192, 3355, 5243}, {7282, 2893, 4559}};
constexpr int kDequantV[6][3] = {{10, 16, 13}, {11, 18, 14}, {13, 20, 16}, {14, 23, 18}, {16, 25, 20}, {18, 29, 23}};

constexpr int position_class(int i) {
  const int r = i / 4;
  const int c = i % 4;
  if (r % 2 == 0 && c % 2 == 0) return 0;
  if (r % 2 == 1 && c % 2 == 1) return 1;
  return 2;
}

bool legal_size(int w, int h) {
  return (w == 4 && h == 4) || (w == 8 && h == 4) || (w == 4 && h == 8) || (w == 8 && h == 8) ||
         (w == 16 && h == 8) || (w == 8 && h == 16) || (w == 16 && h == 16);
}

}  // namespace

int satd4x4(const std::uint8_t* a, int stride_a, const std::uint8_t* b, int stride_b) {
  ++g_satd_calls;
  int d[16];
  for (int r = 0; r < 4; ++r) {
    const int d0 = a[r * stride_a + 0] - b[r * stride_b + 0];
    const int d1 = a[r * stride_a + 1] - b[r * stride_b + 1];
    const int d2 = a[r * stride_a + 2] - b[r * stride_b + 2];
    const int d3 = a[r * stride_a + 3] - b[r * stride_b + 3];
    const int s01 = d0 + d1, m01 = d0 - d1, s23 = d2 + d3, m23 = d2 - d3;
    d[r * 4 + 0] = s01 + s23;
    d[r * 4 + 1] = s01 - s23;
    d[r * 4 + 2] = m01 - m23;
    d[r * 4 + 3] = m01 + m23;
  }
  int sum = 0;
  for (int c = 0; c < 4; ++c) {
    const int s01 = d[c] + d[4 + c], m01 = d[c] - d[4 + c];
    const int s23 = d[8 + c] + d[12 + c], m23 = d[8 + c] - d[12 + c];
    sum += std::abs(s01 + s23) + std::abs(s01 - s23) + std::abs(m01 - m23) + std::abs(m01 + m23);
  }
  return sum;
}

int satd(const BlockView& a, const BlockView& b) {
  if (a.width != b.width || a.height != b.height) throw InvalidArgument("satd: block dimension mismatch");
  if (!legal_size(a.width, a.height)) throw InvalidArgument("satd: unsupported block size");
  int sum = 0;
  for (int y = 0; y < a.height; y += 4) {
    for (int x = 0; x < a.width; x += 4) {
      sum += satd4x4(a.data + y * a.stride + x, a.stride, b.data + y * b.stride + x, b.stride);
    }
  }
  return sum;
}

std::uint64_t satd_call_count() { return g_satd_calls; }
void reset_satd_call_count() { g_satd_calls = 0; }

Block4x4 forward_transform(const Block4x4& x) {
  Block4x4 t{};
  for (int r = 0; r < 4; ++r) {
    const int s03 = x[r * 4 + 0] + x[r * 4 + 3], d03 = x[r * 4 + 0] - x[r * 4 + 3];
    const int s12 = x[r * 4 + 1] + x[r * 4 + 2], d12 = x[r * 4 + 1] - x[r * 4 + 2];
    t[r * 4 + 0] = s03 + s12;
    t[r * 4 + 1] = 2 * d03 + d12;
    t[r * 4 + 2] = s03 - s12;
    t[r * 4 + 3] = d03 - 2 * d12;
  }
  Block4x4 y{};
  for (int c = 0; c < 4; ++c) {
    const int s03 = t[c] + t[12 + c], d03 = t[c] - t[12 + c];
    const int s12 = t[4 + c] + t[8 + c], d12 = t[4 + c] - t[8 + c];
    y[c] = s03 + s12;
    y[4 + c] = 2 * d03 + d12;
    y[8 + c] = s03 - s12;
    y[12 + c] = d03 - 2 * d12;
  }
  return y;
}

Block4x4 inverse_transform(const Block4x4& w) {
  Block4x4 t{};
  for (int r = 0; r < 4; ++r) {
    const int e = w[r * 4 + 0] + w[r * 4 + 2];
    const int f = w[r * 4 + 0] - w[r * 4 + 2];
    const int g = (w[r * 4 + 1] >> 1) - w[r * 4 + 3];
    const int h = w[r * 4 + 1] + (w[r * 4 + 3] >> 1);
    t[r * 4 + 0] = e + h;
    t[r * 4 + 1] = f + g;
    t[r * 4 + 2] = f - g;
    t[r * 4 + 3] = e - h;
  }
  Block4x4 x{};
  for (int c = 0; c < 4; ++c) {
    const int e = t[c] + t[8 + c];
    const int f = t[c] - t[8 + c];
    const int g = (t[4 + c] >> 1) - t[12 + c];
    const int h = t[4 + c] + (t[12 + c] >> 1);
    x[c] = (e + h + 32) >> 6;
    x[4 + c] = (f + g + 32) >> 6;
    x[8 + c] = (f - g + 32) >> 6;
    x[12 + c] = (e - h + 32) >> 6;
  }
  return x;
}

Block4x4 quantize(const Block4x4& coeffs, int qp, bool intra) {
  const int qbits = 15 + qp / 6;
  const std::int64_t offset = (std::int64_t{1} << qbits) / (intra ? 3 : 6);
  Block4x4 levels{};
  for (int i = 0; i < 16; ++i) {
    const std::int64_t mag = (static_cast<std::int64_t>(std::abs(coeffs[i])) * kQuantMf[qp % 6][position_class(i)] + offset) >> qbits;
    levels[i] = static_cast<std::int32_t>(coeffs[i] < 0 ? -mag : mag);
  }
  return levels;
}

Block4x4 dequantize(const Block4x4& levels, int qp) {
  Block4x4 w{};
  for (int i = 0; i < 16; ++i) {
    w[i] = static_cast<std::int32_t>(static_cast<std::int64_t>(levels[i]) * kDequantV[qp % 6][position_class(i)] * (1 << (qp / 6)));
  }
  return w;
}

Block4x4 reconstruct_residual(const Block4x4& levels, int qp) { return inverse_transform(dequantize(levels, qp)); }

bool code_residual(const Block4x4& residual, int qp, bool intra, Block4x4& levels, Block4x4& recon_residual) {
  levels = quantize(forward_transform(residual), qp, intra);
  bool any = false;
  for (int v : levels) any = any || v != 0;
  if (any) {
    recon_residual = reconstruct_residual(levels, qp);
  } else {
    recon_residual.fill(0);
  }
  return any;
}

}  // namespace item::codec
