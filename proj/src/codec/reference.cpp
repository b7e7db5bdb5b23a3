#include "item/codec/reference.hpp"

#include <algorithm>

namespace item::codec {
namespace {

inline std::uint8_t clip8(int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); }

inline int tap6(int a, int b, int c, int d, int e, int f) { return a - 5 * b + 20 * c + 20 * d - 5 * e + f; }

}  // namespace

RefPicture::RefPicture(const media::Frame& recon, int pad)
    : width_(recon.width()), height_(recon.height()), pad_(pad) {
  full_stride_ = width_ + 2 * pad_;
  const int rows = height_ + 2 * pad_;
  full_.resize(static_cast<std::size_t>(full_stride_) * rows);
  for (int y = 0; y < rows; ++y) {
    const int sy = std::clamp(y - pad_, 0, height_ - 1);
    for (int x = 0; x < full_stride_; ++x) {
      const int sx = std::clamp(x - pad_, 0, width_ - 1);
      full_[static_cast<std::size_t>(y) * full_stride_ + x] = recon.y(sx, sy);
    }
  }
  auto F = [&](int x, int y) -> int {
    x = std::clamp(x, 0, full_stride_ - 1);
    y = std::clamp(y, 0, rows - 1);
    return full_[static_cast<std::size_t>(y) * full_stride_ + x];
  };

  // half-pel planes over the padded grid: h at (x+1/2, y), v at (x, y+1/2),
  // c at (x+1/2, y+1/2); hraw keeps the unrounded horizontal sums for c
  const std::size_t n = static_cast<std::size_t>(full_stride_) * rows;
  std::vector<int> hraw(n);
  std::vector<std::uint8_t> hh(n), vv(n), cc(n);
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < full_stride_; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * full_stride_ + x;
      hraw[i] = tap6(F(x - 2, y), F(x - 1, y), F(x, y), F(x + 1, y), F(x + 2, y), F(x + 3, y));
      hh[i] = clip8((hraw[i] + 16) >> 5);
      vv[i] = clip8((tap6(F(x, y - 2), F(x, y - 1), F(x, y), F(x, y + 1), F(x, y + 2), F(x, y + 3)) + 16) >> 5);
    }
  }
  auto H = [&](int x, int y) -> int {
    return hraw[static_cast<std::size_t>(std::clamp(y, 0, rows - 1)) * full_stride_ + x];
  };
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < full_stride_; ++x) {
      const int j1 = tap6(H(x, y - 2), H(x, y - 1), H(x, y), H(x, y + 1), H(x, y + 2), H(x, y + 3));
      cc[static_cast<std::size_t>(y) * full_stride_ + x] = clip8((j1 + 512) >> 10);
    }
  }
  auto at = [&](const std::vector<std::uint8_t>& p, int x, int y) -> int {
    x = std::clamp(x, 0, full_stride_ - 1);
    y = std::clamp(y, 0, rows - 1);
    return p[static_cast<std::size_t>(y) * full_stride_ + x];
  };

  q_stride_ = full_stride_ * 4;
  q_rows_ = rows * 4;
  quarter_.resize(static_cast<std::size_t>(q_stride_) * q_rows_);
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < full_stride_; ++x) {
      const int G = at(full_, x, y);
      const int b = at(hh, x, y);       // (x+1/2, y)
      const int h = at(vv, x, y);       // (x, y+1/2)
      const int j = at(cc, x, y);       // (x+1/2, y+1/2)
      const int m = at(vv, x + 1, y);   // (x+1, y+1/2)
      const int s = at(hh, x, y + 1);   // (x+1/2, y+1)
      const int Hr = at(full_, x + 1, y);
      const int M = at(full_, x, y + 1);
      const int grid[4][4] = {
          {G, (G + b + 1) >> 1, b, (Hr + b + 1) >> 1},
          {(G + h + 1) >> 1, (b + h + 1) >> 1, (b + j + 1) >> 1, (b + m + 1) >> 1},
          {h, (h + j + 1) >> 1, j, (j + m + 1) >> 1},
          {(M + h + 1) >> 1, (h + s + 1) >> 1, (j + s + 1) >> 1, (m + s + 1) >> 1},
      };
      for (int yf = 0; yf < 4; ++yf) {
        for (int xf = 0; xf < 4; ++xf) {
          quarter_[static_cast<std::size_t>(4 * y + yf) * q_stride_ + 4 * x + xf] = static_cast<std::uint8_t>(grid[yf][xf]);
        }
      }
    }
  }

  chroma_width_ = recon.chroma_width();
  chroma_height_ = recon.chroma_height();
  cb_ = recon.cb_plane();
  cr_ = recon.cr_plane();
}

std::uint8_t RefPicture::luma_q(int qx, int qy) const {
  const int px = std::clamp(qx + 4 * pad_, 0, q_stride_ - 1);
  const int py = std::clamp(qy + 4 * pad_, 0, q_rows_ - 1);
  return quarter_[static_cast<std::size_t>(py) * q_stride_ + px];
}

void RefPicture::predict_luma(int x, int y, int w, int h, MotionVector mv, std::uint8_t* out, int out_stride) const {
  const int qx0 = 4 * x + mv.dx + 4 * pad_;
  const int qy0 = 4 * y + mv.dy + 4 * pad_;
  const bool inside = qx0 >= 0 && qy0 >= 0 && qx0 + 4 * (w - 1) < q_stride_ && qy0 + 4 * (h - 1) < q_rows_;
  if (inside) {
    for (int r = 0; r < h; ++r) {
      const std::uint8_t* src = quarter_.data() + static_cast<std::size_t>(qy0 + 4 * r) * q_stride_ + qx0;
      for (int c = 0; c < w; ++c) out[r * out_stride + c] = src[4 * c];
    }
    return;
  }
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) out[r * out_stride + c] = luma_q(4 * (x + c) + mv.dx, 4 * (y + r) + mv.dy);
  }
}

void RefPicture::predict_chroma(int cx, int cy, int w, int h, MotionVector mv, std::uint8_t* cb, std::uint8_t* cr,
                                int out_stride) const {
  // luma quarter-pel == chroma eighth-pel
  const int fx = mv.dx & 7;
  const int fy = mv.dy & 7;
  const int ix = mv.dx >> 3;
  const int iy = mv.dy >> 3;
  auto sample = [&](const std::vector<std::uint8_t>& p, int x, int y) -> int {
    x = std::clamp(x, 0, chroma_width_ - 1);
    y = std::clamp(y, 0, chroma_height_ - 1);
    return p[static_cast<std::size_t>(y) * chroma_width_ + x];
  };
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const int x = cx + c + ix;
      const int y = cy + r + iy;
      for (int plane = 0; plane < 2; ++plane) {
        const auto& p = plane == 0 ? cb_ : cr_;
        const int A = sample(p, x, y), B = sample(p, x + 1, y), C = sample(p, x, y + 1), D = sample(p, x + 1, y + 1);
        const int v = ((8 - fx) * (8 - fy) * A + fx * (8 - fy) * B + (8 - fx) * fy * C + fx * fy * D + 32) >> 6;
        (plane == 0 ? cb : cr)[r * out_stride + c] = static_cast<std::uint8_t>(v);
      }
    }
  }
}

}  // namespace item::codec
