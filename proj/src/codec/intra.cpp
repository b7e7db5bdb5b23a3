#include "item/codec/intra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace item::codec {
namespace {

inline std::uint8_t clip8(int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); }

}  // namespace

std::array<std::uint8_t, 16> predict_intra4(const Intra4Neighbors& n, int mode) {
  std::array<std::uint8_t, 16> p{};
  const auto& T = n.top;
  const auto& L = n.left;
  const int Q = n.top_left;
  auto set = [&](int x, int y, int v) { p[y * 4 + x] = clip8(v); };
  switch (mode) {
    case kI4Vertical:
      for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) set(x, y, T[x]);
      break;
    case kI4Horizontal:
      for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) set(x, y, L[y]);
      break;
    case kI4DC: {
      int dc = 128;
      if (n.has_top && n.has_left) {
        dc = (T[0] + T[1] + T[2] + T[3] + L[0] + L[1] + L[2] + L[3] + 4) >> 3;
      } else if (n.has_top) {
        dc = (T[0] + T[1] + T[2] + T[3] + 2) >> 2;
      } else if (n.has_left) {
        dc = (L[0] + L[1] + L[2] + L[3] + 2) >> 2;
      }
      p.fill(static_cast<std::uint8_t>(dc));
      break;
    }
    case kI4DiagDownLeft:
      for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
          if (x == 3 && y == 3) {
            set(x, y, (T[6] + 3 * T[7] + 2) >> 2);
          } else {
            set(x, y, (T[x + y] + 2 * T[x + y + 1] + T[x + y + 2] + 2) >> 2);
          }
        }
      }
      break;
    case kI4DiagDownRight:
      for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
          if (x > y) {
            const int i = x - y;
            set(x, y, ((i >= 2 ? T[i - 2] : Q) + 2 * T[i - 1] + T[i] + 2) >> 2);
          } else if (x < y) {
            const int i = y - x;
            set(x, y, ((i >= 2 ? L[i - 2] : Q) + 2 * L[i - 1] + L[i] + 2) >> 2);
          } else {
            set(x, y, (T[0] + 2 * Q + L[0] + 2) >> 2);
          }
        }
      }
      break;
    case kI4VerticalRight:
      for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
          const int z = 2 * x - y;
          int v;
          if (z >= 0 && z % 2 == 0) {
            const int i = x - (y >> 1);
            v = ((i >= 1 ? T[i - 1] : Q) + T[i] + 1) >> 1;
          } else if (z >= 0) {
            const int i = x - (y >> 1);
            v = ((i >= 2 ? T[i - 2] : Q) + 2 * (i >= 1 ? T[i - 1] : Q) + T[i] + 2) >> 2;
          } else if (z == -1) {
            v = (L[0] + 2 * Q + T[0] + 2) >> 2;
          } else {
            const int i = y - 1;
            v = (L[i] + 2 * L[i - 1] + (i >= 2 ? L[i - 2] : Q) + 2) >> 2;
          }
          set(x, y, v);
        }
      }
      break;
    case kI4HorizontalDown:
      for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
          const int z = 2 * y - x;
          int v;
          if (z >= 0 && z % 2 == 0) {
            const int i = y - (x >> 1);
            v = ((i >= 1 ? L[i - 1] : Q) + L[i] + 1) >> 1;
          } else if (z >= 0) {
            const int i = y - (x >> 1);
            v = ((i >= 2 ? L[i - 2] : Q) + 2 * (i >= 1 ? L[i - 1] : Q) + L[i] + 2) >> 2;
          } else if (z == -1) {
            v = (L[0] + 2 * Q + T[0] + 2) >> 2;
          } else {
            const int i = x - 1;
            v = (T[i] + 2 * T[i - 1] + (i >= 2 ? T[i - 2] : Q) + 2) >> 2;
          }
          set(x, y, v);
        }
      }
      break;
    case kI4VerticalLeft:
      for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
          const int i = x + (y >> 1);
          if (y % 2 == 0) {
            set(x, y, (T[i] + T[i + 1] + 1) >> 1);
          } else {
            set(x, y, (T[i] + 2 * T[i + 1] + T[i + 2] + 2) >> 2);
          }
        }
      }
      break;
    case kI4HorizontalUp:
      for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
          const int z = x + 2 * y;
          int v;
          if (z > 5) {
            v = L[3];
          } else if (z == 5) {
            v = (L[2] + 3 * L[3] + 2) >> 2;
          } else if (z % 2 == 0) {
            const int i = y + (x >> 1);
            v = (L[i] + L[i + 1] + 1) >> 1;
          } else {
            const int i = y + (x >> 1);
            v = (L[i] + 2 * L[i + 1] + L[i + 2] + 2) >> 2;
          }
          set(x, y, v);
        }
      }
      break;
    default:
      p.fill(128);
      break;
  }
  return p;
}

std::array<std::uint8_t, 256> predict_intra16(const Intra16Neighbors& n, int mode) {
  std::array<std::uint8_t, 256> p{};
  switch (mode) {
    case kI16Vertical:
      for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) p[y * 16 + x] = static_cast<std::uint8_t>(n.top[x]);
      break;
    case kI16Horizontal:
      for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) p[y * 16 + x] = static_cast<std::uint8_t>(n.left[y]);
      break;
    case kI16Plane: {
      int hs = 0, vs = 0;
      for (int i = 0; i < 8; ++i) {
        hs += (i + 1) * (n.top[8 + i] - (i == 7 ? n.top_left : n.top[6 - i]));
        vs += (i + 1) * (n.left[8 + i] - (i == 7 ? n.top_left : n.left[6 - i]));
      }
      const int a = 16 * (n.left[15] + n.top[15]);
      const int b = (5 * hs + 32) >> 6;
      const int c = (5 * vs + 32) >> 6;
      for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) p[y * 16 + x] = clip8((a + b * (x - 7) + c * (y - 7) + 16) >> 5);
      break;
    }
    case kI16DC:
    default: {
      int dc = 128;
      int st = 0, sl = 0;
      for (int i = 0; i < 16; ++i) {
        st += n.top[i];
        sl += n.left[i];
      }
      if (n.has_top && n.has_left) {
        dc = (st + sl + 16) >> 5;
      } else if (n.has_top) {
        dc = (st + 8) >> 4;
      } else if (n.has_left) {
        dc = (sl + 8) >> 4;
      }
      p.fill(static_cast<std::uint8_t>(dc));
      break;
    }
  }
  return p;
}

std::array<std::uint8_t, 64> predict_chroma_dc(const Intra16Neighbors& n) {
  int dc = 128;
  int st = 0, sl = 0;
  for (int i = 0; i < 8; ++i) {
    st += n.top[i];
    sl += n.left[i];
  }
  if (n.has_top && n.has_left) {
    dc = (st + sl + 8) >> 4;
  } else if (n.has_top) {
    dc = (st + 4) >> 3;
  } else if (n.has_left) {
    dc = (sl + 4) >> 3;
  }
  std::array<std::uint8_t, 64> p{};
  p.fill(static_cast<std::uint8_t>(dc));
  return p;
}

std::optional<double> intra4_mode_angle(int mode) {
  switch (mode) {
    case kI4Vertical: return 90.0;
    case kI4Horizontal: return 0.0;
    case kI4DiagDownLeft: return 135.0;
    case kI4DiagDownRight: return 45.0;
    case kI4VerticalRight: return 67.5;
    case kI4HorizontalDown: return 22.5;
    case kI4VerticalLeft: return 112.5;
    case kI4HorizontalUp: return 157.5;
    default: return std::nullopt;
  }
}

std::optional<double> dominant_edge_angle(const Block4x4& F) {
  const double row = static_cast<double>(F[1]) + F[2] + F[3];        // F[0][1..3]
  const double col = static_cast<double>(F[4]) + F[8] + F[12];       // F[1..3][0]
  if (col == 0.0) {
    if (row == 0.0) return std::nullopt;
    return 90.0;
  }
  double deg = std::atan(row / col) * 180.0 / std::numbers::pi;
  if (deg < 0.0) deg += 180.0;
  if (deg >= 180.0) deg -= 180.0;
  return deg;
}

std::array<int, 3> select_intra4_modes(std::optional<double> angle, int most_probable_mode) {
  if (!angle) {
    std::array<int, 3> out{kI4DC, -1, -1};
    int k = 1;
    if (most_probable_mode != kI4DC && most_probable_mode >= 0 && most_probable_mode < 9) out[k++] = most_probable_mode;
    for (int m = 0; k < 3 && m < 9; ++m) {
      if (m != kI4DC && m != out[1]) out[k++] = m;
    }
    return out;
  }
  std::vector<std::pair<double, int>> ranked;
  for (int m = 0; m < 9; ++m) {
    const auto a = intra4_mode_angle(m);
    if (!a) continue;
    double d = std::fmod(std::abs(*a - *angle), 180.0);
    d = std::min(d, 180.0 - d);
    ranked.emplace_back(d, m);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  });
  return {kI4DC, ranked[0].second, ranked[1].second};
}

}  // namespace item::codec
