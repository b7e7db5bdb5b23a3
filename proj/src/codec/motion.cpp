#include "item/codec/motion.hpp"

#include <algorithm>
#include <array>

#include "item/codec/bitstream.hpp"
#include "item/codec/transform.hpp"

namespace item::codec {
namespace {

bool better(const MotionResult& cand, const MotionResult& best) {
  if (cand.cost != best.cost) return cand.cost < best.cost;
  return cand.mv.l1() < best.mv.l1();
}

}  // namespace

MotionEstimator::MotionEstimator(const media::Frame& source, const RefPicture& ref, int search_range, double lambda_mv)
    : src_(source), ref_(ref), range_(search_range), lambda_(lambda_mv) {}

double MotionEstimator::rate_cost(MotionVector mv, MotionVector pred) const {
  return lambda_ * (se_bits(mv.dx - pred.dx) + se_bits(mv.dy - pred.dy));
}

int MotionEstimator::satd_at(int x, int y, int w, int h, MotionVector mv) const {
  const std::uint8_t* s = src_.y_plane().data() + static_cast<std::size_t>(y) * src_.width() + x;
  const int ss = src_.width();
  int sum = 0;
  if ((mv.dx & 3) == 0 && (mv.dy & 3) == 0) {
    const int rx = x + (mv.dx >> 2);
    const int ry = y + (mv.dy >> 2);
    const int pad = ref_.pad();
    if (rx >= -pad && ry >= -pad && rx + w <= ref_.width() + pad && ry + h <= ref_.height() + pad) {
      const std::uint8_t* r = ref_.full_pel(rx, ry);
      const int rs = ref_.full_stride();
      for (int by = 0; by < h; by += 4)
        for (int bx = 0; bx < w; bx += 4) sum += satd4x4(s + by * ss + bx, ss, r + by * rs + bx, rs);
      return sum;
    }
  }
  std::array<std::uint8_t, 256> pred{};
  ref_.predict_luma(x, y, w, h, mv, pred.data(), 16);
  for (int by = 0; by < h; by += 4)
    for (int bx = 0; bx < w; bx += 4) sum += satd4x4(s + by * ss + bx, ss, pred.data() + by * 16 + bx, 16);
  return sum;
}

MotionResult MotionEstimator::integer_search(int x, int y, int w, int h, MotionVector pred) const {
  const int x_lo = std::max(-range_, -x);
  const int x_hi = std::min(range_, src_.width() - w - x);
  const int y_lo = std::max(-range_, -y);
  const int y_hi = std::min(range_, src_.height() - h - y);
  MotionResult best{{0, 0}, cost_at(x, y, w, h, {0, 0}, pred)};
  for (int dy = y_lo; dy <= y_hi; ++dy) {
    for (int dx = x_lo; dx <= x_hi; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const MotionVector mv{4 * dx, 4 * dy};
      const MotionResult cand{mv, cost_at(x, y, w, h, mv, pred)};
      if (better(cand, best)) best = cand;
    }
  }
  return best;
}

MotionResult MotionEstimator::refine(int x, int y, int w, int h, MotionVector pred, const MotionResult& start,
                                     int step) const {
  MotionResult best = start;
  for (int oy = -1; oy <= 1; ++oy) {
    for (int ox = -1; ox <= 1; ++ox) {
      if (ox == 0 && oy == 0) continue;
      const MotionVector mv{start.mv.dx + ox * step, start.mv.dy + oy * step};
      const MotionResult cand{mv, cost_at(x, y, w, h, mv, pred)};
      if (better(cand, best)) best = cand;
    }
  }
  return best;
}

MotionResult MotionEstimator::search(int x, int y, int w, int h, MvPrecision precision, MotionVector pred) const {
  MotionResult r = integer_search(x, y, w, h, pred);
  r = refine(x, y, w, h, pred, r, 2);
  if (precision == MvPrecision::Quarter) r = refine(x, y, w, h, pred, r, 1);
  return r;
}

}  // namespace item::codec
