#pragma once

#include "item/codec/macroblock.hpp"
#include "item/codec/reference.hpp"
#include "item/codec/types.hpp"
#include "item/media/frame.hpp"

namespace item::codec {

enum class MvPrecision { Half, Quarter };

struct MotionResult {
  MotionVector mv;
  double cost = 0.0;  // SATD + lambda_mv * R_mv
};

/// Block-matching motion estimation for one source frame against one
/// reference. Costs are J = SATD + lambda_mv * R, with R the signed
/// Exp-Golomb length of the difference from the predictor.
class MotionEstimator {
 public:
  MotionEstimator(const media::Frame& source, const RefPicture& ref, int search_range, double lambda_mv);

  double rate_cost(MotionVector mv, MotionVector pred) const;
  /// SATD of the w x h source block at (x, y) against the reference at `mv`.
  int satd_at(int x, int y, int w, int h, MotionVector mv) const;
  double cost_at(int x, int y, int w, int h, MotionVector mv, MotionVector pred) const {
    return satd_at(x, y, w, h, mv) + rate_cost(mv, pred);
  }

  /// Full integer search over +/- search_range, clipped so the block stays in
  /// the frame. Ties go to the smaller |mv|, then raster order.
  MotionResult integer_search(int x, int y, int w, int h, MotionVector pred) const;
  /// One refinement ring around `start`: step 2 is half-pel, step 1 quarter-pel.
  /// The centre is a candidate, so the cost never increases.
  MotionResult refine(int x, int y, int w, int h, MotionVector pred, const MotionResult& start, int step) const;
  /// Integer, then half-pel, then (for Quarter) quarter-pel refinement.
  MotionResult search(int x, int y, int w, int h, MvPrecision precision, MotionVector pred) const;

  int search_range() const { return range_; }

 private:
  const media::Frame& src_;
  const RefPicture& ref_;
  int range_;
  double lambda_;
};

}  // namespace item::codec
