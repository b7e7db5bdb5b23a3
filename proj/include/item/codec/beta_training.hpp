#pragma once

#include <vector>

#include "item/codec/config.hpp"

namespace item::codec {

/// Largest tolerated fraction of P8x8-best macroblocks among those the
/// early-termination test would strip of P8x8.
inline constexpr double kBetaMissRate = 0.15;

/// One P-frame macroblock seen by the exhaustive decision.
struct BetaSample {
  int qp = 0;
  double j_16x16 = 0.0;  // half-pel motion cost
  double j_8x8 = 0.0;    // sum of the four half-pel 8x8 motion costs
  bool best_is_p8x8 = false;
};

/// Per qp, the largest beta on a 0.01 grid such that at most 15% of the
/// macroblocks with J(16x16) < beta * J(8x8) have P8x8 as their exhaustive
/// best mode; then clamped and made monotone (BetaTable::from_points).
/// Throws InvalidArgument for an empty sample set.
BetaTable train_beta(const std::vector<BetaSample>& samples, const std::vector<int>& qps);

}  // namespace item::codec
