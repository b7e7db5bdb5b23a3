#pragma once

#include <array>
#include <cmath>
#include <map>

#include "item/chromakey/chroma_key.hpp"

namespace item::codec {

inline constexpr int kMaxQp = 51;

/// Per-qp scaling factor of the P8x8 early-termination test
/// J(16x16) < beta(qp) * J(8x8). Values lie in (0, 1] and never decrease
/// with qp.
class BetaTable {
 public:
  /// Table trained on the default synthetic corpus (see train_beta).
  static BetaTable trained_default();
  /// beta = 1 everywhere: the plain J(16x16) < J(8x8) rule.
  static BetaTable unity();
  /// Builds a full 0..51 table from trained (qp, beta) points: a qp between
  /// trained points takes the value of the nearest trained qp below it, qps
  /// below the first point take the first value. Values are clamped to
  /// (0, 1] and made monotone with a running maximum.
  static BetaTable from_points(const std::map<int, double>& points);

  double at(int qp) const;
  const std::array<double, kMaxQp + 1>& values() const { return beta_; }

  friend bool operator==(const BetaTable&, const BetaTable&) = default;

 private:
  std::array<double, kMaxQp + 1> beta_{};
};

struct CodecConfig {
  int qp = 28;
  /// Integer full-search range in pixels (+/-).
  int search_range = 16;
  /// I-frame interval in frames.
  int gop = 30;
  BetaTable beta = BetaTable::trained_default();
  double skip_scale = 14.0;
  double skip_exponent = 0.1384;
  chromakey::KeyColor key{};

  double lambda_mode() const { return 0.85 * std::pow(2.0, (qp - 12) / 3.0); }
  double lambda_mv() const { return std::sqrt(lambda_mode()); }

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

/// Early-skip threshold 14 * exp(0.1384 * qp). Throws InvalidArgument for qp
/// outside [0, 51].
double skip_threshold(int qp);

}  // namespace item::codec
