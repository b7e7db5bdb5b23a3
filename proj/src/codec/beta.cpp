#include <algorithm>
#include <cmath>

#include "item/codec/beta_training.hpp"
#include "item/codec/config.hpp"
#include "item/common/error.hpp"

namespace item::codec {

double skip_threshold(int qp) {
  if (qp < 0 || qp > kMaxQp) throw InvalidArgument("skip_threshold: qp out of range");
  return 14.0 * std::exp(0.1384 * qp);
}

void CodecConfig::validate() const {
  if (qp < 0 || qp > kMaxQp) throw InvalidArgument("codec: qp must be in [0, 51]");
  if (search_range < 1 || search_range > 64) throw InvalidArgument("codec: search_range must be in [1, 64]");
  if (gop < 1) throw InvalidArgument("codec: gop must be >= 1");
  if (!(lambda_mode() > 0.0)) throw InvalidArgument("codec: lambda must be positive");
}

BetaTable BetaTable::unity() {
  BetaTable t;
  t.beta_.fill(1.0);
  return t;
}

BetaTable BetaTable::from_points(const std::map<int, double>& points) {
  if (points.empty()) throw InvalidArgument("beta table: no trained points");
  BetaTable t;
  double running = 0.0;
  auto it = points.begin();
  double current = std::clamp(it->second, 0.01, 1.0);
  for (int qp = 0; qp <= kMaxQp; ++qp) {
    auto found = points.find(qp);
    if (found != points.end()) current = std::clamp(found->second, 0.01, 1.0);
    running = std::max(running, current);
    t.beta_[qp] = running;
  }
  return t;
}

double BetaTable::at(int qp) const {
  if (qp < 0 || qp > kMaxQp) throw InvalidArgument("beta table: qp out of range");
  return beta_[qp];
}

BetaTable BetaTable::trained_default() {
  // Output of `item train-beta` on the default corpus (see README).
  static const BetaTable table = from_points({{24, 1.0}, {28, 1.0}, {32, 1.0}, {36, 1.0}});
  return table;
}

BetaTable train_beta(const std::vector<BetaSample>& samples, const std::vector<int>& qps) {
  if (samples.empty()) throw InvalidArgument("train_beta: empty corpus");
  std::map<int, double> points;
  for (int qp : qps) {
    double best = 0.01;
    for (int step = 100; step >= 1; --step) {
      const double beta = step / 100.0;
      std::size_t selected = 0;
      std::size_t p8x8 = 0;
      for (const auto& s : samples) {
        if (s.qp != qp) continue;
        if (s.j_16x16 < beta * s.j_8x8) {
          ++selected;
          if (s.best_is_p8x8) ++p8x8;
        }
      }
      // an empty selection trivially satisfies the target
      if (selected == 0 || static_cast<double>(p8x8) <= kBetaMissRate * static_cast<double>(selected)) {
        best = beta;
        break;
      }
    }
    points[qp] = best;
  }
  return BetaTable::from_points(points);
}

}  // namespace item::codec
