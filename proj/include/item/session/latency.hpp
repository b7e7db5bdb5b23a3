#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace item::session {

struct StageRange {
  std::string name;
  double min_ms = 0.0;
  double max_ms = 0.0;
};

struct LatencyModel {
  std::vector<StageRange> stages;

  /// Object cutout, codec, network, render.
  static LatencyModel conferencing_default();
  /// Throws InvalidArgument when a stage has min > max or the model is empty.
  void validate() const;
};

struct LatencyBounds {
  double min_ms = 0.0;
  double max_ms = 0.0;
};

/// (sum of minima, sum of maxima).
LatencyBounds analytic_bounds(const LatencyModel& m);

struct LatencyStats {
  LatencyBounds bounds;
  double min_ms = 0.0;
  double max_ms = 0.0;
  double mean_ms = 0.0;
  std::size_t trials = 0;
  std::size_t out_of_bounds = 0;
  std::vector<double> samples;
};

/// Each trial samples every stage uniformly in its range and sums them.
LatencyStats simulate_latency(const LatencyModel& m, std::size_t trials, std::uint64_t seed, bool keep_samples = false);

}  // namespace item::session
