#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "item/audio/avs.hpp"

namespace item::experiments {

struct AudioEvalConfig {
  std::vector<double> snr_db{10, 20, 30};
  std::vector<double> rt60_ms{0, 100, 200, 300};
  int directions = 6;
  int realizations = 20;
  double resolution_deg = 5.0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct AngleStats {
  audio::Direction truth;
  double mean_theta = 0.0;
  double mean_phi = 0.0;  // circular mean
  /// Standard deviation of the angular error from the truth, degrees.
  double std_error = 0.0;
  double mean_error = 0.0;
  double max_error = 0.0;
};

struct ConditionRow {
  double snr_db = 0.0;
  double rt60_ms = 0.0;
  std::vector<AngleStats> angles;
  double mean_error = 0.0;
  double max_std = 0.0;
};

/// The test directions are random on-grid directions shared by all
/// conditions; each realization draws a fresh signal, noise and reverb.
std::vector<audio::Direction> test_directions(int count, double resolution_deg, std::uint64_t seed);
std::vector<ConditionRow> run_audio_eval(const AudioEvalConfig& config);

/// One row per condition: snr_db,rt60_ms,mean_error,max_std, then per angle
/// theta,phi,mean_theta,mean_phi,std.
void write_audio_csv(std::ostream& out, const std::vector<ConditionRow>& rows);

}  // namespace item::experiments
