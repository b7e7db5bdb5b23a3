#pragma once

#include <Eigen/Dense>

namespace item::audio {

/// Energy detector on the pressure channel with a running noise floor.
class EnergyVad {
 public:
  /// `threshold_db`: required excess of frame energy over the floor.
  /// `floor_smoothing`: weight of the old floor when it is updated on
  /// non-target frames.
  explicit EnergyVad(double threshold_db = 10.0, double floor_smoothing = 0.9, double initial_floor = 1e-8);

  /// Sets the floor to the mean-square energy of a silent frame.
  void calibrate(const Eigen::MatrixXd& silent_frame);
  /// True iff the channel-O mean-square energy exceeds the floor by more than
  /// the threshold. The floor tracks frames that are not targets.
  bool detect(const Eigen::MatrixXd& frame);

  double noise_floor() const { return floor_; }
  double threshold_db() const { return threshold_db_; }

 private:
  double threshold_db_;
  double smoothing_;
  double floor_;
};

/// Stateless test against a fixed floor.
bool detect_target(const Eigen::MatrixXd& frame, double noise_floor, double threshold_db);

/// Mean-square energy of channel O.
double channel_o_energy(const Eigen::MatrixXd& frame);

}  // namespace item::audio
