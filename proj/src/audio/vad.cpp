#include "item/audio/vad.hpp"

#include <algorithm>
#include <cmath>

#include "item/common/error.hpp"

namespace item::audio {

namespace {
constexpr double kMinFloor = 1e-12;
}

double channel_o_energy(const Eigen::MatrixXd& frame) {
  if (frame.rows() < 1 || frame.cols() < 1) return 0.0;
  return frame.row(0).squaredNorm() / static_cast<double>(frame.cols());
}

bool detect_target(const Eigen::MatrixXd& frame, double noise_floor, double threshold_db) {
  return channel_o_energy(frame) > std::max(noise_floor, kMinFloor) * std::pow(10.0, threshold_db / 10.0);
}

EnergyVad::EnergyVad(double threshold_db, double floor_smoothing, double initial_floor)
    : threshold_db_(threshold_db), smoothing_(floor_smoothing), floor_(std::max(initial_floor, kMinFloor)) {
  if (!(floor_smoothing >= 0.0 && floor_smoothing < 1.0)) throw InvalidArgument("vad: smoothing outside [0, 1)");
}

void EnergyVad::calibrate(const Eigen::MatrixXd& silent_frame) {
  floor_ = std::max(channel_o_energy(silent_frame), kMinFloor);
}

bool EnergyVad::detect(const Eigen::MatrixXd& frame) {
  const bool hit = detect_target(frame, floor_, threshold_db_);
  if (!hit) floor_ = std::max(smoothing_ * floor_ + (1.0 - smoothing_) * channel_o_energy(frame), kMinFloor);
  return hit;
}

}  // namespace item::audio
