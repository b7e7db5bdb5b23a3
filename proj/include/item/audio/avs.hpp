#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace item::audio {

/// Inclination theta in [0, 180] from +z, azimuth phi in [0, 360) from +x
/// towards +y. +x faces forward, +y is the listener's left, +z is up.
struct Direction {
  double theta = 0.0;
  double phi = 0.0;

  friend bool operator==(const Direction&, const Direction&) = default;
};

/// Throws InvalidArgument outside the documented ranges.
void validate(const Direction& d);

/// Great-circle angle between two directions, degrees.
double angular_distance(const Direction& a, const Direction& b);

/// Collocated acoustic vector sensor response, channels (O, X, Y, Z):
/// [1, sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)].
Eigen::Vector4d steering_vector(const Direction& d);

/// Direction grid with one steering vector per direction, optionally one per
/// frequency bin (calibrated fields).
class SteeringField {
 public:
  /// Analytic field on the resolution grid: theta = 0, r, ..., 180 and
  /// phi = 0, r, ..., 360 - r. Resolution must divide 180.
  static SteeringField analytic(double resolution_deg = 5.0);
  /// Calibrated field: vectors[dir * bins + bin].
  static SteeringField calibrated(double resolution_deg, int bins, std::vector<Eigen::Vector4cd> vectors);

  double resolution() const { return resolution_; }
  const std::vector<Direction>& directions() const { return directions_; }
  std::size_t size() const { return directions_.size(); }
  /// 0 for a frequency-flat field.
  int bins() const { return bins_; }
  /// Frequency-flat with purely real vectors (enables the real fast path).
  bool real_flat() const { return real_flat_; }
  Eigen::Vector4cd vector(std::size_t dir, int bin) const;
  const std::vector<Eigen::Vector4cd>& raw() const { return vectors_; }

 private:
  double resolution_ = 5.0;
  int bins_ = 0;
  bool real_flat_ = true;
  std::vector<Direction> directions_;
  std::vector<Eigen::Vector4cd> vectors_;
};

/// Grid of the given resolution in enumeration order (theta outer, phi inner).
std::vector<Direction> direction_grid(double resolution_deg);

}  // namespace item::audio
