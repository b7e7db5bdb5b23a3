#pragma once

#include <complex>

#include "item/audio/avs.hpp"

namespace item::audio {

enum class Ear { Left = 0, Right = 1 };

/// Per-direction, per-bin complex ear response. Bin k of an n-point design
/// corresponds to k * sample_rate / n Hz.
class HrtfProvider {
 public:
  virtual ~HrtfProvider() = default;
  virtual std::complex<double> response(const Direction& d, double freq_hz, Ear ear) const = 0;
};

/// Rigid spherical head: Woodworth path delay per ear, first-order head-shadow
/// filter (pole at 2c/a, zero set by the incidence angle), plus a bulk delay
/// that keeps the designed filters causal.
class SphericalHeadHrtf : public HrtfProvider {
 public:
  struct Params {
    double head_radius_m = 0.0875;
    double speed_of_sound = 343.0;
    double bulk_delay_s = 0.002;
    double alpha_min = 0.1;
    double theta_min_deg = 150.0;
  };

  SphericalHeadHrtf() = default;
  explicit SphericalHeadHrtf(Params p) : p_(p) {}

  std::complex<double> response(const Direction& d, double freq_hz, Ear ear) const override;

  /// Angle between the source direction and the ear's outward axis, degrees.
  static double incidence_deg(const Direction& d, Ear ear);
  /// Arrival delay at the ear relative to the head centre, seconds.
  double path_delay_s(const Direction& d, Ear ear) const;
  const Params& params() const { return p_; }

 private:
  Params p_;
};

/// Wraps another provider with azimuth mirrored (phi -> 360 - phi).
class MirroredHrtf : public HrtfProvider {
 public:
  explicit MirroredHrtf(const HrtfProvider& inner) : inner_(inner) {}
  std::complex<double> response(const Direction& d, double freq_hz, Ear ear) const override;

 private:
  const HrtfProvider& inner_;
};

/// Ear response equal to the pressure channel: 1 everywhere.
class PressureHrtf : public HrtfProvider {
 public:
  std::complex<double> response(const Direction&, double, Ear) const override { return 1.0; }
};

}  // namespace item::audio
