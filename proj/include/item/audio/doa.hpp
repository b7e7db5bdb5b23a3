#pragma once

#include <vector>

#include "item/audio/avs.hpp"
#include "item/audio/covariance.hpp"

namespace item::audio {

/// Inclusive one-sided bin range summed into the spatial spectrum.
struct Band {
  int lo = 10;
  int hi = kOneSidedBins - 1;
};

/// Bins from `low_hz` up to Nyquist for 512-point blocks at `sample_rate`.
Band band_from_hz(double low_hz, int sample_rate = kDefaultSampleRate);

struct DoaResult {
  Direction direction;
  double peak = 0.0;
  std::size_t index = 0;
  /// Combined spectrum per field direction.
  std::vector<double> spectrum;
};

/// Sum over the band of 1 / (a^H R^-1 a) for every field direction.
std::vector<double> capon_spectrum(const CovarianceStack& cov, const SteeringField& field, Band band);

/// Arg-max of the combined Capon spectrum; ties go to the smaller
/// inclination, then the smaller azimuth. Throws InvalidArgument for an
/// empty or out-of-range band.
DoaResult doa_estimate(const ArrayFrame& frame, const SteeringField& field, Band band = {});
DoaResult doa_from_covariance(const CovarianceStack& cov, const SteeringField& field, Band band = {});

}  // namespace item::audio
