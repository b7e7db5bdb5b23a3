#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "item/audio/avs.hpp"

namespace item::audio {

inline constexpr int kFrameSamples = 15360;
inline constexpr int kBlockSamples = 512;
inline constexpr int kBlocksPerFrame = 30;
inline constexpr int kDefaultSampleRate = 16000;

/// One analysis frame: 4 rows (O, X, Y, Z) by 15360 samples.
struct ArrayFrame {
  Eigen::MatrixXd samples;
  int sample_rate = kDefaultSampleRate;

  /// Throws InvalidArgument unless the frame is 4 x 15360.
  void validate() const;
};

struct Source {
  Direction direction;
  std::vector<double> signal;
};

struct CaptureParams {
  /// Infinity disables the noise.
  double snr_db = std::numeric_limits<double>::infinity();
  double rt60_ms = 0.0;
  std::uint64_t seed = 1;
  int sample_rate = kDefaultSampleRate;
  /// Room model behind the reverberation level: the direct-to-reverberant
  /// ratio follows the critical distance 0.057 * sqrt(V / RT60).
  double room_volume_m3 = 60.0;
  double source_distance_m = 1.0;
};

/// Projects every source through its steering vector, adds a reverberant
/// tail (exponentially decaying noise reflections from random directions)
/// and white noise on every channel. The SNR is referenced to the summed
/// source power on the pressure channel O, and every channel receives that
/// same noise power. Output is 4 x (signal length).
Eigen::MatrixXd synth_array_capture(const std::vector<Source>& sources, const CaptureParams& params);

/// Speech-like test signal: band-limited noise (100 Hz - 4 kHz) with a
/// syllabic 4 Hz envelope, unit mean power.
std::vector<double> speech_like(int samples, std::uint64_t seed, int sample_rate = kDefaultSampleRate);

/// Reverberation impulse-response length in samples for a given RT60.
int reverb_length(double rt60_ms, int sample_rate);

}  // namespace item::audio
