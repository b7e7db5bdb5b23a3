#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace item::audio {

/// PCM16 WAV contents; samples are interleaved.
struct WavData {
  int sample_rate = 16000;
  int channels = 1;
  std::vector<std::int16_t> samples;

  std::size_t frames() const { return channels ? samples.size() / channels : 0; }
};

/// Throws FormatError for anything but uncompressed PCM16.
WavData read_wav(const std::string& path);
void write_wav(const std::string& path, const WavData& wav);

/// channels x frames, scaled to [-1, 1).
Eigen::MatrixXd to_matrix(const WavData& wav);
/// Rounds and saturates to PCM16.
WavData from_matrix(const Eigen::MatrixXd& m, int sample_rate);

}  // namespace item::audio
