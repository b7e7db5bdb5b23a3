#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "item/codec/beta_training.hpp"
#include "item/codec/config.hpp"
#include "item/codec/types.hpp"
#include "item/media/frame.hpp"

namespace item::codec {

enum class DecisionPath { Fast, Full };

struct FrameStats {
  int frame = 0;
  bool intra = false;
  std::size_t bits = 0;
  double psnr_y = 0.0;
  /// Wall time spent in mode decision; 0 unless timing was requested.
  std::int64_t md_time_us = 0;
  std::uint64_t satd_calls = 0;
  /// Summed RD cost of the chosen modes.
  double j_rd = 0.0;
  std::array<int, kMbTypeCount> modes{};
};

struct EncodeOptions {
  DecisionPath path = DecisionPath::Fast;
  /// Measure mode-decision wall time (makes stats non-reproducible).
  bool timing = false;
  /// When set, every P-frame macroblock contributes one sample (full path only).
  std::vector<BetaSample>* beta_samples = nullptr;
};

struct EncodeResult {
  std::vector<std::uint8_t> bitstream;
  media::VideoSequence recon;
  std::vector<FrameStats> stats;

  std::size_t total_bits() const;
  double mean_psnr_y() const;
  std::uint64_t total_satd_calls() const;
  /// Bits per second at the sequence frame rate.
  double bitrate(double frame_rate) const;
};

/// Encodes every frame: an I-frame every `gop` frames, P-frames otherwise,
/// each predicted from the previous reconstruction.
EncodeResult encode_sequence(const media::VideoSequence& seq, const CodecConfig& config, const EncodeOptions& options = {});

/// Stats as CSV: frame,type,bits,psnr_y,md_time_us,satd_calls,<one column per mode>.
void write_stats_csv(std::ostream& out, const std::vector<FrameStats>& stats);

struct StreamHeader {
  int width = 0;
  int height = 0;
  int qp = 0;
  int gop = 1;
  std::uint32_t fps_num = 30;
  std::uint32_t fps_den = 1;
  std::uint32_t frame_count = 0;
};

struct DecodeOptions {
  /// Reject the stream on a header or frame CRC mismatch.
  bool verify_checksums = true;
};

struct DecodeResult {
  StreamHeader header;
  media::VideoSequence video;
};

/// Inverse of encode_sequence. Throws CorruptStream on truncation, bad
/// magic, checksum mismatch or any illegal syntax element.
DecodeResult decode_sequence(const std::vector<std::uint8_t>& bitstream, const DecodeOptions& options = {});

}  // namespace item::codec
