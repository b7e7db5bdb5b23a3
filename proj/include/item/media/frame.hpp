#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace item::media {

/// Planar 8-bit YCbCr 4:2:0 picture. Luma dimensions are multiples of 16.
class Frame {
 public:
  Frame() = default;
  /// Allocates a frame filled with (y, cb, cr). Throws InvalidArgument when
  /// either dimension is not a positive multiple of 16.
  Frame(int width, int height, std::uint8_t y = 0, std::uint8_t cb = 128, std::uint8_t cr = 128);

  int width() const { return width_; }
  int height() const { return height_; }
  int chroma_width() const { return width_ / 2; }
  int chroma_height() const { return height_ / 2; }

  std::uint8_t& y(int x, int row) { return y_[static_cast<std::size_t>(row) * width_ + x]; }
  std::uint8_t y(int x, int row) const { return y_[static_cast<std::size_t>(row) * width_ + x]; }
  std::uint8_t& cb(int x, int row) { return cb_[static_cast<std::size_t>(row) * chroma_width() + x]; }
  std::uint8_t cb(int x, int row) const { return cb_[static_cast<std::size_t>(row) * chroma_width() + x]; }
  std::uint8_t& cr(int x, int row) { return cr_[static_cast<std::size_t>(row) * chroma_width() + x]; }
  std::uint8_t cr(int x, int row) const { return cr_[static_cast<std::size_t>(row) * chroma_width() + x]; }

  std::vector<std::uint8_t>& y_plane() { return y_; }
  const std::vector<std::uint8_t>& y_plane() const { return y_; }
  std::vector<std::uint8_t>& cb_plane() { return cb_; }
  const std::vector<std::uint8_t>& cb_plane() const { return cb_; }
  std::vector<std::uint8_t>& cr_plane() { return cr_; }
  const std::vector<std::uint8_t>& cr_plane() const { return cr_; }

  bool same_size(const Frame& other) const { return width_ == other.width_ && height_ == other.height_; }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> y_;
  std::vector<std::uint8_t> cb_;
  std::vector<std::uint8_t> cr_;
};

/// One flag per luma pixel; true marks the foreground object.
class ForegroundMask {
 public:
  ForegroundMask() = default;
  ForegroundMask(int width, int height, bool value = false);

  int width() const { return width_; }
  int height() const { return height_; }

  bool at(int x, int row) const { return bits_[static_cast<std::size_t>(row) * width_ + x] != 0; }
  void set(int x, int row, bool v) { bits_[static_cast<std::size_t>(row) * width_ + x] = v ? 1 : 0; }

  std::size_t popcount() const;
  std::size_t size() const { return bits_.size(); }
  const std::vector<std::uint8_t>& raw() const { return bits_; }

  /// 2x2 majority subsampling to chroma resolution; a 2-2 tie counts as
  /// foreground.
  ForegroundMask majority_subsample() const;

  friend bool operator==(const ForegroundMask&, const ForegroundMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct VideoSequence {
  std::vector<Frame> frames;
  std::optional<std::vector<ForegroundMask>> masks;
  int fps_num = 30;
  int fps_den = 1;
  /// Raw Y4M stream header and per-frame parameter strings, kept so that a
  /// loaded file is written back byte-for-byte.
  std::string y4m_header;
  std::vector<std::string> y4m_frame_params;

  double frame_rate() const { return static_cast<double>(fps_num) / fps_den; }
  int width() const { return frames.empty() ? 0 : frames.front().width(); }
  int height() const { return frames.empty() ? 0 : frames.front().height(); }

  /// Throws InvalidArgument when frames differ in size or masks are misaligned.
  void validate() const;
};

}  // namespace item::media
