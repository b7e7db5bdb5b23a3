#include "item/audio/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "item/common/error.hpp"

namespace item::audio {
namespace {

std::uint32_t le32(const std::uint8_t* p) { return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24); }
std::uint16_t le16(const std::uint8_t* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }

void put32(std::ostream& o, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) o.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put16(std::ostream& o, std::uint16_t v) {
  o.put(static_cast<char>(v & 0xFF));
  o.put(static_cast<char>(v >> 8));
}

}  // namespace

WavData read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("wav: cannot open " + path);
  const std::vector<std::uint8_t> b((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (b.size() < 12 || std::memcmp(b.data(), "RIFF", 4) != 0 || std::memcmp(b.data() + 8, "WAVE", 4) != 0) {
    throw FormatError("wav: not a RIFF/WAVE file");
  }
  WavData w;
  bool have_fmt = false;
  bool have_data = false;
  std::size_t pos = 12;
  while (pos + 8 <= b.size()) {
    const std::uint32_t size = le32(b.data() + pos + 4);
    const std::uint8_t* body = b.data() + pos + 8;
    if (size > b.size() - pos - 8) throw FormatError("wav: truncated chunk");
    if (std::memcmp(b.data() + pos, "fmt ", 4) == 0) {
      if (size < 16) throw FormatError("wav: short fmt chunk");
      const std::uint16_t format = le16(body);
      w.channels = le16(body + 2);
      w.sample_rate = static_cast<int>(le32(body + 4));
      const std::uint16_t bits = le16(body + 14);
      if ((format != 1 && format != 0xFFFE) || bits != 16) throw FormatError("wav: only PCM16 is supported");
      if (w.channels < 1 || w.sample_rate <= 0) throw FormatError("wav: bad channel count or rate");
      have_fmt = true;
    } else if (std::memcmp(b.data() + pos, "data", 4) == 0) {
      if (!have_fmt) throw FormatError("wav: data before fmt");
      const std::size_t count = size / 2;
      w.samples.resize(count - count % static_cast<std::size_t>(w.channels));
      for (std::size_t i = 0; i < w.samples.size(); ++i) w.samples[i] = static_cast<std::int16_t>(le16(body + 2 * i));
      have_data = true;
    }
    pos += 8 + size + (size & 1);
  }
  if (!have_fmt || !have_data) throw FormatError("wav: missing fmt or data chunk");
  return w;
}

void write_wav(const std::string& path, const WavData& w) {
  if (w.channels < 1 || w.sample_rate <= 0 || w.samples.size() % static_cast<std::size_t>(w.channels) != 0) {
    throw InvalidArgument("wav: inconsistent contents");
  }
  std::ofstream o(path, std::ios::binary);
  if (!o) throw FormatError("wav: cannot write " + path);
  const auto data_bytes = static_cast<std::uint32_t>(w.samples.size() * 2);
  o.write("RIFF", 4);
  put32(o, 36 + data_bytes);
  o.write("WAVEfmt ", 8);
  put32(o, 16);
  put16(o, 1);
  put16(o, static_cast<std::uint16_t>(w.channels));
  put32(o, static_cast<std::uint32_t>(w.sample_rate));
  put32(o, static_cast<std::uint32_t>(w.sample_rate * w.channels * 2));
  put16(o, static_cast<std::uint16_t>(w.channels * 2));
  put16(o, 16);
  o.write("data", 4);
  put32(o, data_bytes);
  for (auto s : w.samples) put16(o, static_cast<std::uint16_t>(s));
}

Eigen::MatrixXd to_matrix(const WavData& w) {
  Eigen::MatrixXd m(w.channels, static_cast<Eigen::Index>(w.frames()));
  for (Eigen::Index t = 0; t < m.cols(); ++t)
    for (int c = 0; c < w.channels; ++c) m(c, t) = w.samples[static_cast<std::size_t>(t * w.channels + c)] / 32768.0;
  return m;
}

WavData from_matrix(const Eigen::MatrixXd& m, int sample_rate) {
  WavData w;
  w.sample_rate = sample_rate;
  w.channels = static_cast<int>(m.rows());
  w.samples.resize(static_cast<std::size_t>(m.size()));
  for (Eigen::Index t = 0; t < m.cols(); ++t) {
    for (Eigen::Index c = 0; c < m.rows(); ++c) {
      const double v = std::clamp(std::round(m(c, t) * 32768.0), -32768.0, 32767.0);
      w.samples[static_cast<std::size_t>(t * m.rows() + c)] = static_cast<std::int16_t>(v);
    }
  }
  return w;
}

}  // namespace item::audio
