#include "item/audio/g711.hpp"

namespace item::audio {
namespace {
constexpr int kBias = 0x84;
constexpr int kClip = 32635;
}  // namespace

std::uint8_t ulaw_encode(std::int16_t pcm) {
  int v = pcm;
  const int sign = v < 0 ? 0x80 : 0;
  if (sign) v = -v;
  if (v > kClip) v = kClip;
  v += kBias;
  int exponent = 7;
  for (int mask = 0x4000; (v & mask) == 0 && exponent > 0; mask >>= 1) --exponent;
  const int mantissa = (v >> (exponent + 3)) & 0x0F;
  return static_cast<std::uint8_t>(~(sign | (exponent << 4) | mantissa));
}

std::int16_t ulaw_decode(std::uint8_t code) {
  const int u = ~code & 0xFF;
  const int exponent = (u >> 4) & 0x07;
  const int mantissa = u & 0x0F;
  const int magnitude = (((mantissa << 3) + kBias) << exponent) - kBias;
  return static_cast<std::int16_t>((u & 0x80) ? -magnitude : magnitude);
}

std::vector<std::uint8_t> g711_encode(const std::vector<std::int16_t>& pcm) {
  std::vector<std::uint8_t> out;
  out.reserve(pcm.size());
  for (auto s : pcm) out.push_back(ulaw_encode(s));
  return out;
}

std::vector<std::int16_t> g711_decode(const std::vector<std::uint8_t>& codes) {
  std::vector<std::int16_t> out;
  out.reserve(codes.size());
  for (auto c : codes) out.push_back(ulaw_decode(c));
  return out;
}

}  // namespace item::audio
