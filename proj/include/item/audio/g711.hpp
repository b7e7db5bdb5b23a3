#pragma once

#include <cstdint>
#include <vector>

namespace item::audio {

/// ITU-T G.711 mu-law.
std::uint8_t ulaw_encode(std::int16_t pcm);
std::int16_t ulaw_decode(std::uint8_t code);

std::vector<std::uint8_t> g711_encode(const std::vector<std::int16_t>& pcm);
std::vector<std::int16_t> g711_decode(const std::vector<std::uint8_t>& codes);

}  // namespace item::audio
