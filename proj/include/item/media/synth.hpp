#pragma once

#include <cstdint>

#include "item/media/frame.hpp"

namespace item::media {

/// Parameters of the synthetic chat-sequence generator. The output is a pure
/// function of these values.
struct SynthSpec {
  int width = 128;
  int height = 96;
  int frame_count = 30;
  std::uint64_t seed = 1;
  int actor_count = 1;
  /// Peak actor speed in pixels per frame.
  double motion_amplitude = 1.0;
  /// Peak global luma change per frame, in [0, 32].
  int lighting_flicker = 0;
  /// Expected gesture events per second per actor.
  double gesture_rate = 0.0;
  int fps = 30;
  /// Per-pixel luma sensor noise (standard deviation, 8-bit units).
  double noise_sigma = 0.0;
};

/// Head/torso actors with striped clothing over a static textured room,
/// optional arm-wave gestures and lighting flicker. Foreground colors keep
/// luma >= 100 and Cb <= 150 so they stay well away from the default blue key.
/// Throws InvalidArgument for an invalid spec.
VideoSequence synth_chat_sequence(const SynthSpec& spec);

}  // namespace item::media
