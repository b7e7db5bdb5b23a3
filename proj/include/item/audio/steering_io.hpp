#pragma once

#include <string>

#include "item/audio/avs.hpp"

namespace item::audio {

/// Text header ("ITEMSTEER 1", resolution, bins, directions) followed by
/// little-endian doubles: per direction (and bin) 4 complex values as
/// re, im pairs. Frequency-flat fields store bins = 0 and one vector each.
void save_steering_field(const std::string& path, const SteeringField& field);
/// Throws FormatError on a malformed file and InvalidArgument when the
/// stored vectors do not cover the resolution grid.
SteeringField load_steering_field(const std::string& path);

}  // namespace item::audio
