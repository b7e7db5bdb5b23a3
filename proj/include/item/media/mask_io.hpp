#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "item/media/frame.hpp"

namespace item::media {

// Mask sidecar record:
//   "ITEMMASK" | u32 width (LE) | u32 height (LE) | rows
// Each row is bit-packed MSB-first and padded to a whole byte. A sidecar for
// a sequence is the concatenation of one record per frame.
void write_mask(std::ostream& out, const ForegroundMask& mask);
ForegroundMask read_mask(std::istream& in);

void save_masks(const std::string& path, const std::vector<ForegroundMask>& masks);
std::vector<ForegroundMask> load_masks(const std::string& path);

}  // namespace item::media
