#pragma once

#include <iosfwd>
#include <string>

#include "item/media/frame.hpp"

namespace item::media {

// YUV4MPEG2 reader/writer restricted to 4:2:0 (C420, C420jpeg, C420mpeg2,
// C420paldv; a missing C tag means 4:2:0). Errors throw FormatError, and
// InvalidArgument for dimensions that are not multiples of 16.
VideoSequence read_y4m(std::istream& in);
VideoSequence load_y4m(const std::string& path);

void write_y4m(std::ostream& out, const VideoSequence& seq);
void save_y4m(const std::string& path, const VideoSequence& seq);

}  // namespace item::media
