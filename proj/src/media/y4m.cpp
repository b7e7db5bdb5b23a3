#include "item/media/y4m.hpp"

#include <fstream>
#include <sstream>

#include "item/common/error.hpp"

namespace item::media {
namespace {

constexpr std::string_view kMagic = "YUV4MPEG2";

std::string read_line(std::istream& in, std::size_t limit) {
  std::string line;
  char c = 0;
  while (in.get(c)) {
    if (c == '\n') return line;
    line.push_back(c);
    if (line.size() > limit) throw FormatError("y4m: header line too long");
  }
  throw FormatError("y4m: unexpected end of file in header line");
}

void read_plane(std::istream& in, std::vector<std::uint8_t>& plane) {
  in.read(reinterpret_cast<char*>(plane.data()), static_cast<std::streamsize>(plane.size()));
  if (in.gcount() != static_cast<std::streamsize>(plane.size())) throw FormatError("y4m: truncated frame data");
}

}  // namespace

VideoSequence read_y4m(std::istream& in) {
  const std::string header = read_line(in, 4096);
  std::istringstream tags(header);
  std::string token;
  tags >> token;
  if (token != kMagic) throw FormatError("y4m: missing YUV4MPEG2 signature");

  int width = -1;
  int height = -1;
  VideoSequence seq;
  while (tags >> token) {
    const char key = token[0];
    const std::string value = token.substr(1);
    try {
      switch (key) {
        case 'W': width = std::stoi(value); break;
        case 'H': height = std::stoi(value); break;
        case 'F': {
          const auto colon = value.find(':');
          if (colon == std::string::npos) throw FormatError("y4m: malformed frame rate " + token);
          seq.fps_num = std::stoi(value.substr(0, colon));
          seq.fps_den = std::stoi(value.substr(colon + 1));
          if (seq.fps_num <= 0 || seq.fps_den <= 0) throw FormatError("y4m: non-positive frame rate");
          break;
        }
        case 'C':
          if (value.rfind("420", 0) != 0) throw FormatError("y4m: unsupported chroma sampling " + value);
          break;
        default: break;
      }
    } catch (const std::logic_error&) {
      throw FormatError("y4m: malformed header tag " + token);
    }
  }
  if (width <= 0 || height <= 0) throw FormatError("y4m: missing or invalid W/H");
  if (width % 16 != 0 || height % 16 != 0) {
    throw InvalidArgument("y4m: dimensions must be multiples of 16, got " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
  seq.y4m_header = header;

  while (in.peek() != std::char_traits<char>::eof()) {
    const std::string line = read_line(in, 4096);
    if (line.rfind("FRAME", 0) != 0) throw FormatError("y4m: expected FRAME marker");
    Frame f(width, height);
    read_plane(in, f.y_plane());
    read_plane(in, f.cb_plane());
    read_plane(in, f.cr_plane());
    seq.frames.push_back(std::move(f));
    seq.y4m_frame_params.push_back(line.substr(5));
  }
  return seq;
}

VideoSequence load_y4m(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("y4m: cannot open " + path);
  return read_y4m(in);
}

void write_y4m(std::ostream& out, const VideoSequence& seq) {
  seq.validate();
  if (seq.frames.empty()) throw InvalidArgument("y4m: empty sequence");
  std::string header = seq.y4m_header;
  if (header.empty()) {
    header = std::string(kMagic) + " W" + std::to_string(seq.width()) + " H" + std::to_string(seq.height()) +
             " F" + std::to_string(seq.fps_num) + ":" + std::to_string(seq.fps_den) + " Ip A1:1 C420jpeg";
  }
  out << header << '\n';
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    out << "FRAME";
    if (i < seq.y4m_frame_params.size()) out << seq.y4m_frame_params[i];
    out << '\n';
    const Frame& f = seq.frames[i];
    for (const auto* plane : {&f.y_plane(), &f.cb_plane(), &f.cr_plane()}) {
      out.write(reinterpret_cast<const char*>(plane->data()), static_cast<std::streamsize>(plane->size()));
    }
  }
  if (!out) throw FormatError("y4m: write failed");
}

void save_y4m(const std::string& path, const VideoSequence& seq) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("y4m: cannot create " + path);
  write_y4m(out, seq);
}

}  // namespace item::media
