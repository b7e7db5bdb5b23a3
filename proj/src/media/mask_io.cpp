#include "item/media/mask_io.hpp"

#include <array>
#include <cstring>
#include <fstream>

#include "item/common/error.hpp"

namespace item::media {
namespace {

constexpr std::array<char, 8> kMagic = {'I', 'T', 'E', 'M', 'M', 'A', 'S', 'K'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                         static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.write(bytes, 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (in.gcount() != 4) throw FormatError("mask: truncated header");
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_mask(std::ostream& out, const ForegroundMask& mask) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, static_cast<std::uint32_t>(mask.width()));
  put_u32(out, static_cast<std::uint32_t>(mask.height()));
  const int row_bytes = (mask.width() + 7) / 8;
  std::vector<char> row(static_cast<std::size_t>(row_bytes));
  for (int r = 0; r < mask.height(); ++r) {
    std::fill(row.begin(), row.end(), 0);
    for (int c = 0; c < mask.width(); ++c) {
      if (mask.at(c, r)) row[c / 8] = static_cast<char>(row[c / 8] | (0x80 >> (c % 8)));
    }
    out.write(row.data(), row_bytes);
  }
  if (!out) throw FormatError("mask: write failed");
}

ForegroundMask read_mask(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != static_cast<std::streamsize>(magic.size()) || magic != kMagic) {
    throw FormatError("mask: bad magic");
  }
  const std::uint32_t width = get_u32(in);
  const std::uint32_t height = get_u32(in);
  if (width > (1u << 16) || height > (1u << 16)) throw FormatError("mask: implausible dimensions");
  ForegroundMask mask(static_cast<int>(width), static_cast<int>(height));
  const int row_bytes = (static_cast<int>(width) + 7) / 8;
  std::vector<unsigned char> row(static_cast<std::size_t>(row_bytes));
  for (int r = 0; r < mask.height(); ++r) {
    in.read(reinterpret_cast<char*>(row.data()), row_bytes);
    if (in.gcount() != row_bytes) throw FormatError("mask: truncated rows");
    for (int c = 0; c < mask.width(); ++c) mask.set(c, r, (row[c / 8] & (0x80 >> (c % 8))) != 0);
  }
  return mask;
}

void save_masks(const std::string& path, const std::vector<ForegroundMask>& masks) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("mask: cannot create " + path);
  for (const auto& m : masks) write_mask(out, m);
}

std::vector<ForegroundMask> load_masks(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("mask: cannot open " + path);
  std::vector<ForegroundMask> masks;
  while (in.peek() != std::char_traits<char>::eof()) masks.push_back(read_mask(in));
  return masks;
}

}  // namespace item::media
