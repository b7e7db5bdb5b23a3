#include "item/audio/steering_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "item/common/error.hpp"

namespace item::audio {

void save_steering_field(const std::string& path, const SteeringField& field) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw FormatError("steering field: cannot write " + path);
  std::ostringstream head;
  head.precision(17);
  head << "ITEMSTEER 1\nresolution " << field.resolution() << "\nbins " << field.bins() << "\ndirections "
       << field.size() << "\ndata\n";
  const std::string h = head.str();
  o.write(h.data(), static_cast<std::streamsize>(h.size()));
  for (const auto& v : field.raw()) {
    for (int c = 0; c < 4; ++c) {
      const double parts[2] = {v[c].real(), v[c].imag()};
      for (double p : parts) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &p, sizeof bits);
        for (int i = 0; i < 8; ++i) o.put(static_cast<char>((bits >> (8 * i)) & 0xFF));
      }
    }
  }
}

SteeringField load_steering_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("steering field: cannot open " + path);
  std::string line;
  auto expect = [&](const std::string& key) {
    if (!std::getline(in, line)) throw FormatError("steering field: truncated header");
    std::istringstream ls(line);
    std::string k;
    ls >> k;
    if (k != key) throw FormatError("steering field: expected '" + key + "'");
    return line.substr(k.size());
  };
  if (expect("ITEMSTEER") != " 1") throw FormatError("steering field: unsupported version");
  double resolution = 0.0;
  long bins = -1;
  long dirs = -1;
  if (!(std::istringstream(expect("resolution")) >> resolution)) throw FormatError("steering field: bad resolution");
  if (!(std::istringstream(expect("bins")) >> bins) || bins < 0 || bins > 65536) throw FormatError("steering field: bad bins");
  if (!(std::istringstream(expect("directions")) >> dirs) || dirs < 1) throw FormatError("steering field: bad directions");
  expect("data");
  const std::size_t per = bins == 0 ? 1 : static_cast<std::size_t>(bins);
  if (static_cast<std::size_t>(dirs) > (std::size_t{1} << 24) / per) throw FormatError("steering field: too large");
  std::vector<Eigen::Vector4cd> vecs(static_cast<std::size_t>(dirs) * per);
  for (auto& v : vecs) {
    for (int c = 0; c < 4; ++c) {
      double parts[2];
      for (double& p : parts) {
        unsigned char b[8];
        if (!in.read(reinterpret_cast<char*>(b), 8)) throw FormatError("steering field: truncated data");
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        std::memcpy(&p, &bits, sizeof p);
      }
      v[c] = {parts[0], parts[1]};
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("steering field: trailing data");
  return SteeringField::calibrated(resolution, static_cast<int>(bins), std::move(vecs));
}

}  // namespace item::audio
