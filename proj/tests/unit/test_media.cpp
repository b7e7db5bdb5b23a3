#include <doctest.h>

#include <cmath>
#include <sstream>

#include "item/common/error.hpp"
#include "item/media/composite.hpp"
#include "item/media/mask_io.hpp"
#include "item/media/metrics.hpp"
#include "item/media/synth.hpp"
#include "item/media/y4m.hpp"

using namespace item;
using namespace item::media;

namespace {

Frame ramp_frame(int w, int h, int seed) {
  Frame f(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) f.y(x, y) = static_cast<std::uint8_t>((x * 3 + y * 7 + seed) & 255);
  for (int y = 0; y < h / 2; ++y)
    for (int x = 0; x < w / 2; ++x) {
      f.cb(x, y) = static_cast<std::uint8_t>((x + seed) & 255);
      f.cr(x, y) = static_cast<std::uint8_t>((y * 5 + seed) & 255);
    }
  return f;
}

}  // namespace

TEST_CASE("frame dimensions must be positive multiples of 16") {
  CHECK_THROWS_AS(Frame(20, 16), InvalidArgument);
  CHECK_THROWS_AS(Frame(0, 16), InvalidArgument);
  Frame f(32, 16, 10, 20, 30);
  CHECK(f.y_plane().size() == 512);
  CHECK(f.cb_plane().size() == 128);
  CHECK(f.cr(3, 2) == 30);
}

TEST_CASE("y4m roundtrip is byte identical") {
  VideoSequence s;
  s.frames = {ramp_frame(64, 48, 0), ramp_frame(64, 48, 9)};
  std::stringstream a;
  write_y4m(a, s);
  const std::string bytes = a.str();
  std::istringstream in(bytes);
  const auto back = read_y4m(in);
  REQUIRE(back.frames.size() == 2);
  CHECK(back.frames[1] == s.frames[1]);
  CHECK(back.width() == 64);
  std::stringstream b;
  write_y4m(b, back);
  CHECK(b.str() == bytes);
}

TEST_CASE("y4m keeps unusual header tags byte for byte") {
  const std::string header = "YUV4MPEG2 W16 H16 F25:1 Ip A1:1 C420jpeg XYSCSS=420JPEG\n";
  std::string file = header + "FRAME\n" + std::string(16 * 16 * 3 / 2, '\x55');
  std::istringstream in(file);
  const auto s = read_y4m(in);
  CHECK(s.fps_num == 25);
  std::ostringstream out;
  write_y4m(out, s);
  CHECK(out.str() == file);
}

TEST_CASE("y4m rejects bad input") {
  std::istringstream c444("YUV4MPEG2 W16 H16 F30:1 C444\nFRAME\n" + std::string(768, '\0'));
  CHECK_THROWS_AS(read_y4m(c444), FormatError);
  std::istringstream odd("YUV4MPEG2 W18 H16 F30:1 C420\nFRAME\n" + std::string(18 * 16 * 3 / 2, '\0'));
  CHECK_THROWS_AS(read_y4m(odd), InvalidArgument);
  std::istringstream magic("YUV4MPEG3 W16 H16\n");
  CHECK_THROWS_AS(read_y4m(magic), FormatError);
  std::istringstream truncated("YUV4MPEG2 W16 H16 F30:1\nFRAME\n" + std::string(100, '\0'));
  CHECK_THROWS_AS(read_y4m(truncated), FormatError);
}

TEST_CASE("mask sidecar roundtrip and layout") {
  ForegroundMask m(17, 3);
  m.set(0, 0, true);
  m.set(16, 2, true);
  m.set(8, 1, true);
  std::stringstream ss;
  write_mask(ss, m);
  const std::string b = ss.str();
  // magic + 2 x u32 + 3 rows of ceil(17/8) = 3 bytes
  CHECK(b.size() == 8 + 8 + 9);
  CHECK(b.substr(0, 8) == "ITEMMASK");
  CHECK(static_cast<unsigned char>(b[8]) == 17);
  CHECK(static_cast<unsigned char>(b[16]) == 0x80);  // MSB first
  std::istringstream in(b);
  CHECK(read_mask(in) == m);
}

TEST_CASE("psnr closed forms") {
  Frame a(16, 16, 0), b(16, 16, 255);
  CHECK(psnr_luma(a, a) == kPsnrCap);
  CHECK(psnr_luma(a, b) == doctest::Approx(0.0).epsilon(1e-12));
  Frame c = a;
  c.y(5, 5) = 16;
  // MSE = 16^2 / 256
  const double expect = 10.0 * std::log10(255.0 * 255.0 * 256.0 / (16.0 * 16.0));
  CHECK(psnr_luma(a, c) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(psnr_luma(c, a) == psnr_luma(a, c));
  ForegroundMask region(16, 16);
  CHECK_THROWS_AS(psnr_luma(a, c, &region), InvalidArgument);
  region.set(5, 5, true);
  CHECK(psnr_luma(a, c, &region) == doctest::Approx(10.0 * std::log10(255.0 * 255.0 / 256.0)));
  CHECK_THROWS_AS(psnr_luma(a, Frame(32, 16)), InvalidArgument);
}

TEST_CASE("composite follows the mask") {
  const Frame obj = ramp_frame(32, 32, 3);
  const Frame bg(64, 48, 200, 90, 160);
  CHECK(composite_over(obj, ForegroundMask(32, 32), bg, {8, 8}) == bg);
  CHECK(composite_over(obj, ForegroundMask(32, 32, true), Frame(32, 32), {0, 0}) == obj);
  ForegroundMask half(32, 32);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 16; ++x) half.set(x, y, true);
  const Frame out = composite_over(obj, half, bg, {16, 8});
  std::size_t from_obj = 0, from_bg = 0;
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      if (half.at(x, y)) from_obj += out.y(16 + x, 8 + y) == obj.y(x, y);
      else from_bg += out.y(16 + x, 8 + y) == 200;
    }
  CHECK(from_obj == half.popcount());
  CHECK(from_bg == 32 * 32 - half.popcount());
  CHECK(composite_over(obj, half, out, {16, 8}) == out);
  CHECK_THROWS_AS(composite_over(obj, half, bg, {40, 0}), InvalidArgument);
  CHECK_THROWS_AS(composite_over(obj, half, bg, {1, 0}), InvalidArgument);
}

TEST_CASE("majority subsampling counts ties as foreground") {
  ForegroundMask m(16, 16);
  m.set(0, 0, true);
  m.set(1, 0, true);
  m.set(2, 2, true);
  const auto s = m.majority_subsample();
  CHECK(s.width() == 8);
  CHECK(s.at(0, 0));
  CHECK_FALSE(s.at(1, 1));
}

TEST_CASE("synthetic sequences are deterministic and plausible") {
  SynthSpec spec;
  spec.seed = 7;
  spec.frame_count = 12;
  spec.gesture_rate = 1.0;
  spec.lighting_flicker = 6;
  spec.noise_sigma = 2.0;
  const auto a = synth_chat_sequence(spec);
  const auto b = synth_chat_sequence(spec);
  CHECK(a.frames == b.frames);
  CHECK(*a.masks == *b.masks);
  spec.seed = 8;
  CHECK(synth_chat_sequence(spec).frames != a.frames);

  SynthSpec still;
  still.motion_amplitude = 0.0;
  still.frame_count = 5;
  const auto s = synth_chat_sequence(still);
  for (std::size_t i = 2; i < s.frames.size(); ++i) CHECK(s.frames[i] == s.frames[1]);

  SynthSpec longer;
  longer.frame_count = 100;
  const auto l = synth_chat_sequence(longer);
  for (const auto& m : *l.masks) {
    const double fg = static_cast<double>(m.popcount()) / static_cast<double>(m.size());
    CHECK(fg > 0.0);
    CHECK(fg < 0.6);
  }
  SynthSpec bad;
  bad.actor_count = 0;
  bad.gesture_rate = 1.0;
  CHECK_THROWS_AS(synth_chat_sequence(bad), InvalidArgument);
}

TEST_CASE("synthetic foreground stays clear of the key color") {
  SynthSpec spec;
  spec.actor_count = 2;
  spec.frame_count = 20;
  spec.gesture_rate = 2.0;
  spec.lighting_flicker = 8;
  const auto seq = synth_chat_sequence(spec);
  double min_d = 1e9;
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    const auto& fr = seq.frames[f];
    for (int y = 0; y < fr.height(); ++y)
      for (int x = 0; x < fr.width(); ++x) {
        if (!(*seq.masks)[f].at(x, y)) continue;
        const double dy = fr.y(x, y) - 41.0, db = fr.cb(x / 2, y / 2) - 240.0, dr = fr.cr(x / 2, y / 2) - 110.0;
        min_d = std::min(min_d, std::sqrt(dy * dy + db * db + dr * dr));
      }
  }
  CHECK(min_d >= 48.0);
}
