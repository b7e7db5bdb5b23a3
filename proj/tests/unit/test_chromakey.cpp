#include <doctest.h>

#include <random>

#include "item/chromakey/chroma_key.hpp"
#include "item/codec/encoder.hpp"
#include "item/media/synth.hpp"

using namespace item;
using namespace item::chromakey;
using media::ForegroundMask;
using media::Frame;

namespace {

ForegroundMask random_mask(int w, int h, std::uint32_t seed, double p) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution d(p);
  ForegroundMask m(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) m.set(x, y, d(rng));
  return m;
}

bool subset(const ForegroundMask& a, const ForegroundMask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.raw()[i] && !b.raw()[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("apply_key extremes") {
  media::SynthSpec spec;
  spec.frame_count = 1;
  const auto seq = media::synth_chat_sequence(spec);
  const Frame& f = seq.frames[0];
  CHECK(apply_key(f, ForegroundMask(f.width(), f.height(), true)) == f);
  const Frame k = apply_key(f, ForegroundMask(f.width(), f.height(), false));
  CHECK(k == Frame(f.width(), f.height(), 41, 240, 110));
  CHECK(macroblock_is_key(k, 0, 0));
  CHECK_FALSE(macroblock_is_key(f, 0, 0));
}

TEST_CASE("uncompressed keyed frame recovers the exact mask") {
  media::SynthSpec spec;
  spec.frame_count = 3;
  spec.actor_count = 2;
  spec.gesture_rate = 2.0;
  const auto seq = media::synth_chat_sequence(spec);
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    const auto& m = (*seq.masks)[i];
    CHECK(recover_mask(apply_key(seq.frames[i], m), {}, 0.0) == m);
  }
}

TEST_CASE("recover_mask saturates and is monotone in tolerance") {
  media::SynthSpec spec;
  spec.frame_count = 1;
  const auto seq = media::synth_chat_sequence(spec);
  const Frame k = apply_key(seq.frames[0], (*seq.masks)[0]);
  CHECK(recover_mask(k, {}, 441.0).popcount() == 0);
  std::size_t prev = k.width() * k.height() + 1;
  for (double tol : {0.0, 10.0, 32.0, 80.0, 200.0}) {
    const auto m = recover_mask(k, {}, tol);
    CHECK(m.popcount() <= prev);
    prev = m.popcount();
  }
}

TEST_CASE("clean_mask hand-counted cases") {
  ForegroundMask iso(16, 16);
  iso.set(7, 7, true);
  CHECK(clean_mask(iso, 5).popcount() == 0);

  ForegroundMask sq(16, 16);
  for (int y = 4; y < 9; ++y)
    for (int x = 4; x < 9; ++x) sq.set(x, y, true);
  CHECK(clean_mask(sq, 5).at(6, 6));

  ForegroundMask two(16, 16);
  for (int y = 4; y < 6; ++y)
    for (int x = 4; x < 6; ++x) two.set(x, y, true);
  CHECK(clean_mask(two, 7) == two);  // 5 background neighbours each
  CHECK(clean_mask(two, 4).popcount() == 0);

  // the frame border counts as background: a corner pixel of a full mask has 5
  ForegroundMask full(16, 16, true);
  CHECK_FALSE(clean_mask(full, 4).at(0, 0));
  CHECK(clean_mask(full, 5).at(0, 0));
  CHECK_FALSE(clean_mask(full, 2).at(5, 0));
}

TEST_CASE("clean_mask never grows the foreground and reaches a fixpoint") {
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    const auto m = random_mask(32, 32, seed, 0.1 + 0.04 * seed);
    for (int t = 0; t <= 8; ++t) {
      const auto c = clean_mask(m, t);
      CHECK(subset(c, m));
    }
  }
  // isolated single pixels are always removed at the default threshold
  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    const auto m = random_mask(48, 32, 100 + seed, 0.02);
    const auto c = clean_mask(m, 5);
    for (int y = 0; y < 32; ++y)
      for (int x = 0; x < 48; ++x) {
        bool alone = m.at(x, y);
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int xx = x + dx, yy = y + dy;
            if ((dx || dy) && xx >= 0 && yy >= 0 && xx < 48 && yy < 32 && m.at(xx, yy)) alone = false;
          }
        if (alone) CHECK_FALSE(c.at(x, y));
      }
  }
}

TEST_CASE("jacobi semantics: result does not depend on scan order") {
  const auto m = random_mask(32, 32, 77, 0.5);
  const auto c = clean_mask(m, 4);
  // reference evaluation that reads only the input
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      int bg = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (!dx && !dy) continue;
          const int xx = x + dx, yy = y + dy;
          bg += !(xx >= 0 && yy >= 0 && xx < 32 && yy < 32 && m.at(xx, yy));
        }
      CHECK(c.at(x, y) == (m.at(x, y) && bg <= 4));
    }
}

TEST_CASE("codec roundtrip at qp 32 leaves raw boundary outliers that cleaning reduces") {
  media::SynthSpec spec;
  spec.frame_count = 4;
  spec.noise_sigma = 2.0;
  auto seq = media::synth_chat_sequence(spec);
  for (std::size_t i = 0; i < seq.frames.size(); ++i) seq.frames[i] = apply_key(seq.frames[i], (*seq.masks)[i]);
  codec::CodecConfig cc;
  cc.qp = 32;
  cc.search_range = 8;
  const auto res = codec::encode_sequence(seq, cc);
  std::size_t raw_err = 0, clean_err = 0;
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    const auto& truth = (*seq.masks)[i];
    const auto raw = recover_mask(res.recon.frames[i], {}, 32.0);
    const auto clean = recover_clean_mask(res.recon.frames[i], {}, {});
    for (std::size_t p = 0; p < truth.size(); ++p) {
      raw_err += raw.raw()[p] != truth.raw()[p];
      clean_err += clean.raw()[p] != truth.raw()[p];
    }
  }
  CHECK(raw_err > 0);
  CHECK(clean_err <= raw_err);
}
