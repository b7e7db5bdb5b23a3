#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "item/chromakey/chroma_key.hpp"
#include "item/codec/beta_training.hpp"
#include "item/codec/bitstream.hpp"
#include "item/codec/encoder.hpp"
#include "item/codec/intra.hpp"
#include "item/codec/macroblock.hpp"
#include "item/codec/mode_decision.hpp"
#include "item/codec/motion.hpp"
#include "item/codec/reference.hpp"
#include "item/codec/transform.hpp"
#include "item/common/error.hpp"
#include "item/media/synth.hpp"

using namespace item;
using namespace item::codec;
using media::Frame;

namespace {

Frame noise_frame(int w, int h, std::uint32_t seed, int lo = 0, int hi = 255) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(lo, hi);
  Frame f(w, h);
  for (auto& v : f.y_plane()) v = static_cast<std::uint8_t>(d(rng));
  for (auto& v : f.cb_plane()) v = static_cast<std::uint8_t>(d(rng));
  for (auto& v : f.cr_plane()) v = static_cast<std::uint8_t>(d(rng));
  return f;
}

// smooth texture so motion search has a unique, well-defined optimum
Frame texture_frame(int w, int h, int shift_x = 0) {
  Frame f(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int u = x + shift_x;
      f.y(x, y) = static_cast<std::uint8_t>(128 + 60 * std::sin(u * 0.37) * std::cos(y * 0.23) + 30 * std::sin((u + 2 * y) * 0.11));
    }
  return f;
}

// direct 4x4 Hadamard: H * D * H^T with the Sylvester matrix
int hadamard_oracle(const std::array<int, 16>& d) {
  static const int H[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
  int sum = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int v = 0;
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) v += H[i][k] * d[k * 4 + l] * H[j][l];
      sum += std::abs(v);
    }
  return sum;
}

media::VideoSequence test_sequence(int frames, bool keyed, std::uint64_t seed = 3) {
  media::SynthSpec spec;
  spec.frame_count = frames;
  spec.seed = seed;
  spec.noise_sigma = 2.0;
  spec.lighting_flicker = 3;
  spec.gesture_rate = 1.0;
  auto seq = media::synth_chat_sequence(spec);
  if (keyed)
    for (std::size_t i = 0; i < seq.frames.size(); ++i) seq.frames[i] = chromakey::apply_key(seq.frames[i], (*seq.masks)[i]);
  return seq;
}

}  // namespace

TEST_CASE("exp-golomb roundtrip over [0, 2^20]") {
  BitWriter w;
  constexpr std::uint32_t kMax = 1u << 20;
  std::size_t expect_bits = 0;
  for (std::uint32_t v = 0; v <= kMax; ++v) {
    w.put_ue(v);
    // oracle: 2 * floor(log2(v + 1)) + 1
    expect_bits += 2 * static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(v) + 1.0))) + 1;
  }
  CHECK(w.bit_count() == expect_bits);
  const auto bytes = w.bytes();
  BitReader r(bytes);
  bool ok = true;
  for (std::uint32_t v = 0; v <= kMax && ok; ++v) ok = r.get_ue() == v;
  CHECK(ok);
}

TEST_CASE("signed exp-golomb mapping and roundtrip") {
  CHECK(se_bits(0) == 1);
  CHECK(se_bits(1) == 3);
  CHECK(se_bits(-1) == 3);
  CHECK(se_bits(2) == 5);
  BitWriter w;
  for (int v = -70000; v <= 70000; v += 7) w.put_se(v);
  w.put_se(0);
  const auto bytes = w.bytes();
  BitReader r(bytes);
  bool ok = true;
  for (int v = -70000; v <= 70000 && ok; v += 7) ok = r.get_se() == v;
  CHECK(ok);
  CHECK(r.get_se() == 0);
}

TEST_CASE("bit reader rejects overruns and overlong prefixes") {
  const std::vector<std::uint8_t> one{0xA0};
  BitReader r(one);
  CHECK(r.get_bits(3) == 5u);
  CHECK_THROWS_AS(r.get_bits(6), CorruptStream);
  const std::vector<std::uint8_t> zeros(8, 0);
  BitReader z(zeros);
  CHECK_THROWS_AS(z.get_ue(), CorruptStream);
  BitWriter w;
  w.put_bits(0b101, 3);
  w.align();
  CHECK(w.bit_count() == 8);
  CHECK(w.bytes()[0] == 0xA0);
}

TEST_CASE("satd matches a direct Hadamard evaluation") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(0, 255);
  for (int t = 0; t < 200; ++t) {
    std::array<std::uint8_t, 16> a{}, b{};
    std::array<int, 16> diff{};
    for (int i = 0; i < 16; ++i) {
      a[i] = static_cast<std::uint8_t>(d(rng));
      b[i] = static_cast<std::uint8_t>(d(rng));
      diff[i] = a[i] - b[i];
    }
    CHECK(satd4x4(a.data(), 4, b.data(), 4) == hadamard_oracle(diff));
    CHECK(satd4x4(a.data(), 4, b.data(), 4) == satd4x4(b.data(), 4, a.data(), 4));
  }
  std::array<std::uint8_t, 16> x{}, y{};
  x.fill(100);
  y.fill(93);
  CHECK(satd4x4(x.data(), 4, y.data(), 4) == 16 * 7);
  CHECK(satd4x4(x.data(), 4, x.data(), 4) == 0);
}

TEST_CASE("satd of larger blocks sums 4x4 kernels and counts them") {
  const Frame a = noise_frame(16, 16, 1), b = noise_frame(16, 16, 2);
  reset_satd_call_count();
  const int whole = satd({a.y_plane().data(), 16, 16, 16}, {b.y_plane().data(), 16, 16, 16});
  CHECK(satd_call_count() == 16);
  int parts = 0;
  for (int y = 0; y < 16; y += 4)
    for (int x = 0; x < 16; x += 4) parts += satd4x4(&a.y_plane()[y * 16 + x], 16, &b.y_plane()[y * 16 + x], 16);
  CHECK(whole == parts);
  CHECK_THROWS_AS(satd({a.y_plane().data(), 16, 8, 4}, {b.y_plane().data(), 16, 4, 8}), InvalidArgument);
  CHECK_THROWS_AS(satd({a.y_plane().data(), 16, 12, 4}, {b.y_plane().data(), 16, 12, 4}), InvalidArgument);
  CHECK_NOTHROW(satd({a.y_plane().data(), 16, 8, 16}, {b.y_plane().data(), 16, 8, 16}));
}

TEST_CASE("forward transform equals C X C^T") {
  static const int C[4][4] = {{1, 1, 1, 1}, {2, 1, -1, -2}, {1, -1, -1, 1}, {1, -2, 2, -1}};
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(-255, 255);
  for (int t = 0; t < 50; ++t) {
    Block4x4 x{};
    for (auto& v : x) v = d(rng);
    const Block4x4 f = forward_transform(x);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        int v = 0;
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) v += C[i][k] * x[k * 4 + l] * C[j][l];
        CHECK(f[i * 4 + j] == v);
      }
  }
}

TEST_CASE("residual coding error shrinks with qp") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-60, 60);
  double prev = -1.0;
  for (int qp : {4, 16, 28, 40}) {
    double err = 0.0;
    for (int t = 0; t < 100; ++t) {
      Block4x4 r{}, lv{}, rec{};
      for (auto& v : r) v = d(rng);
      code_residual(r, qp, true, lv, rec);
      CHECK(reconstruct_residual(lv, qp) == rec);
      for (int i = 0; i < 16; ++i) err += std::abs(r[i] - rec[i]);
    }
    CHECK(err >= prev);
    prev = err;
  }
  Block4x4 zero{}, lv{}, rec{};
  CHECK_FALSE(code_residual(zero, 28, false, lv, rec));
  CHECK(rec == zero);
  // qp 4 has a unit step: small residuals come back nearly exact
  Block4x4 r{}, lv4{}, rec4{};
  for (int i = 0; i < 16; ++i) r[i] = i - 8;
  code_residual(r, 4, true, lv4, rec4);
  for (int i = 0; i < 16; ++i) CHECK(std::abs(rec4[i] - r[i]) <= 1);
}

TEST_CASE("dead-zone offsets differ for intra and inter") {
  // a coefficient at 0.3 of a step rounds up only with the intra offset (1/3)
  Block4x4 c{};
  c[0] = 3;  // qp 4: step 1, scaled coefficient checked through the quantizer
  const Block4x4 qi = quantize(c, 4, true), qp = quantize(c, 4, false);
  CHECK(qi[0] >= qp[0]);
}

TEST_CASE("skip threshold closed form") {
  CHECK(skip_threshold(0) == doctest::Approx(14.0).epsilon(1e-12));
  CHECK(skip_threshold(24) == doctest::Approx(387.86).epsilon(1e-4));
  CHECK(skip_threshold(28) == doctest::Approx(674.7).epsilon(1e-4));
  CHECK(skip_threshold(36) == doctest::Approx(2041.5).epsilon(1e-4));
  for (int qp = 0; qp <= 51; ++qp) {
    const long double ref = 14.0L * std::exp(0.1384L * qp);
    CHECK(std::abs((skip_threshold(qp) - static_cast<double>(ref)) / static_cast<double>(ref)) <= 1e-9);
    if (qp > 0) CHECK(skip_threshold(qp) > skip_threshold(qp - 1));
  }
  CHECK_THROWS_AS(skip_threshold(52), InvalidArgument);
  CHECK_THROWS_AS(skip_threshold(-1), InvalidArgument);
}

TEST_CASE("lagrangian multipliers") {
  CodecConfig c;
  c.qp = 12;
  CHECK(c.lambda_mode() == doctest::Approx(0.85));
  c.qp = 27;
  CHECK(c.lambda_mode() == doctest::Approx(0.85 * 32.0));
  CHECK(c.lambda_mv() == doctest::Approx(std::sqrt(0.85 * 32.0)));
  c.qp = 60;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("dominant edge angle conventions") {
  Block4x4 f{};
  f[4] = 10;  // column sum only
  CHECK(*dominant_edge_angle(f) == doctest::Approx(0.0));
  f = {};
  f[1] = 5;
  f[4] = 5;
  CHECK(*dominant_edge_angle(f) == doctest::Approx(45.0));
  f = {};
  f[2] = -7;  // row sum only
  CHECK(*dominant_edge_angle(f) == doctest::Approx(90.0));
  f = {};
  f[0] = 99;  // DC alone is no edge
  CHECK_FALSE(dominant_edge_angle(f).has_value());
  f = {};
  f[1] = 5;
  f[4] = -5;
  CHECK(*dominant_edge_angle(f) == doctest::Approx(135.0));
}

TEST_CASE("intra 4x4 candidate selection") {
  auto sorted = [](std::array<int, 3> a) {
    std::sort(a.begin(), a.end());
    return a;
  };
  CHECK(sorted(select_intra4_modes(90.0, kI4DC)) == std::array<int, 3>{kI4Vertical, kI4DC, kI4VerticalRight});
  CHECK(sorted(select_intra4_modes(0.0, kI4DC)) == std::array<int, 3>{kI4Horizontal, kI4DC, kI4HorizontalDown});
  CHECK(sorted(select_intra4_modes(45.0, kI4DC)) == std::array<int, 3>{kI4DC, kI4DiagDownRight, kI4VerticalRight});
  for (int mpm = 0; mpm < 9; ++mpm) {
    for (double a = 0.0; a < 180.0; a += 2.5) {
      const auto s = select_intra4_modes(a, mpm);
      CHECK(std::count(s.begin(), s.end(), kI4DC) == 1);
      CHECK(s[0] != s[1]);
      CHECK(s[1] != s[2]);
      CHECK(s[0] != s[2]);
    }
    const auto n = select_intra4_modes(std::nullopt, mpm);
    CHECK(std::count(n.begin(), n.end(), kI4DC) == 1);
    CHECK(std::count(n.begin(), n.end(), mpm) == 1);
    CHECK(sorted(n)[0] != sorted(n)[1]);
    CHECK(sorted(n)[1] != sorted(n)[2]);
  }
}

TEST_CASE("vertical stripes pick the vertical mode") {
  Intra4Neighbors n;
  n.has_top = n.has_left = true;
  n.top = {10, 200, 30, 180, 180, 180, 180, 180};
  n.left = {90, 90, 90, 90};
  n.top_left = 90;
  std::array<std::uint8_t, 16> src{};
  Block4x4 s{};
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) {
      src[y * 4 + x] = static_cast<std::uint8_t>(n.top[x]);
      s[y * 4 + x] = n.top[x];
    }
  const auto modes = select_intra4_modes(dominant_edge_angle(forward_transform(s)), kI4DC);
  CHECK(std::count(modes.begin(), modes.end(), kI4Vertical) == 1);
  int best_mode = -1, best = 1 << 30;
  for (int m : modes) {
    const auto p = predict_intra4(n, m);
    const int c = satd4x4(src.data(), 4, p.data(), 4);
    if (c < best) {
      best = c;
      best_mode = m;
    } else {
      CHECK(c > best);
    }
  }
  CHECK(best_mode == kI4Vertical);
  CHECK(best == 0);
}

TEST_CASE("intra predictors with no neighbours") {
  Intra4Neighbors n;
  const auto p = predict_intra4(n, kI4DC);
  for (auto v : p) CHECK(v == 128);
  Intra16Neighbors m;
  for (int mode = 0; mode < 4; ++mode)
    for (auto v : predict_intra16(m, mode)) CHECK(v == 128);
}

TEST_CASE("motion search on constructed content") {
  const Frame ref_frame = texture_frame(64, 64);
  const RefPicture ref(ref_frame);
  CodecConfig cfg;
  cfg.qp = 28;
  const double lmv = cfg.lambda_mv();
  SUBCASE("static content") {
    MotionEstimator me(ref_frame, ref, 8, lmv);
    const auto r = me.search(16, 16, 16, 16, MvPrecision::Quarter, {0, 0});
    CHECK(r.mv == MotionVector{0, 0});
    CHECK(r.cost == doctest::Approx(lmv * 2.0));  // two se(0) codes
  }
  SUBCASE("integer translation") {
    const Frame src = texture_frame(64, 64, 4);  // src(x) = ref(x + 4)
    MotionEstimator me(src, ref, 8, lmv);
    const auto r = me.search(16, 16, 16, 16, MvPrecision::Quarter, {0, 0});
    CHECK(r.mv == MotionVector{16, 0});
    CHECK(me.satd_at(16, 16, 16, 16, r.mv) == 0);
  }
  SUBCASE("never worse than zero motion; quarter never worse than half") {
    const Frame src = noise_frame(64, 64, 17, 60, 200);
    MotionEstimator me(src, ref, 8, lmv);
    for (int by = 0; by < 64; by += 16)
      for (int bx = 0; bx < 64; bx += 16) {
        const MotionVector pred{4, -2};
        const auto half = me.search(bx, by, 16, 16, MvPrecision::Half, pred);
        const auto quarter = me.refine(bx, by, 16, 16, pred, half, 1);
        CHECK(half.cost <= me.cost_at(bx, by, 16, 16, {0, 0}, pred));
        CHECK(quarter.cost <= half.cost);
        CHECK(std::abs(quarter.mv.dx) <= 4 * 9);
      }
  }
}

TEST_CASE("mode decision on a static macroblock takes early skip") {
  const Frame f = texture_frame(48, 48);
  const RefPicture ref(f);
  CodecConfig cfg;
  cfg.qp = 28;
  FrameState st(48, 48, true, cfg.qp, &ref);
  MotionEstimator me(f, ref, 8, cfg.lambda_mv());
  const MbContext ctx{f, &f, st, &me, 1, 1, cfg};
  const auto d = decide_mode_fast(ctx);
  CHECK(d.j_skip == 0.0);
  CHECK(d.traced(Step::EarlySkip));
  CHECK(d.info.type == MbType::Skip);
  const auto full = decide_mode_full(ctx);
  CHECK((full.info.type == MbType::Skip || full.info.type == MbType::Inter16x16));
  CHECK(full.j_rd <= d.j_rd);
}

TEST_CASE("newly exposed key-colored macroblock is forced to I16MB") {
  const chromakey::KeyColor key;
  Frame prev = texture_frame(48, 48);
  Frame cur = prev;
  for (int y = 16; y < 32; ++y)
    for (int x = 16; x < 32; ++x) cur.y(x, y) = key.y;
  for (int y = 8; y < 16; ++y)
    for (int x = 8; x < 16; ++x) {
      cur.cb(x, y) = key.cb;
      cur.cr(x, y) = key.cr;
    }
  const RefPicture ref(prev);
  CodecConfig cfg;
  FrameState st(48, 48, true, cfg.qp, &ref);
  MotionEstimator me(cur, ref, 8, cfg.lambda_mv());
  const MbContext ctx{cur, &prev, st, &me, 1, 1, cfg};
  CHECK(newly_exposed_key_block(ctx));
  const auto d = decide_mode_fast(ctx);
  CHECK(d.info.type == MbType::I16MB);
  CHECK(d.traced(Step::BlueBypass));
  // the same block already keyed in the previous frame is not bypassed
  const MbContext again{cur, &cur, st, &me, 1, 1, cfg};
  CHECK_FALSE(newly_exposed_key_block(again));
}

TEST_CASE("fast decisions are consistent with their trace and never beat the exhaustive path") {
  const auto seq = test_sequence(4, false);
  CodecConfig cfg;
  cfg.search_range = 8;
  std::size_t agree = 0, total = 0;
  for (int qp : {24, 32}) {
    cfg.qp = qp;
    const RefPicture ref(seq.frames[0]);
    for (std::size_t fi = 1; fi < seq.frames.size(); ++fi) {
      const Frame& src = seq.frames[fi];
      FrameState st(src.width(), src.height(), true, qp, &ref);
      MotionEstimator me(src, ref, cfg.search_range, cfg.lambda_mv());
      for (int my = 0; my < st.mbs_y; ++my)
        for (int mx = 0; mx < st.mbs_x; ++mx) {
          const MbContext ctx{src, &seq.frames[fi - 1], st, &me, mx, my, cfg};
          const auto fast = decide_mode_fast(ctx);
          const auto full = decide_mode_full(ctx);
          CHECK(full.j_rd <= fast.j_rd * (1.0 + 1e-12));
          if (fast.traced(Step::EarlySkip)) CHECK(fast.info.type == MbType::Skip);
          if (fast.traced(Step::CandidateRdo)) {
            CHECK(!fast.candidates.empty());
            CHECK(fast.candidates.size() <= 3);
            CHECK(std::find(fast.candidates.begin(), fast.candidates.end(), fast.info.type) != fast.candidates.end());
          }
          if (fast.traced(Step::InterEliminated))
            for (auto c : fast.candidates) CHECK(is_intra(c));
          if (fast.traced(Step::IntraEliminated))
            for (auto c : fast.candidates) CHECK(is_inter(c));
          if (fast.traced(Step::P8x8Eliminated))
            CHECK(std::find(fast.candidates.begin(), fast.candidates.end(), MbType::P8x8) == fast.candidates.end());
          agree += fast.info.type == full.info.type;
          ++total;
          st.commit(mx, my, fast.info, fast.recon);
        }
    }
  }
  MESSAGE("fast/full mode agreement " << agree << "/" << total);
  CHECK(static_cast<double>(agree) >= 0.7 * static_cast<double>(total));
}

TEST_CASE("encoder and decoder reconstructions are bit identical across GOPs") {
  for (bool keyed : {false, true}) {
    const auto seq = test_sequence(9, keyed);
    for (auto path : {DecisionPath::Fast, DecisionPath::Full}) {
      CodecConfig cfg;
      cfg.qp = 30;
      cfg.gop = 4;
      cfg.search_range = 6;
      EncodeOptions opt;
      opt.path = path;
      const auto enc = encode_sequence(seq, cfg, opt);
      const auto dec = decode_sequence(enc.bitstream);
      REQUIRE(dec.video.frames.size() == seq.frames.size());
      for (std::size_t i = 0; i < seq.frames.size(); ++i) CHECK(dec.video.frames[i] == enc.recon.frames[i]);
      CHECK(dec.header.gop == 4);
      CHECK(dec.header.qp == 30);
      CHECK(enc.stats[0].intra);
      CHECK(enc.stats[4].intra);
      CHECK_FALSE(enc.stats[5].intra);
      const auto again = encode_sequence(seq, cfg, opt);
      CHECK(again.bitstream == enc.bitstream);
    }
  }
}

TEST_CASE("single intra frame roundtrip and stats csv") {
  const auto seq = test_sequence(1, false);
  const auto enc = encode_sequence(seq, {});
  CHECK(decode_sequence(enc.bitstream).video.frames[0] == enc.recon.frames[0]);
  std::ostringstream csv;
  write_stats_csv(csv, enc.stats);
  CHECK(csv.str().rfind("frame,type,bits,psnr_y,md_time_us,satd_calls,SKIP", 0) == 0);
  CHECK(enc.stats[0].md_time_us == 0);
}

TEST_CASE("encoder rejects bad input") {
  media::VideoSequence empty;
  CHECK_THROWS_AS(encode_sequence(empty, {}), InvalidArgument);
  CodecConfig c;
  c.gop = 0;
  CHECK_THROWS_AS(encode_sequence(test_sequence(1, false), c), InvalidArgument);
}

TEST_CASE("decoder: truncation, corruption and fuzzing") {
  const auto seq = test_sequence(5, true);
  CodecConfig cfg;
  cfg.gop = 3;
  cfg.search_range = 4;
  const auto enc = encode_sequence(seq, cfg);
  const auto& bs = enc.bitstream;
  for (std::size_t n : {std::size_t{0}, std::size_t{5}, std::size_t{30}, std::size_t{40}, bs.size() / 2, bs.size() - 1}) {
    std::vector<std::uint8_t> t(bs.begin(), bs.begin() + static_cast<std::ptrdiff_t>(n));
    CHECK_THROWS_AS(decode_sequence(t), CorruptStream);
  }
  auto extra = bs;
  extra.push_back(0);
  CHECK_THROWS_AS(decode_sequence(extra), CorruptStream);

  std::mt19937 rng(2024);
  int detected = 0, decoded_differently = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto c = bs;
    const int flips = 1 + trial % 4;
    for (int k = 0; k < flips; ++k) {
      const std::size_t pos = rng() % c.size();
      c[pos] = static_cast<std::uint8_t>(c[pos] ^ (1u << (rng() % 8)));
    }
    if (c == bs) continue;
    // with checksums every flip is caught
    CHECK_THROWS_AS(decode_sequence(c), CorruptStream);
    // without them the parser must still fail cleanly or return a sane video
    DecodeOptions loose;
    loose.verify_checksums = false;
    try {
      const auto d = decode_sequence(c, loose);
      for (const auto& f : d.video.frames) CHECK(f.width() % 16 == 0);
      if (d.video.frames != enc.recon.frames) ++decoded_differently;
    } catch (const CorruptStream&) {
      ++detected;
    }
  }
  MESSAGE("unchecked fuzz: " << detected << " rejected, " << decoded_differently << " decoded with a mismatch");
  CHECK(detected > 0);
}

TEST_CASE("beta training rules") {
  CHECK_THROWS_AS(train_beta({}, {28}), InvalidArgument);
  std::vector<BetaSample> never;
  for (int i = 0; i < 50; ++i) never.push_back({28, 100.0 + i, 120.0, false});
  const auto t = train_beta(never, {28});
  for (int qp = 0; qp <= 51; ++qp) CHECK(t.at(qp) == 1.0);

  // P8x8 wins whenever 16x16 is much cheaper: beta must shrink below the ratio of those samples
  std::vector<BetaSample> s;
  for (int i = 0; i < 100; ++i) {
    const double ratio = 0.3 + 0.007 * i;  // 0.3 .. 1.0
    s.push_back({24, ratio * 100.0, 100.0, ratio < 0.6});
  }
  const auto b = train_beta(s, {24});
  CHECK(b.at(24) < 1.0);
  // the target holds at the trained value
  std::size_t sel = 0, p8 = 0;
  for (const auto& x : s)
    if (x.j_16x16 < b.at(24) * x.j_8x8) {
      ++sel;
      p8 += x.best_is_p8x8;
    }
  CHECK(static_cast<double>(p8) <= kBetaMissRate * static_cast<double>(sel));
  CHECK(train_beta(s, {24}) == b);

  const auto m = BetaTable::from_points({{24, 0.8}, {28, 0.6}, {32, 0.9}});
  CHECK(m.at(0) == 0.8);
  CHECK(m.at(30) == 0.8);  // running maximum
  CHECK(m.at(33) == 0.9);
  for (int qp = 1; qp <= 51; ++qp) CHECK(m.at(qp) >= m.at(qp - 1));
  const auto d = BetaTable::trained_default();
  for (int qp = 1; qp <= 51; ++qp) {
    CHECK(d.at(qp) >= d.at(qp - 1));
    CHECK(d.at(qp) > 0.0);
    CHECK(d.at(qp) <= 1.0);
  }
}
