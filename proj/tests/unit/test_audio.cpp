#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "item/audio/avs.hpp"
#include "item/audio/binaural.hpp"
#include "item/audio/capture.hpp"
#include "item/audio/covariance.hpp"
#include "item/audio/doa.hpp"
#include "item/audio/g711.hpp"
#include "item/audio/hrtf.hpp"
#include "item/audio/steering_io.hpp"
#include "item/audio/vad.hpp"
#include "item/audio/wav.hpp"
#include "item/common/error.hpp"
#include "item/common/random.hpp"

using namespace item;
using namespace item::audio;

namespace {

Eigen::MatrixXd noise_matrix(int rows, int cols, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = rng.normal();
  return m;
}

ArrayFrame frame_from(const Eigen::MatrixXd& x) {
  ArrayFrame f;
  f.samples = x.leftCols(kFrameSamples);
  return f;
}

double rms(const Eigen::MatrixXd& m) { return std::sqrt(m.squaredNorm() / static_cast<double>(m.size())); }

// y[e][n] = sum_c sum_m h[e](c, m) x[c][n - m]
Eigen::MatrixXd direct_convolution(const Eigen::MatrixXd& x, const BinauralFilterBank& bank) {
  const Eigen::Index len = x.cols();
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(2, len + kFilterTaps - 1);
  for (int e = 0; e < 2; ++e)
    for (int c = 0; c < 4; ++c)
      for (Eigen::Index n = 0; n < len; ++n) {
        const double v = x(c, n);
        if (v == 0.0) continue;
        for (int m = 0; m < kFilterTaps; ++m) y(e, n + m) += bank.filters[e](c, m) * v;
      }
  return y;
}

}  // namespace

TEST_CASE("steering vector closed forms") {
  CHECK(steering_vector({0, 0}) == Eigen::Vector4d(1, 0, 0, 1));
  CHECK(steering_vector({90, 0}) == Eigen::Vector4d(1, 1, 0, 0));
  CHECK(steering_vector({90, 90}) == Eigen::Vector4d(1, 0, 1, 0));
  CHECK(steering_vector({180, 0}) == Eigen::Vector4d(1, 0, 0, -1));
  for (const auto& d : direction_grid(5.0)) CHECK(steering_vector(d).squaredNorm() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(validate(Direction{181, 0}), InvalidArgument);
  CHECK_THROWS_AS(validate(Direction{90, 360}), InvalidArgument);
}

TEST_CASE("direction grid enumeration") {
  const auto g = direction_grid(5.0);
  CHECK(g.size() == 37u * 72u);
  CHECK(g[0] == Direction{0, 0});
  CHECK(g[1] == Direction{0, 5});
  CHECK(g[72] == Direction{5, 0});
  CHECK(g.back() == Direction{180, 355});
  CHECK_THROWS_AS(SteeringField::analytic(7.0), InvalidArgument);
  CHECK(angular_distance({90, 0}, {90, 90}) == doctest::Approx(90.0));
  CHECK(angular_distance({0, 0}, {0, 200}) == doctest::Approx(0.0));
}

TEST_CASE("array capture: projection, zero channels and snr") {
  const auto s = speech_like(kFrameSamples, 4);
  {
    const auto x = synth_array_capture({{{60, 30}, s}}, {});
    for (int n = 0; n < kFrameSamples; ++n) REQUIRE(x(0, n) == s[static_cast<std::size_t>(n)]);
  }
  {
    const auto x = synth_array_capture({{{90, 90}, s}}, {});
    CHECK(x.row(1).cwiseAbs().maxCoeff() == 0.0);
    CHECK(x.row(3).cwiseAbs().maxCoeff() == 0.0);
  }
  {
    CaptureParams p;
    p.snr_db = 20.0;
    p.seed = 9;
    const auto clean = synth_array_capture({{{70, 200}, s}}, {});
    const auto noisy = synth_array_capture({{{70, 200}, s}}, p);
    const double ps = clean.row(0).squaredNorm();
    const double pn = (noisy - clean).row(0).squaredNorm();
    CHECK(std::abs(10.0 * std::log10(ps / pn) - 20.0) <= 0.5);
  }
  CaptureParams p;
  p.snr_db = 10.0;
  CHECK_THROWS_AS(synth_array_capture({}, p), InvalidArgument);
  CHECK(reverb_length(300.0, 16000) >= 4800);
}

TEST_CASE("covariance: hermitian, loading, scaling") {
  const auto x = noise_matrix(4, kFrameSamples, 3);
  const auto c = estimate_covariance(frame_from(x));
  REQUIRE(c.r.size() == static_cast<std::size_t>(kOneSidedBins));
  for (int k = 0; k < kOneSidedBins; ++k) {
    const auto& r = c.r[static_cast<std::size_t>(k)];
    CHECK((r - r.adjoint()).norm() <= 1e-12 * r.norm());
    CHECK(c.loading[static_cast<std::size_t>(k)] == doctest::Approx(1e-3 * r.trace().real() / 4.0));
  }
  const auto c2 = estimate_covariance(frame_from(3.0 * x));
  for (int k : {5, 100, 256}) CHECK((c2.r[k] - 9.0 * c.r[k]).norm() <= 1e-9 * c2.r[k].norm());

  const auto z = estimate_covariance(frame_from(Eigen::MatrixXd::Zero(4, kFrameSamples)));
  for (int k = 0; k < kOneSidedBins; ++k) {
    CHECK(z.r[static_cast<std::size_t>(k)].norm() == 0.0);
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(z.loaded(k));
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
  ArrayFrame bad;
  bad.samples = Eigen::MatrixXd::Zero(4, 100);
  CHECK_THROWS_AS(estimate_covariance(bad), InvalidArgument);
}

TEST_CASE("dominant eigenvector of a single plane wave is its steering vector") {
  const Direction d{45, 120};
  const int bin = 64;  // 2 kHz
  std::vector<double> sine(kFrameSamples);
  for (int n = 0; n < kFrameSamples; ++n)
    sine[static_cast<std::size_t>(n)] = std::sin(2.0 * std::numbers::pi * bin * n / kBlockSamples);
  const auto x = synth_array_capture({{d, sine}}, {});
  const auto c = estimate_covariance(frame_from(x));
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(c.r[bin]);
  const Eigen::Vector4cd v = es.eigenvectors().col(3);
  const Eigen::Vector4cd a = steering_vector(d).cast<std::complex<double>>();
  const double cosine = std::abs(v.dot(a)) / (v.norm() * a.norm());
  CHECK(cosine >= 0.99);
}

TEST_CASE("noiseless on-grid sources are hit exactly") {
  const auto field = SteeringField::analytic(5.0);
  Rng rng(42);
  const auto grid = direction_grid(5.0);
  for (int t = 0; t < 10; ++t) {
    const Direction d = grid[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(grid.size()) - 1))];
    const auto x = synth_array_capture({{d, speech_like(kFrameSamples, 100 + t)}}, {});
    const auto r = doa_estimate(frame_from(x), field);
    if (d.theta == 0.0 || d.theta == 180.0) {
      CHECK(r.direction.theta == d.theta);
    } else {
      CHECK(r.direction == d);
    }
    for (double v : r.spectrum) CHECK(v > 0.0);
    // global scaling leaves the arg-max alone
    const auto r2 = doa_estimate(frame_from(x * 0.01), field);
    CHECK(r2.direction == r.direction);
  }
}

TEST_CASE("doa band handling and tie-breaking") {
  const auto field = SteeringField::analytic(10.0);
  const auto x = noise_matrix(4, kFrameSamples, 8);
  CHECK_THROWS_AS(doa_estimate(frame_from(x), field, Band{20, 10}), InvalidArgument);
  CHECK_THROWS_AS(doa_estimate(frame_from(x), field, Band{0, 400}), InvalidArgument);
  CHECK(band_from_hz(300.0).lo == 10);
  CHECK(band_from_hz(300.0).hi == 256);
  // all-zero input gives a flat spectrum; the first grid direction wins
  const auto z = doa_estimate(frame_from(Eigen::MatrixXd::Zero(4, kFrameSamples)), field);
  CHECK(z.index == 0);
}

TEST_CASE("steering field file roundtrip") {
  const auto path = std::filesystem::temp_directory_path() / "item_test_field.steer";
  const auto f = SteeringField::analytic(10.0);
  save_steering_field(path.string(), f);
  const auto g = load_steering_field(path.string());
  CHECK(g.size() == f.size());
  CHECK(g.raw() == f.raw());
  CHECK(g.real_flat());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_steering_field(path.string()), FormatError);
}

TEST_CASE("energy vad") {
  EnergyVad vad;
  const Eigen::MatrixXd silence = noise_matrix(4, kFrameSamples, 1) * 1e-3;
  vad.calibrate(silence);
  CHECK_FALSE(vad.detect(Eigen::MatrixXd::Zero(4, kFrameSamples)));
  Eigen::MatrixXd tone = Eigen::MatrixXd::Zero(4, kFrameSamples);
  for (int n = 0; n < kFrameSamples; ++n) tone(0, n) = std::sin(0.1 * n);
  CHECK(vad.detect(tone));
  const double floor = vad.noise_floor();
  bool prev = true;
  for (double th : {0.0, 10.0, 30.0, 60.0, 90.0}) {
    const bool now = detect_target(tone, floor, th);
    CHECK((prev || !now));
    prev = now;
  }
}

TEST_CASE("g711 mu-law reference values") {
  CHECK(ulaw_encode(0) == 0xFF);
  CHECK(ulaw_encode(-1) == 0x7F);
  CHECK(ulaw_encode(32767) == 0x80);
  CHECK(ulaw_encode(-32768) == 0x00);
  CHECK(ulaw_decode(0x80) == 32124);
  CHECK(ulaw_decode(0x00) == -32124);
  CHECK(ulaw_decode(0xFF) == 0);
  CHECK(ulaw_decode(0x7F) == 0);
  CHECK(ulaw_decode(0xEF) == 132);
  CHECK(ulaw_decode(0xF0) == 120);
  // every code decodes and re-encodes to itself (except negative zero)
  for (int c = 0; c < 256; ++c) {
    if (c == 0x7F) continue;
    CHECK(ulaw_encode(ulaw_decode(static_cast<std::uint8_t>(c))) == c);
  }
  int prev = 256;
  for (int v = 0; v <= 32767; v += 3) {
    const int code = ulaw_encode(static_cast<std::int16_t>(v));
    CHECK(code <= prev);
    prev = code;
  }
  std::vector<std::int16_t> sine(8000);
  for (int n = 0; n < 8000; ++n) sine[n] = static_cast<std::int16_t>(std::lround(32000.0 * std::sin(2.0 * std::numbers::pi * 1000.0 * n / 8000.0)));
  const auto back = g711_decode(g711_encode(sine));
  double ps = 0, pe = 0;
  for (int n = 0; n < 8000; ++n) {
    ps += double(sine[n]) * sine[n];
    pe += double(sine[n] - back[n]) * (sine[n] - back[n]);
  }
  CHECK(10.0 * std::log10(ps / pe) >= 30.0);
}

TEST_CASE("wav roundtrip") {
  const auto path = std::filesystem::temp_directory_path() / "item_test.wav";
  Eigen::MatrixXd m = noise_matrix(4, 1000, 2) * 0.1;
  write_wav(path.string(), from_matrix(m, 16000));
  const auto w = read_wav(path.string());
  CHECK(w.channels == 4);
  CHECK(w.frames() == 1000);
  CHECK((to_matrix(w) - m).cwiseAbs().maxCoeff() <= 1.0 / 32768.0);
  std::filesystem::remove(path);
}

TEST_CASE("spherical head model") {
  SphericalHeadHrtf h;
  const Direction left{90, 90};
  CHECK(h.path_delay_s(left, Ear::Left) < h.path_delay_s(left, Ear::Right));
  CHECK(std::abs(h.response(left, 4000.0, Ear::Left)) > std::abs(h.response(left, 4000.0, Ear::Right)));
  MirroredHrtf m(h);
  for (const Direction d : {Direction{90, 30}, Direction{40, 300}, Direction{120, 180}})
    for (double f : {0.0, 500.0, 3000.0})
      CHECK(std::abs(m.response(d, f, Ear::Left) - h.response(d, f, Ear::Right)) <= 1e-12);
}

TEST_CASE("binaural design satisfies the normal equations at every bin") {
  const auto field = SteeringField::analytic(10.0);
  SphericalHeadHrtf h;
  const auto bank = design_binaural_filters(h, field);
  for (int e = 0; e < 2; ++e) {
    for (int k = 0; k < kDesignBins; ++k) {
      const int src = k <= kDesignBins / 2 ? k : kDesignBins - k;
      const Eigen::MatrixXcd a = steering_matrix(field, src);
      Eigen::VectorXcd t = ear_targets(h, field, src, static_cast<Ear>(e), 16000);
      Eigen::VectorXcd rhs = a * t.conjugate();
      Eigen::Vector4cd g = bank.gains[e][static_cast<std::size_t>(k)];
      if (k != src) {
        rhs = rhs.conjugate().eval();
        CHECK((g - bank.gains[e][static_cast<std::size_t>(src)].conjugate()).norm() == 0.0);
      }
      const Eigen::Matrix4cd lhs = a * a.adjoint() + bank.loading[static_cast<std::size_t>(src)] * Eigen::Matrix4cd::Identity();
      CHECK((lhs * g - rhs).norm() <= 1e-9 * rhs.norm());
    }
  }
  // real time-domain filters whose spectrum is conj(g)
  for (int k : {0, 7, 200, 256}) {
    std::complex<double> acc = 0.0;
    for (int n = 0; n < kFilterTaps; ++n)
      acc += bank.filters[0](2, n) * std::polar(1.0, -2.0 * std::numbers::pi * k * n / kDesignBins);
    CHECK(std::abs(acc - std::conj(bank.gains[0][static_cast<std::size_t>(k)][2])) <= 1e-9);
  }
}

TEST_CASE("pressure target recovers the unit selector") {
  const auto field = SteeringField::analytic(10.0);
  const auto bank = design_binaural_filters(PressureHrtf{}, field);
  for (int e = 0; e < 2; ++e)
    for (int k = 0; k < kDesignBins; ++k)
      CHECK((bank.gains[e][static_cast<std::size_t>(k)] - Eigen::Vector4cd(1, 0, 0, 0)).norm() <= 1e-9);
}

TEST_CASE("mirrored head model swaps the ears") {
  const auto field = SteeringField::analytic(10.0);
  SphericalHeadHrtf h;
  MirroredHrtf m(h);
  const auto a = design_binaural_filters(h, field);
  const auto b = design_binaural_filters(m, field);
  CHECK((a.filters[0] - b.filters[1]).norm() <= 1e-9 * a.filters[0].norm());
  CHECK((a.filters[1] - b.filters[0]).norm() <= 1e-9 * a.filters[1].norm());
}

TEST_CASE("overlap-add equals direct convolution") {
  const auto field = SteeringField::analytic(10.0);
  const auto bank = design_binaural_filters(SphericalHeadHrtf{}, field);
  const Eigen::MatrixXd x = noise_matrix(4, 16000, 5);
  const Eigen::MatrixXd ref = direct_convolution(x, bank);
  for (int n : {1024, 1535, 2048}) {
    const Eigen::MatrixXd y = render_binaural(x, bank, n);
    REQUIRE(y.cols() == ref.cols());
    CHECK(rms(y - ref) <= 1e-9 * rms(ref));
  }
  CHECK_THROWS_AS(render_binaural(x, bank, 1000), InvalidArgument);
  // linearity
  const Eigen::MatrixXd x2 = noise_matrix(4, 16000, 6);
  const Eigen::MatrixXd lhs = render_binaural(x + x2, bank);
  const Eigen::MatrixXd rhs = render_binaural(x, bank) + render_binaural(x2, bank);
  CHECK(rms(lhs - rhs) <= 1e-9 * rms(lhs));
}

TEST_CASE("identity bank passes channel O through") {
  const Eigen::MatrixXd x = noise_matrix(4, 3000, 7);
  const Eigen::MatrixXd y = render_binaural(x, BinauralFilterBank::identity());
  CHECK(y.cols() == 3000 + 511);
  for (int e = 0; e < 2; ++e) {
    CHECK((y.row(e).head(3000) - x.row(0)).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(y.row(e).tail(511).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("a source on the left is louder in the left ear") {
  const auto field = SteeringField::analytic(5.0);
  const auto bank = design_binaural_filters(SphericalHeadHrtf{}, field);
  for (const Direction d : {Direction{90, 90}, Direction{60, 60}, Direction{120, 135}}) {
    const auto x = synth_array_capture({{d, speech_like(16000, 3)}}, {});
    const auto y = render_binaural(x, bank);
    CHECK(y.row(0).squaredNorm() >= y.row(1).squaredNorm());
  }
  const auto x = synth_array_capture({{{90, 270}, speech_like(16000, 3)}}, {});
  const auto y = render_binaural(x, bank);
  CHECK(y.row(1).squaredNorm() >= y.row(0).squaredNorm());
}
