#include "item/audio/capture.hpp"

#include <cmath>
#include <numbers>

#include "item/audio/fft.hpp"
#include "item/common/error.hpp"
#include "item/common/random.hpp"

namespace item::audio {
namespace {

int fft_length_for(int n) {
  int m = 2;
  while (m < n) m *= 2;
  return m;
}

// First `out_len` samples of the linear convolution of x with each row of h.
Eigen::MatrixXd convolve_rows(const std::vector<double>& x, const Eigen::MatrixXd& h, int out_len) {
  const int n = fft_length_for(static_cast<int>(x.size()) + static_cast<int>(h.cols()) - 1);
  RealFft fft(n);
  std::vector<double> buf(static_cast<std::size_t>(n), 0.0);
  std::vector<std::complex<double>> xs(static_cast<std::size_t>(n / 2 + 1));
  std::vector<std::complex<double>> hs(xs.size());
  std::copy(x.begin(), x.end(), buf.begin());
  fft.forward(buf.data(), xs.data());
  Eigen::MatrixXd out(h.rows(), out_len);
  for (Eigen::Index c = 0; c < h.rows(); ++c) {
    std::fill(buf.begin(), buf.end(), 0.0);
    for (Eigen::Index t = 0; t < h.cols(); ++t) buf[static_cast<std::size_t>(t)] = h(c, t);
    fft.forward(buf.data(), hs.data());
    for (std::size_t k = 0; k < hs.size(); ++k) hs[k] *= xs[k];
    fft.inverse(hs.data(), buf.data());
    for (int t = 0; t < out_len; ++t) out(c, t) = buf[static_cast<std::size_t>(t)] / n;
  }
  return out;
}

Direction random_direction(Rng& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double theta = std::acos(z) * 180.0 / std::numbers::pi;
  const double phi = rng.uniform(0.0, 360.0);
  return {theta, phi >= 360.0 ? 0.0 : phi};
}

}  // namespace

void ArrayFrame::validate() const {
  if (samples.rows() != 4 || samples.cols() != kFrameSamples) {
    throw InvalidArgument("array frame: expected 4 channels of 15360 samples");
  }
  if (sample_rate <= 0) throw InvalidArgument("array frame: sample rate must be positive");
}

int reverb_length(double rt60_ms, int sample_rate) {
  if (rt60_ms <= 0.0) return 0;
  return static_cast<int>(std::ceil(rt60_ms * 1e-3 * sample_rate));
}

Eigen::MatrixXd synth_array_capture(const std::vector<Source>& sources, const CaptureParams& params) {
  const bool noisy = std::isfinite(params.snr_db);
  if (sources.empty()) {
    if (noisy) throw InvalidArgument("capture: finite SNR needs at least one source");
    return Eigen::MatrixXd(4, 0);
  }
  if (params.rt60_ms < 0.0 || std::isnan(params.rt60_ms)) throw InvalidArgument("capture: negative rt60");
  if (params.sample_rate <= 0) throw InvalidArgument("capture: sample rate must be positive");
  const std::size_t len = sources.front().signal.size();
  for (const auto& s : sources) {
    if (s.signal.size() != len) throw InvalidArgument("capture: source signals differ in length");
    validate(s.direction);
  }
  const int n = static_cast<int>(len);

  Rng reverb_rng(params.seed);
  Rng noise_rng(params.seed ^ 0x5851F42D4C957F2DULL);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(4, n);
  const int tail = reverb_length(params.rt60_ms, params.sample_rate);
  for (const auto& s : sources) {
    const Eigen::Vector4d a = steering_vector(s.direction);
    if (tail == 0) {
      for (int t = 0; t < n; ++t)
        for (int c = 0; c < 4; ++c) out(c, t) += a[c] * s.signal[static_cast<std::size_t>(t)];
      continue;
    }
    // direct path at tap 0, then decaying reflections from random directions
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(4, tail + 1);
    h.col(0) = a;
    const double rt60_s = params.rt60_ms * 1e-3;
    double energy = 0.0;
    for (int t = 1; t <= tail; ++t) {
      const double env = std::pow(10.0, -3.0 * t / (rt60_s * params.sample_rate));
      const double v = env * reverb_rng.normal();
      h.col(t) = v * steering_vector(random_direction(reverb_rng));
      energy += v * v;
    }
    const double critical = 0.057 * std::sqrt(params.room_volume_m3 / rt60_s);
    const double drr = (critical / params.source_distance_m) * (critical / params.source_distance_m);
    if (energy > 0.0) h.rightCols(tail) *= std::sqrt(1.0 / (drr * energy));
    out += convolve_rows(s.signal, h, n);
  }
  if (noisy) {
    const double p_o = out.row(0).squaredNorm() / n;
    const double sigma = std::sqrt(p_o / std::pow(10.0, params.snr_db / 10.0));
    for (int t = 0; t < n; ++t)
      for (int c = 0; c < 4; ++c) out(c, t) += sigma * noise_rng.normal();
  }
  return out;
}

std::vector<double> speech_like(int samples, std::uint64_t seed, int sample_rate) {
  if (samples < 1) throw InvalidArgument("speech_like: need at least one sample");
  Rng rng(seed);
  const double fs = sample_rate;
  const double hp = std::exp(-2.0 * std::numbers::pi * 100.0 / fs);
  const double lp = std::exp(-2.0 * std::numbers::pi * 4000.0 / fs);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  std::vector<double> out(static_cast<std::size_t>(samples));
  double prev_in = 0.0, hp_state = 0.0, lp1 = 0.0, lp2 = 0.0;
  for (int t = 0; t < samples; ++t) {
    const double w = rng.normal();
    hp_state = hp * (hp_state + w - prev_in);
    prev_in = w;
    lp1 = (1.0 - lp) * hp_state + lp * lp1;
    lp2 = (1.0 - lp) * lp1 + lp * lp2;
    const double env = 0.6 + 0.4 * std::sin(2.0 * std::numbers::pi * 4.0 * t / fs + phase);
    out[static_cast<std::size_t>(t)] = env * lp2;
  }
  double p = 0.0;
  for (double v : out) p += v * v;
  p /= samples;
  if (p > 0.0)
    for (double& v : out) v /= std::sqrt(p);
  return out;
}

}  // namespace item::audio
