#include "item/audio/covariance.hpp"

#include <cmath>
#include <numbers>

#include "item/audio/fft.hpp"

namespace item::audio {

CovarianceStack estimate_covariance(const ArrayFrame& frame) {
  frame.validate();
  std::vector<double> window(kBlockSamples);
  for (int n = 0; n < kBlockSamples; ++n)
    window[static_cast<std::size_t>(n)] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / (kBlockSamples - 1));

  CovarianceStack cov;
  cov.r.assign(kOneSidedBins, Eigen::Matrix4cd::Zero());
  RealFft fft(kBlockSamples);
  std::vector<double> buf(kBlockSamples);
  std::vector<std::vector<std::complex<double>>> spec(4, std::vector<std::complex<double>>(kOneSidedBins));
  for (int b = 0; b < kBlocksPerFrame; ++b) {
    for (int c = 0; c < 4; ++c) {
      for (int n = 0; n < kBlockSamples; ++n)
        buf[static_cast<std::size_t>(n)] = window[static_cast<std::size_t>(n)] * frame.samples(c, b * kBlockSamples + n);
      fft.forward(buf.data(), spec[static_cast<std::size_t>(c)].data());
    }
    for (int k = 0; k < kOneSidedBins; ++k) {
      Eigen::Vector4cd x;
      for (int c = 0; c < 4; ++c) x[c] = spec[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
      cov.r[static_cast<std::size_t>(k)] += x * x.adjoint();
    }
  }
  cov.loading.resize(kOneSidedBins);
  for (int k = 0; k < kOneSidedBins; ++k) {
    auto& r = cov.r[static_cast<std::size_t>(k)];
    r /= static_cast<double>(kBlocksPerFrame);
    r = 0.5 * (r + r.adjoint()).eval();
    cov.loading[static_cast<std::size_t>(k)] = std::max(1e-3 * r.trace().real() / 4.0, kLoadingFloor);
  }
  return cov;
}

}  // namespace item::audio
