#include "item/audio/binaural.hpp"

#include "item/audio/fft.hpp"
#include "item/common/error.hpp"

namespace item::audio {
namespace {

constexpr int kHalf = kDesignBins / 2;

void filters_from_gains(BinauralFilterBank& bank) {
  RealFft fft(kDesignBins);
  std::vector<std::complex<double>> spec(kHalf + 1);
  std::vector<double> taps(kDesignBins);
  for (int e = 0; e < 2; ++e) {
    for (int c = 0; c < 4; ++c) {
      for (int k = 0; k <= kHalf; ++k) spec[static_cast<std::size_t>(k)] = std::conj(bank.gains[e][static_cast<std::size_t>(k)][c]);
      fft.inverse(spec.data(), taps.data());
      for (int n = 0; n < kFilterTaps; ++n) bank.filters[e](c, n) = taps[static_cast<std::size_t>(n)] / kDesignBins;
    }
  }
}

void mirror_bins(std::vector<Eigen::Vector4cd>& g) {
  for (int k = kHalf + 1; k < kDesignBins; ++k) g[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(kDesignBins - k)].conjugate();
}

}  // namespace

BinauralFilterBank BinauralFilterBank::identity(int sample_rate) {
  BinauralFilterBank b;
  b.sample_rate = sample_rate;
  for (auto& g : b.gains) g.assign(kDesignBins, Eigen::Vector4cd(1.0, 0.0, 0.0, 0.0));
  b.loading.assign(kHalf + 1, 0.0);
  filters_from_gains(b);
  return b;
}

Eigen::MatrixXcd steering_matrix(const SteeringField& field, int bin) {
  Eigen::MatrixXcd a(4, static_cast<Eigen::Index>(field.size()));
  for (std::size_t d = 0; d < field.size(); ++d) a.col(static_cast<Eigen::Index>(d)) = field.vector(d, bin);
  return a;
}

Eigen::VectorXcd ear_targets(const HrtfProvider& hrtf, const SteeringField& field, int bin, Ear ear, int sample_rate) {
  const double f = static_cast<double>(bin) * sample_rate / kDesignBins;
  Eigen::VectorXcd h(static_cast<Eigen::Index>(field.size()));
  for (std::size_t d = 0; d < field.size(); ++d) h[static_cast<Eigen::Index>(d)] = hrtf.response(field.directions()[d], f, ear);
  if (bin == 0 || bin == kHalf) h = h.real().cast<std::complex<double>>();
  return h;
}

BinauralFilterBank design_binaural_filters(const HrtfProvider& hrtf, const SteeringField& field, int sample_rate) {
  if (sample_rate <= 0) throw InvalidArgument("binaural design: sample rate must be positive");
  if (field.bins() > 0 && field.bins() < kHalf + 1) throw InvalidArgument("binaural design: steering field lacks bins");
  BinauralFilterBank bank;
  bank.sample_rate = sample_rate;
  for (auto& g : bank.gains) g.assign(kDesignBins, Eigen::Vector4cd::Zero());
  bank.loading.assign(kHalf + 1, 0.0);
  Eigen::MatrixXcd a;
  Eigen::Matrix4cd m;
  for (int k = 0; k <= kHalf; ++k) {
    if (k == 0 || field.bins() > 0) {
      a = steering_matrix(field, k);
      m = a * a.adjoint();
    }
    const double delta = kDesignLoading * m.trace().real() / 4.0;
    bank.loading[static_cast<std::size_t>(k)] = delta;
    const Eigen::Matrix4cd loaded = m + delta * Eigen::Matrix4cd::Identity();
    const Eigen::LLT<Eigen::Matrix4cd> llt(loaded);
    for (int e = 0; e < 2; ++e) {
      const Eigen::VectorXcd h = ear_targets(hrtf, field, k, static_cast<Ear>(e), sample_rate);
      Eigen::Vector4cd g = llt.solve(a * h.conjugate());
      if (k == 0 || k == kHalf) g = g.real().cast<std::complex<double>>();
      bank.gains[e][static_cast<std::size_t>(k)] = g;
    }
  }
  for (auto& g : bank.gains) mirror_bins(g);
  filters_from_gains(bank);
  return bank;
}

Eigen::MatrixXd render_binaural(const Eigen::MatrixXd& signal, const BinauralFilterBank& bank, int fft_size) {
  if (signal.rows() != 4 || signal.cols() < 1) throw InvalidArgument("render: expected a non-empty 4-channel signal");
  if (fft_size < 2 * kFilterTaps - 1) throw InvalidArgument("render: transform length must be at least 1023");
  constexpr int hop = kFilterTaps;
  const Eigen::Index len = signal.cols();
  const Eigen::Index out_len = len + kFilterTaps - 1;
  const int bins = fft_size / 2 + 1;

  RealFft fft(fft_size);
  std::vector<double> buf(static_cast<std::size_t>(fft_size));
  // filter spectra [ear][channel]
  std::vector<std::complex<double>> w(static_cast<std::size_t>(2 * 4 * bins));
  for (int e = 0; e < 2; ++e) {
    for (int c = 0; c < 4; ++c) {
      std::fill(buf.begin(), buf.end(), 0.0);
      for (int n = 0; n < kFilterTaps; ++n) buf[static_cast<std::size_t>(n)] = bank.filters[e](c, n);
      fft.forward(buf.data(), w.data() + static_cast<std::size_t>((e * 4 + c) * bins));
    }
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2, out_len);
  std::vector<std::complex<double>> xs(static_cast<std::size_t>(4 * bins));
  std::vector<std::complex<double>> ys(static_cast<std::size_t>(bins));
  for (Eigen::Index start = 0; start < len; start += hop) {
    const Eigen::Index seg = std::min<Eigen::Index>(hop, len - start);
    for (int c = 0; c < 4; ++c) {
      std::fill(buf.begin(), buf.end(), 0.0);
      for (Eigen::Index n = 0; n < seg; ++n) buf[static_cast<std::size_t>(n)] = signal(c, start + n);
      fft.forward(buf.data(), xs.data() + static_cast<std::size_t>(c * bins));
    }
    for (int e = 0; e < 2; ++e) {
      std::fill(ys.begin(), ys.end(), std::complex<double>{});
      for (int c = 0; c < 4; ++c) {
        const auto* wc = w.data() + static_cast<std::size_t>((e * 4 + c) * bins);
        const auto* xc = xs.data() + static_cast<std::size_t>(c * bins);
        for (int k = 0; k < bins; ++k) ys[static_cast<std::size_t>(k)] += wc[k] * xc[k];
      }
      fft.inverse(ys.data(), buf.data());
      const Eigen::Index n_out = std::min<Eigen::Index>(seg + kFilterTaps - 1, out_len - start);
      for (Eigen::Index n = 0; n < n_out; ++n) out(e, start + n) += buf[static_cast<std::size_t>(n)] / fft_size;
    }
  }
  return out;
}

}  // namespace item::audio
