#include "item/audio/doa.hpp"

#include <cmath>

#include "item/common/error.hpp"

namespace item::audio {

Band band_from_hz(double low_hz, int sample_rate) {
  if (sample_rate <= 0 || low_hz < 0.0) throw InvalidArgument("band: bad frequency");
  const int lo = static_cast<int>(std::ceil(low_hz * kBlockSamples / sample_rate - 1e-9));
  if (lo > kOneSidedBins - 1) throw InvalidArgument("band: empty band");
  return {lo, kOneSidedBins - 1};
}

std::vector<double> capon_spectrum(const CovarianceStack& cov, const SteeringField& field, Band band) {
  if (band.lo < 0 || band.hi >= static_cast<int>(cov.r.size()) || band.lo > band.hi) {
    throw InvalidArgument("doa: empty or out-of-range band");
  }
  if (field.bins() > 0 && field.bins() < band.hi + 1) throw InvalidArgument("doa: steering field lacks bins");
  std::vector<double> spec(field.size(), 0.0);
  for (int k = band.lo; k <= band.hi; ++k) {
    const Eigen::Matrix4cd inv = cov.loaded(k).llt().solve(Eigen::Matrix4cd::Identity());
    if (field.real_flat()) {
      // a real: a^H R^-1 a = a^T Re(R^-1) a
      const Eigen::Matrix4d re = 0.5 * (inv.real() + inv.real().transpose());
      for (std::size_t d = 0; d < field.size(); ++d) {
        const Eigen::Vector4d a = field.raw()[d].real();
        spec[d] += 1.0 / a.dot(re * a);
      }
    } else {
      for (std::size_t d = 0; d < field.size(); ++d) {
        const Eigen::Vector4cd a = field.vector(d, k);
        spec[d] += 1.0 / (a.adjoint() * inv * a)(0, 0).real();
      }
    }
  }
  return spec;
}

DoaResult doa_from_covariance(const CovarianceStack& cov, const SteeringField& field, Band band) {
  DoaResult res;
  res.spectrum = capon_spectrum(cov, field, band);
  const auto& dirs = field.directions();
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    const double v = res.spectrum[d];
    const bool better = d == 0 || v > res.peak ||
                        (v == res.peak && (dirs[d].theta < dirs[res.index].theta ||
                                           (dirs[d].theta == dirs[res.index].theta && dirs[d].phi < dirs[res.index].phi)));
    if (better) {
      res.peak = v;
      res.index = d;
    }
  }
  res.direction = dirs[res.index];
  return res;
}

DoaResult doa_estimate(const ArrayFrame& frame, const SteeringField& field, Band band) {
  return doa_from_covariance(estimate_covariance(frame), field, band);
}

}  // namespace item::audio
