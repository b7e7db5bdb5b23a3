#pragma once

#include <vector>

#include <Eigen/Dense>

#include "item/audio/capture.hpp"

namespace item::audio {

inline constexpr int kOneSidedBins = kBlockSamples / 2 + 1;

/// Per-bin sample covariance of the 4 channels, before loading, plus the
/// diagonal loading of each bin.
struct CovarianceStack {
  std::vector<Eigen::Matrix4cd> r;
  std::vector<double> loading;

  Eigen::Matrix4cd loaded(int bin) const { return r[bin] + loading[bin] * Eigen::Matrix4cd::Identity(); }
};

/// Smallest loading used when a bin carries no energy at all.
inline constexpr double kLoadingFloor = 1e-12;

/// 30 Hamming-windowed 512-sample blocks, one-sided 512-point transforms,
/// R(k) = (1/30) sum X_b(k) X_b(k)^H, loading max(1e-3 * trace / 4, floor).
CovarianceStack estimate_covariance(const ArrayFrame& frame);

}  // namespace item::audio
