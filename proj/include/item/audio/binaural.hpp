#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "item/audio/avs.hpp"
#include "item/audio/hrtf.hpp"

namespace item::audio {

inline constexpr int kFilterTaps = 512;
inline constexpr int kDesignBins = 512;

/// Per ear: the 512 designed gain vectors g(k) and the 4 real time-domain
/// filters. An ear signal is y = g^H x per bin, so filter c has frequency
/// response conj(g_c(k)).
struct BinauralFilterBank {
  std::array<std::vector<Eigen::Vector4cd>, 2> gains;
  /// filters[ear](c, n)
  std::array<Eigen::Matrix<double, 4, kFilterTaps>, 2> filters;
  /// Diagonal loading used per bin.
  std::vector<double> loading;
  int sample_rate = 16000;

  /// Unit impulse on channel O for both ears (g = e1 at every bin).
  static BinauralFilterBank identity(int sample_rate = 16000);
};

/// Relative loading for the normal equations, times trace / 4.
inline constexpr double kDesignLoading = 1e-12;

/// MMSE design: g(k) = (A A^H + delta I)^-1 A h*(k) with A the grid steering
/// vectors and h the ear responses over the grid. Bins 1..255 are solved,
/// bins 0 and 256 use the real part of the target so the filters stay
/// real, and bins 257..511 are conjugate mirrors.
BinauralFilterBank design_binaural_filters(const HrtfProvider& hrtf, const SteeringField& field,
                                           int sample_rate = 16000);

/// Steering matrix A (4 x directions) at one bin.
Eigen::MatrixXcd steering_matrix(const SteeringField& field, int bin);
/// Ear targets h over the grid at one bin.
Eigen::VectorXcd ear_targets(const HrtfProvider& hrtf, const SteeringField& field, int bin, Ear ear, int sample_rate);

/// Overlap-add FFT convolution of the 4-channel signal with the bank, hop
/// 512, transform length `fft_size` (>= 1023; 1024 by default, 1535 mirrors
/// the linear-convolution length). Output: 2 x (length + 511).
Eigen::MatrixXd render_binaural(const Eigen::MatrixXd& signal, const BinauralFilterBank& bank, int fft_size = 1024);

}  // namespace item::audio
