#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace item::audio {

/// Real-input FFT of a fixed length. forward() yields n/2 + 1 bins of
/// sum x[t] e^{-2 pi i k t / n}; inverse() is the unnormalized inverse
/// (multiply by 1/n yourself). Plans use estimation only, so results are
/// reproducible run to run.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return n_; }
  void forward(const double* in, std::complex<double>* out);
  void inverse(const std::complex<double>* in, double* out);

 private:
  struct Impl;
  int n_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace item::audio
