#include "item/audio/fft.hpp"

#include <algorithm>

#include <fftw3.h>

#include "item/common/error.hpp"

namespace item::audio {

struct RealFft::Impl {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  ~Impl() {
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
    fftw_free(real);
    fftw_free(spec);
  }
};

RealFft::RealFft(int n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n < 2) throw InvalidArgument("fft: length must be at least 2");
  impl_->real = fftw_alloc_real(static_cast<std::size_t>(n));
  impl_->spec = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
  impl_->fwd = fftw_plan_dft_r2c_1d(n, impl_->real, impl_->spec, FFTW_ESTIMATE);
  impl_->inv = fftw_plan_dft_c2r_1d(n, impl_->spec, impl_->real, FFTW_ESTIMATE);
}

RealFft::~RealFft() = default;

void RealFft::forward(const double* in, std::complex<double>* out) {
  std::copy(in, in + n_, impl_->real);
  fftw_execute(impl_->fwd);
  for (int k = 0; k <= n_ / 2; ++k) out[k] = {impl_->spec[k][0], impl_->spec[k][1]};
}

void RealFft::inverse(const std::complex<double>* in, double* out) {
  for (int k = 0; k <= n_ / 2; ++k) {
    impl_->spec[k][0] = in[k].real();
    impl_->spec[k][1] = in[k].imag();
  }
  fftw_execute(impl_->inv);
  std::copy(impl_->real, impl_->real + n_, out);
}

}  // namespace item::audio
