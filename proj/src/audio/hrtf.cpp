#include "item/audio/hrtf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace item::audio {

double SphericalHeadHrtf::incidence_deg(const Direction& d, Ear ear) {
  const double lateral = steering_vector(d)[2];  // y: towards the left ear
  const double c = std::clamp(ear == Ear::Left ? lateral : -lateral, -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

double SphericalHeadHrtf::path_delay_s(const Direction& d, Ear ear) const {
  const double g = incidence_deg(d, ear) * std::numbers::pi / 180.0;
  const double a_over_c = p_.head_radius_m / p_.speed_of_sound;
  return g < std::numbers::pi / 2 ? -a_over_c * std::cos(g) : a_over_c * (g - std::numbers::pi / 2);
}

std::complex<double> SphericalHeadHrtf::response(const Direction& d, double freq_hz, Ear ear) const {
  const double g = incidence_deg(d, ear);
  const double alpha = (1.0 + p_.alpha_min / 2.0) + (1.0 - p_.alpha_min / 2.0) * std::cos(g / p_.theta_min_deg * std::numbers::pi);
  const double w = 2.0 * std::numbers::pi * freq_hz;
  const double w0 = p_.speed_of_sound / p_.head_radius_m;
  const std::complex<double> j(0.0, 1.0);
  const std::complex<double> shadow = (1.0 + j * alpha * w / (2.0 * w0)) / (1.0 + j * w / (2.0 * w0));
  return shadow * std::exp(-j * w * (path_delay_s(d, ear) + p_.bulk_delay_s));
}

std::complex<double> MirroredHrtf::response(const Direction& d, double freq_hz, Ear ear) const {
  Direction m = d;
  m.phi = d.phi == 0.0 ? 0.0 : 360.0 - d.phi;
  return inner_.response(m, freq_hz, ear);
}

}  // namespace item::audio
