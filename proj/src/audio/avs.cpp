#include "item/audio/avs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "item/common/error.hpp"

namespace item::audio {
namespace {

// Exact at multiples of 90 degrees so poles and axes have clean zeros.
double sin_deg(double d) {
  const double q = d / 90.0;
  if (q == std::round(q)) {
    const int k = ((static_cast<int>(std::lround(q)) % 4) + 4) % 4;
    return k == 1 ? 1.0 : (k == 3 ? -1.0 : 0.0);
  }
  return std::sin(d * std::numbers::pi / 180.0);
}

double cos_deg(double d) { return sin_deg(d + 90.0); }

int steps_of(double resolution, double span) {
  if (!(resolution > 0.0)) throw InvalidArgument("steering grid: resolution must be positive");
  const double n = span / resolution;
  if (std::abs(n - std::round(n)) > 1e-9) throw InvalidArgument("steering grid: resolution must divide 180");
  return static_cast<int>(std::lround(n));
}

}  // namespace

void validate(const Direction& d) {
  if (!(d.theta >= 0.0 && d.theta <= 180.0)) throw InvalidArgument("direction: inclination outside [0, 180]");
  if (!(d.phi >= 0.0 && d.phi < 360.0)) throw InvalidArgument("direction: azimuth outside [0, 360)");
}

double angular_distance(const Direction& a, const Direction& b) {
  const Eigen::Vector4d u = steering_vector(a);
  const Eigen::Vector4d v = steering_vector(b);
  const double c = std::clamp(u.tail<3>().dot(v.tail<3>()), -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

Eigen::Vector4d steering_vector(const Direction& d) {
  const double st = sin_deg(d.theta);
  return {1.0, st * cos_deg(d.phi), st * sin_deg(d.phi), cos_deg(d.theta)};
}

std::vector<Direction> direction_grid(double resolution_deg) {
  const int nt = steps_of(resolution_deg, 180.0);
  const int np = 2 * nt;
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>((nt + 1) * np));
  for (int i = 0; i <= nt; ++i)
    for (int j = 0; j < np; ++j) out.push_back({i * resolution_deg, j * resolution_deg});
  return out;
}

SteeringField SteeringField::analytic(double resolution_deg) {
  SteeringField f;
  f.resolution_ = resolution_deg;
  f.directions_ = direction_grid(resolution_deg);
  for (const auto& d : f.directions_) f.vectors_.push_back(steering_vector(d).cast<std::complex<double>>());
  return f;
}

SteeringField SteeringField::calibrated(double resolution_deg, int bins, std::vector<Eigen::Vector4cd> vectors) {
  SteeringField f;
  f.resolution_ = resolution_deg;
  f.directions_ = direction_grid(resolution_deg);
  if (bins < 0) throw InvalidArgument("steering field: negative bin count");
  const std::size_t per = bins == 0 ? 1 : static_cast<std::size_t>(bins);
  if (vectors.size() != f.directions_.size() * per) {
    throw InvalidArgument("steering field: vectors do not cover the direction grid");
  }
  f.bins_ = bins;
  f.vectors_ = std::move(vectors);
  f.real_flat_ = bins == 0;
  for (const auto& v : f.vectors_)
    if (v.imag().cwiseAbs().maxCoeff() != 0.0) f.real_flat_ = false;
  return f;
}

Eigen::Vector4cd SteeringField::vector(std::size_t dir, int bin) const {
  if (bins_ == 0) return vectors_[dir];
  if (bin < 0 || bin >= bins_) throw InvalidArgument("steering field: bin out of range");
  return vectors_[dir * static_cast<std::size_t>(bins_) + static_cast<std::size_t>(bin)];
}

}  // namespace item::audio
