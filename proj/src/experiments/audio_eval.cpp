#include "item/experiments/audio_eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <set>

#include "item/audio/capture.hpp"
#include "item/audio/doa.hpp"
#include "item/common/error.hpp"
#include "item/common/random.hpp"

namespace item::experiments {

void AudioEvalConfig::validate() const {
  if (snr_db.empty() || rt60_ms.empty()) throw InvalidArgument("audio eval: empty condition list");
  if (directions < 1 || realizations < 2) throw InvalidArgument("audio eval: needs >= 1 direction and >= 2 realizations");
  for (double r : rt60_ms)
    if (r < 0.0) throw InvalidArgument("audio eval: negative rt60");
}

std::vector<audio::Direction> test_directions(int count, double res, std::uint64_t seed) {
  Rng rng(seed);
  // keep clear of the poles, where azimuth is meaningless
  const int t_lo = static_cast<int>(std::ceil(20.0 / res));
  const int t_hi = static_cast<int>(std::floor(160.0 / res));
  const int p_n = static_cast<int>(std::lround(360.0 / res));
  std::set<std::pair<int, int>> seen;
  std::vector<audio::Direction> out;
  while (static_cast<int>(out.size()) < count) {
    const int ti = rng.uniform_int(t_lo, t_hi);
    const int pi = rng.uniform_int(0, p_n - 1);
    if (!seen.insert({ti, pi}).second) continue;
    out.push_back({ti * res, pi * res});
  }
  return out;
}

namespace {

Eigen::Vector3d unit(const audio::Direction& d) {
  const Eigen::Vector4d a = audio::steering_vector(d);
  return {a[1], a[2], a[3]};
}

audio::Direction from_unit(const Eigen::Vector3d& v) {
  const Eigen::Vector3d u = v.normalized();
  const double deg = 180.0 / std::numbers::pi;
  double phi = std::atan2(u.y(), u.x()) * deg;
  if (phi < 0.0) phi += 360.0;
  if (phi >= 360.0) phi -= 360.0;
  return {std::acos(std::clamp(u.z(), -1.0, 1.0)) * deg, phi};
}

}  // namespace

std::vector<ConditionRow> run_audio_eval(const AudioEvalConfig& cfg) {
  cfg.validate();
  const auto field = audio::SteeringField::analytic(cfg.resolution_deg);
  const auto dirs = test_directions(cfg.directions, cfg.resolution_deg, cfg.seed);
  std::vector<ConditionRow> rows;
  std::uint64_t ci = 0;
  for (double snr : cfg.snr_db) {
    for (double rt60 : cfg.rt60_ms) {
      ConditionRow row;
      row.snr_db = snr;
      row.rt60_ms = rt60;
      double err_sum = 0.0;
      for (std::size_t di = 0; di < dirs.size(); ++di) {
        std::vector<audio::Direction> est;
        std::vector<double> errs;
        Eigen::Vector3d mean = Eigen::Vector3d::Zero();
        for (int r = 0; r < cfg.realizations; ++r) {
          const std::uint64_t s = cfg.seed * 1000003ULL + ci * 10007ULL + di * 101ULL + static_cast<std::uint64_t>(r);
          audio::CaptureParams p;
          p.snr_db = snr;
          p.rt60_ms = rt60;
          p.seed = s;
          audio::ArrayFrame frame;
          frame.samples = audio::synth_array_capture({{dirs[di], audio::speech_like(audio::kFrameSamples, s ^ 0x5eedULL)}}, p);
          const auto d = audio::doa_estimate(frame, field).direction;
          est.push_back(d);
          errs.push_back(audio::angular_distance(d, dirs[di]));
          mean += unit(d);
        }
        AngleStats a;
        a.truth = dirs[di];
        const audio::Direction m = from_unit(mean);
        a.mean_theta = m.theta;
        a.mean_phi = m.phi;
        double ss = 0.0;
        for (std::size_t i = 0; i < est.size(); ++i) {
          const double dm = audio::angular_distance(est[i], m);
          ss += dm * dm;
          a.mean_error += errs[i];
          a.max_error = std::max(a.max_error, errs[i]);
        }
        a.std_error = std::sqrt(ss / static_cast<double>(est.size() - 1));
        a.mean_error /= static_cast<double>(est.size());
        err_sum += a.mean_error;
        row.max_std = std::max(row.max_std, a.std_error);
        row.angles.push_back(a);
      }
      row.mean_error = err_sum / static_cast<double>(dirs.size());
      rows.push_back(std::move(row));
      ++ci;
    }
  }
  return rows;
}

void write_audio_csv(std::ostream& out, const std::vector<ConditionRow>& rows) {
  auto f = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  out << "snr_db,rt60_ms,mean_error,max_std";
  if (!rows.empty())
    for (std::size_t i = 0; i < rows.front().angles.size(); ++i)
      out << ",theta" << i << ",phi" << i << ",mean_theta" << i << ",mean_phi" << i << ",std" << i;
  out << '\n';
  for (const auto& r : rows) {
    out << f(r.snr_db) << ',' << f(r.rt60_ms) << ',' << f(r.mean_error) << ',' << f(r.max_std);
    for (const auto& a : r.angles)
      out << ',' << f(a.truth.theta) << ',' << f(a.truth.phi) << ',' << f(a.mean_theta) << ',' << f(a.mean_phi) << ','
          << f(a.std_error);
    out << '\n';
  }
}

}  // namespace item::experiments
