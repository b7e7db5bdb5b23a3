#include "item/session/latency.hpp"

#include <algorithm>

#include "item/common/error.hpp"
#include "item/common/random.hpp"

namespace item::session {

LatencyModel LatencyModel::conferencing_default() {
  return {{{"cutout", 38.0, 54.0}, {"codec", 24.0, 38.0}, {"network", 28.0, 43.0}, {"render", 12.0, 30.0}}};
}

void LatencyModel::validate() const {
  if (stages.empty()) throw InvalidArgument("latency: model has no stages");
  for (const auto& s : stages)
    if (!(s.min_ms <= s.max_ms) || s.min_ms < 0.0) throw InvalidArgument("latency: bad range for stage " + s.name);
}

LatencyBounds analytic_bounds(const LatencyModel& m) {
  m.validate();
  LatencyBounds b;
  for (const auto& s : m.stages) {
    b.min_ms += s.min_ms;
    b.max_ms += s.max_ms;
  }
  return b;
}

LatencyStats simulate_latency(const LatencyModel& m, std::size_t trials, std::uint64_t seed, bool keep_samples) {
  if (trials < 1) throw InvalidArgument("latency: trials must be >= 1");
  LatencyStats st;
  st.bounds = analytic_bounds(m);
  st.trials = trials;
  Rng rng(seed);
  double sum = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    double total = 0.0;
    for (const auto& s : m.stages) total += rng.uniform(s.min_ms, s.max_ms);
    if (i == 0 || total < st.min_ms) st.min_ms = total;
    if (i == 0 || total > st.max_ms) st.max_ms = total;
    if (total < st.bounds.min_ms || total > st.bounds.max_ms) ++st.out_of_bounds;
    sum += total;
    if (keep_samples) st.samples.push_back(total);
  }
  st.mean_ms = sum / static_cast<double>(trials);
  return st;
}

}  // namespace item::session
