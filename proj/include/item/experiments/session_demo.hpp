#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "item/session/scenario.hpp"

namespace item::experiments {

struct SessionDemoConfig {
  int participants = 6;
  session::TopologySpec topology;
  double kbps = 500.0;
  int sweep_min = 3;
  int sweep_max = 10;
  std::size_t latency_trials = 100000;
  std::uint64_t seed = 1;
  /// Optional JSON-lines script; replaces the generated growing session.
  std::string script;

  void validate() const;
};

/// Report: latency bounds and sampled statistics, the bandwidth timeline of
/// the scenario, and a stream-count sweep over N for every topology.
nlohmann::json run_session_demo(const SessionDemoConfig& config);

}  // namespace item::experiments
