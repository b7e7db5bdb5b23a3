#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "item/session/latency.hpp"
#include "item/session/nat.hpp"
#include "item/session/scp.hpp"
#include "item/session/topology.hpp"

namespace item::session {

/// One script line. `op` is register, login, create, join, leave, terminate,
/// rate (per-stream kbps) or step (advance simulated time and sample
/// metrics).
struct ScriptOp {
  std::string op;
  ClientId client = 0;
  SessionId session = 0;
  Role mode = Role::Active;
  TopologySpec topology;
  NatType nat = NatType::FullCone;
  double kbps = 0.0;
  double dt = 1.0;
};

/// Parses JSON lines; blank lines and lines starting with '#' are skipped.
/// Throws FormatError on malformed lines.
std::vector<ScriptOp> parse_script(const std::string& text);
std::string script_to_jsonl(const std::vector<ScriptOp>& ops);

struct MetricRow {
  double time = 0.0;
  SessionId session = 0;
  ClientId node = 0;
  double up_kbps = 0.0;
  double down_kbps = 0.0;
  int up_streams = 0;
  int down_streams = 0;
};

struct ScenarioResult {
  /// JSON lines: one per script op plus hole-punch outcomes.
  std::vector<std::string> log;
  std::vector<MetricRow> metrics;
  /// One end-to-end latency sample per step and open session.
  std::vector<double> latency_samples;
  LatencyBounds latency_bounds;
  /// Membership after every op: time -> session -> members.
  std::vector<std::pair<double, std::map<SessionId, std::vector<ClientId>>>> membership;
  std::size_t rendezvous_media_messages = 0;
};

/// Deterministic discrete-event run. Throws InvalidArgument when an op names
/// a client that no earlier register op introduced.
ScenarioResult run_session_script(const std::vector<ScriptOp>& ops, const LatencyModel& model, std::uint64_t seed);

/// CSV: time,session,node,up_kbps,down_kbps.
void write_metrics_csv(std::ostream& out, const std::vector<MetricRow>& rows);

/// Register and log in n clients, client 1 creates the session, the rest
/// join one per step at the given rate.
std::vector<ScriptOp> growing_session_script(int n, TopologySpec topology, double kbps, int passive_from = 0);

}  // namespace item::session
