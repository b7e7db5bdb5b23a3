#pragma once

#include <map>
#include <optional>
#include <vector>

#include "item/session/scp.hpp"

namespace item::session {

struct NodeLoad {
  int uplink_streams = 0;
  int downlink_streams = 0;
  double uplink_kbps = 0.0;
  double downlink_kbps = 0.0;
};

struct Edge {
  ClientId from = 0;
  ClientId to = 0;
  int streams = 0;
};

struct TopologyReport {
  TopologyKind kind = TopologyKind::FullMesh;
  std::map<ClientId, NodeLoad> nodes;
  std::vector<Edge> edges;
  std::optional<ClientId> translator;
  /// Multicast only: the deepest tree level (the source is level 0).
  std::optional<int> tree_depth;

  int total_uplink_streams() const;
  int total_downlink_streams() const;
};

/// Stream counts per node for the session's structure. Throws InvalidArgument
/// with fewer than 2 participants, or when an ad-hoc translator is missing
/// or not an active participant.
TopologyReport build_topology(const SessionState& s, double per_stream_kbps);

}  // namespace item::session
