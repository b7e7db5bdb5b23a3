#include "item/session/topology.hpp"

#include <deque>

#include "item/common/error.hpp"

namespace item::session {

int TopologyReport::total_uplink_streams() const {
  int n = 0;
  for (const auto& [id, l] : nodes) n += l.uplink_streams;
  return n;
}

int TopologyReport::total_downlink_streams() const {
  int n = 0;
  for (const auto& [id, l] : nodes) n += l.downlink_streams;
  return n;
}

namespace {

void add_edge(TopologyReport& r, ClientId from, ClientId to, int streams) {
  if (streams <= 0) return;
  r.edges.push_back({from, to, streams});
  r.nodes[from].uplink_streams += streams;
  r.nodes[to].downlink_streams += streams;
}

}  // namespace

TopologyReport build_topology(const SessionState& s, double kbps) {
  if (s.participants.size() < 2) throw InvalidArgument("topology: needs at least 2 participants");
  if (kbps < 0.0) throw InvalidArgument("topology: negative bitrate");
  TopologyReport r;
  r.kind = s.topology.kind;
  std::vector<ClientId> all;
  std::vector<ClientId> active;
  for (const auto& [id, role] : s.participants) {
    r.nodes[id];
    all.push_back(id);
    if (role == Role::Active) active.push_back(id);
  }
  switch (s.topology.kind) {
    case TopologyKind::FullMesh:
      for (ClientId src : active)
        for (ClientId dst : all)
          if (dst != src) add_edge(r, src, dst, 1);
      break;
    case TopologyKind::TranslatorAdHoc: {
      if (!s.translator || !s.participants.count(*s.translator) || s.participants.at(*s.translator) != Role::Active) {
        throw InvalidArgument("topology: translator is not an active participant");
      }
      const ClientId t = *s.translator;
      r.translator = t;
      for (ClientId src : active)
        if (src != t) add_edge(r, src, t, 1);
      const int a = static_cast<int>(active.size());
      for (ClientId dst : all) {
        if (dst == t) continue;
        const bool own = s.participants.at(dst) == Role::Active;
        add_edge(r, t, dst, a - (own ? 1 : 0));
      }
      break;
    }
    case TopologyKind::MulticastTree: {
      const int fanout = s.topology.fanout;
      if (fanout < 1) throw InvalidArgument("topology: fanout must be >= 1");
      int depth = 0;
      for (ClientId src : active) {
        // BFS fill in ascending id order; every node relays to up to `fanout` children
        std::deque<std::pair<ClientId, int>> open{{src, 0}};
        std::vector<ClientId> receivers;
        for (ClientId id : all)
          if (id != src) receivers.push_back(id);
        std::size_t next = 0;
        while (!open.empty() && next < receivers.size()) {
          const auto [parent, level] = open.front();
          open.pop_front();
          for (int k = 0; k < fanout && next < receivers.size(); ++k) {
            const ClientId child = receivers[next++];
            add_edge(r, parent, child, 1);
            open.emplace_back(child, level + 1);
            depth = std::max(depth, level + 1);
          }
        }
      }
      r.tree_depth = depth;
      break;
    }
  }
  for (auto& [id, l] : r.nodes) {
    l.uplink_kbps = l.uplink_streams * kbps;
    l.downlink_kbps = l.downlink_streams * kbps;
  }
  return r;
}

}  // namespace item::session
