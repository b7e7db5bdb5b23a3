#include "item/experiments/session_demo.hpp"

#include "item/common/error.hpp"

namespace item::experiments {

using nlohmann::json;
using namespace item::session;

void SessionDemoConfig::validate() const {
  if (participants < 2) throw InvalidArgument("session demo: needs >= 2 participants");
  if (sweep_min < 2 || sweep_max < sweep_min) throw InvalidArgument("session demo: bad sweep range");
  if (kbps < 0.0) throw InvalidArgument("session demo: negative kbps");
  if (latency_trials < 1) throw InvalidArgument("session demo: trials must be >= 1");
  if (topology.fanout < 1) throw InvalidArgument("session demo: fanout must be >= 1");
}

namespace {

SessionState synthetic_session(int n, int active, TopologySpec topo) {
  SessionState s;
  s.id = 1;
  s.creator = 1;
  s.topology = topo;
  for (int c = 1; c <= n; ++c) s.participants[c] = c <= active ? Role::Active : Role::Passive;
  if (topo.kind == TopologyKind::TranslatorAdHoc) s.translator = 1;
  return s;
}

json topology_json(const TopologyReport& r) {
  json j{{"kind", to_string(r.kind)},
         {"total_uplink_streams", r.total_uplink_streams()},
         {"total_downlink_streams", r.total_downlink_streams()}};
  if (r.translator) j["translator"] = *r.translator;
  if (r.tree_depth) j["tree_depth"] = *r.tree_depth;
  json nodes = json::array();
  for (const auto& [id, l] : r.nodes)
    nodes.push_back({{"node", id}, {"up_streams", l.uplink_streams}, {"down_streams", l.downlink_streams},
                     {"up_kbps", l.uplink_kbps}, {"down_kbps", l.downlink_kbps}});
  j["nodes"] = nodes;
  return j;
}

}  // namespace

json run_session_demo(const SessionDemoConfig& cfg) {
  cfg.validate();
  const LatencyModel model = LatencyModel::conferencing_default();
  json rep;
  const LatencyStats lat = simulate_latency(model, cfg.latency_trials, cfg.seed);
  json stages = json::array();
  for (const auto& s : model.stages) stages.push_back({{"stage", s.name}, {"min_ms", s.min_ms}, {"max_ms", s.max_ms}});
  rep["latency"] = {{"stages", stages},
                    {"bounds_ms", {lat.bounds.min_ms, lat.bounds.max_ms}},
                    {"trials", lat.trials},
                    {"min_ms", lat.min_ms},
                    {"max_ms", lat.max_ms},
                    {"mean_ms", lat.mean_ms},
                    {"out_of_bounds", lat.out_of_bounds}};

  const auto ops = cfg.script.empty() ? growing_session_script(cfg.participants, cfg.topology, cfg.kbps) : parse_script(cfg.script);
  const ScenarioResult sc = run_session_script(ops, model, cfg.seed);
  json timeline = json::array();
  for (const auto& m : sc.metrics)
    timeline.push_back({{"t", m.time}, {"session", m.session}, {"node", m.node}, {"up_kbps", m.up_kbps},
                        {"down_kbps", m.down_kbps}, {"up_streams", m.up_streams}, {"down_streams", m.down_streams}});
  json membership = json::object();
  if (!sc.membership.empty())
    for (const auto& [sid, members] : sc.membership.back().second) membership[std::to_string(sid)] = members;
  rep["scenario"] = {{"ops", ops.size()},
                     {"log_lines", sc.log.size()},
                     {"bandwidth_timeline", timeline},
                     {"final_membership", membership},
                     {"latency_samples", sc.latency_samples.size()},
                     {"rendezvous_media_messages", sc.rendezvous_media_messages}};

  json sweep = json::array();
  for (int n = cfg.sweep_min; n <= cfg.sweep_max; ++n) {
    for (TopologyKind k : {TopologyKind::TranslatorAdHoc, TopologyKind::FullMesh, TopologyKind::MulticastTree}) {
      const TopologyReport r = build_topology(synthetic_session(n, n, {k, cfg.topology.fanout}), cfg.kbps);
      json row{{"n", n},
               {"kind", to_string(k)},
               {"total_uplink_streams", r.total_uplink_streams()},
               {"total_downlink_streams", r.total_downlink_streams()}};
      int max_other = 0;
      for (const auto& [id, l] : r.nodes)
        if (!r.translator || id != *r.translator) max_other = std::max(max_other, l.uplink_streams);
      if (r.translator) {
        row["translator_uplink_streams"] = r.nodes.at(*r.translator).uplink_streams;
        row["non_translator_uplink_streams"] = max_other;
      } else {
        row["max_uplink_streams"] = max_other;
      }
      if (r.tree_depth) row["tree_depth"] = *r.tree_depth;
      sweep.push_back(row);
    }
  }
  rep["sweep"] = sweep;
  // one speaker, a passive audience of 20
  rep["multicast_audience"] =
      topology_json(build_topology(synthetic_session(21, 1, {TopologyKind::MulticastTree, cfg.topology.fanout}), cfg.kbps));
  rep["config"] = {{"participants", cfg.participants}, {"topology", to_string(cfg.topology.kind)},
                   {"fanout", cfg.topology.fanout}, {"kbps", cfg.kbps},
                   {"sweep", {cfg.sweep_min, cfg.sweep_max}}, {"latency_trials", cfg.latency_trials},
                   {"seed", cfg.seed}};
  return rep;
}

}  // namespace item::experiments
