#include "item/session/scenario.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "item/common/error.hpp"
#include "item/common/random.hpp"

namespace item::session {

using nlohmann::json;

namespace {

const char* nat_name(NatType n) {
  switch (n) {
    case NatType::FullCone: return "full-cone";
    case NatType::RestrictedCone: return "restricted-cone";
    case NatType::PortRestrictedCone: return "port-restricted-cone";
    case NatType::Symmetric: return "symmetric";
  }
  return "?";
}

const std::vector<std::string>& known_ops() {
  static const std::vector<std::string> ops{"register", "login", "create", "join", "leave", "terminate", "rate", "step"};
  return ops;
}

ScriptOp op_from_json(const json& j) {
  ScriptOp op;
  op.op = j.at("op").get<std::string>();
  if (std::find(known_ops().begin(), known_ops().end(), op.op) == known_ops().end())
    throw FormatError("unknown op '" + op.op + "'");
  op.client = j.value("client", 0);
  op.session = j.value("session", 0);
  const std::string mode = j.value("mode", std::string("active"));
  if (mode == "active") op.mode = Role::Active;
  else if (mode == "passive") op.mode = Role::Passive;
  else throw FormatError("bad mode '" + mode + "'");
  try {
    op.topology.kind = topology_from_string(j.value("topology", std::string("adhoc")));
    op.nat = nat_from_string(j.value("nat", std::string("full-cone")));
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
  op.topology.fanout = j.value("fanout", 4);
  op.kbps = j.value("kbps", 0.0);
  op.dt = j.value("dt", 1.0);
  if (op.dt < 0.0) throw FormatError("negative dt");
  if (op.kbps < 0.0) throw FormatError("negative kbps");
  return op;
}

json op_to_json(const ScriptOp& op) {
  json j{{"op", op.op}};
  if (op.op == "rate") {
    j["kbps"] = op.kbps;
    return j;
  }
  if (op.op == "step") {
    j["dt"] = op.dt;
    return j;
  }
  j["client"] = op.client;
  if (op.op == "register") j["nat"] = nat_name(op.nat);
  if (op.op == "create" || op.op == "join" || op.op == "leave" || op.op == "terminate") j["session"] = op.session;
  if (op.op == "create") {
    j["topology"] = to_string(op.topology.kind);
    j["fanout"] = op.topology.fanout;
  }
  if (op.op == "join") j["mode"] = to_string(op.mode);
  return j;
}

std::string credential_of(ClientId c) { return "pw-" + std::to_string(c); }

}  // namespace

std::vector<ScriptOp> parse_script(const std::string& text) {
  std::vector<ScriptOp> ops;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      ops.push_back(op_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw FormatError("script line " + std::to_string(lineno) + ": " + e.what());
    } catch (const FormatError& e) {
      throw FormatError("script line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return ops;
}

std::string script_to_jsonl(const std::vector<ScriptOp>& ops) {
  std::string s;
  for (const auto& op : ops) s += op_to_json(op).dump() + "\n";
  return s;
}

ScenarioResult run_session_script(const std::vector<ScriptOp>& ops, const LatencyModel& model, std::uint64_t seed) {
  model.validate();
  ScenarioResult res;
  res.latency_bounds = analytic_bounds(model);
  ScpServer server;
  Rendezvous rv;
  std::map<std::pair<ClientId, ClientId>, P2PPath> paths;
  std::set<ClientId> known;
  Rng rng(seed);
  double t = 0.0;
  double kbps = 0.0;

  auto log_replies = [&](const ScriptOp& op, const std::vector<ScpReply>& replies) {
    for (const auto& r : replies) {
      json j{{"t", t}, {"op", op.op}, {"from", op.client}, {"to", r.to}, {"ok", r.ok}, {"text", r.text}};
      if (r.structure) {
        j["session"] = r.structure->id;
        j["topology"] = to_string(r.structure->topology.kind);
        j["members"] = r.structure->participants.size();
        if (r.structure->translator) j["translator"] = *r.structure->translator;
      }
      res.log.push_back(j.dump());
    }
  };
  auto punch = [&](ClientId a, ClientId b) {
    const auto key = std::minmax(a, b);
    if (paths.count(key)) return;
    const PunchResult p = hole_punch(key.first, key.second, rv);
    json j{{"t", t}, {"op", "punch"}, {"a", key.first}, {"b", key.second}, {"ok", p.ok}, {"rounds", p.rounds}};
    if (!p.ok) j["error"] = p.error;
    res.log.push_back(j.dump());
    if (p.path) paths[key] = *p.path;
  };

  for (const auto& op : ops) {
    if (op.op != "rate" && op.op != "step") {
      if (op.op != "register" && !known.count(op.client))
        throw InvalidArgument("script references unknown client " + std::to_string(op.client));
    }
    ScpMessage m;
    m.client = op.client;
    m.session = op.session;
    m.mode = op.mode;
    m.credential = credential_of(op.client);
    m.topology = op.topology;
    if (op.op == "register") {
      known.insert(op.client);
      rv.register_client(op.client, op.nat, "198.51.100." + std::to_string(op.client % 250 + 1), 40000 + op.client);
      m.kind = ScpMessage::Kind::Register;
      log_replies(op, server.handle(m));
    } else if (op.op == "login") {
      m.kind = ScpMessage::Kind::Login;
      log_replies(op, server.handle(m));
    } else if (op.op == "create") {
      m.kind = ScpMessage::Kind::Create;
      log_replies(op, server.handle(m));
    } else if (op.op == "join") {
      m.kind = ScpMessage::Kind::Join;
      const auto replies = server.handle(m);
      log_replies(op, replies);
      const SessionState* s = server.session(op.session);
      if (!replies.empty() && replies.front().ok && s && s->translator && *s->translator != op.client)
        punch(op.client, *s->translator);
    } else if (op.op == "leave" || op.op == "terminate") {
      m.kind = op.op == "leave" ? ScpMessage::Kind::Leave : ScpMessage::Kind::Terminate;
      log_replies(op, server.handle(m));
      // a re-elected translator needs paths to everyone left
      const SessionState* s = server.session(op.session);
      if (s && s->open && s->translator)
        for (const auto& [id, role] : s->participants)
          if (id != *s->translator) punch(id, *s->translator);
    } else if (op.op == "rate") {
      kbps = op.kbps;
      res.log.push_back(json{{"t", t}, {"op", "rate"}, {"kbps", kbps}}.dump());
    } else {
      t += op.dt;
      for (const auto& [sid, s] : server.sessions()) {
        if (!s.open) continue;
        double total = 0.0;
        for (const auto& st : model.stages) total += rng.uniform(st.min_ms, st.max_ms);
        res.latency_samples.push_back(total);
        if (s.participants.size() < 2) continue;
        const TopologyReport rep = build_topology(s, kbps);
        for (const auto& [node, load] : rep.nodes)
          res.metrics.push_back({t, sid, node, load.uplink_kbps, load.downlink_kbps, load.uplink_streams, load.downlink_streams});
        // media flows over established direct paths, never via the rendezvous
        for (const auto& e : rep.edges) {
          const auto it = paths.find(std::minmax(e.from, e.to));
          if (it != paths.end()) it->second.send_media(static_cast<std::size_t>(e.streams));
        }
      }
      res.log.push_back(json{{"t", t}, {"op", "step"}}.dump());
    }
    std::map<SessionId, std::vector<ClientId>> members;
    for (const auto& [sid, s] : server.sessions()) {
      auto& v = members[sid];
      for (const auto& [id, role] : s.participants) v.push_back(id);
    }
    res.membership.emplace_back(t, std::move(members));
  }
  res.rendezvous_media_messages = rv.media_messages();
  return res;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricRow>& rows) {
  out << "time,session,node,up_kbps,down_kbps\n";
  for (const auto& r : rows) out << r.time << ',' << r.session << ',' << r.node << ',' << r.up_kbps << ',' << r.down_kbps << '\n';
}

std::vector<ScriptOp> growing_session_script(int n, TopologySpec topology, double kbps, int passive_from) {
  if (n < 1) throw InvalidArgument("growing session: n must be >= 1");
  std::vector<ScriptOp> ops;
  for (int c = 1; c <= n; ++c) {
    ScriptOp r;
    r.op = "register";
    r.client = c;
    ops.push_back(r);
    r.op = "login";
    ops.push_back(r);
  }
  ScriptOp rate;
  rate.op = "rate";
  rate.kbps = kbps;
  ops.push_back(rate);
  ScriptOp create;
  create.op = "create";
  create.client = 1;
  create.session = 1;
  create.topology = topology;
  ops.push_back(create);
  ScriptOp step;
  step.op = "step";
  for (int c = 2; c <= n; ++c) {
    ScriptOp j;
    j.op = "join";
    j.client = c;
    j.session = 1;
    j.mode = passive_from > 0 && c >= passive_from ? Role::Passive : Role::Active;
    ops.push_back(j);
    ops.push_back(step);
  }
  return ops;
}

}  // namespace item::session
