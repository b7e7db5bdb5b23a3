#include "item/session/scp.hpp"

#include "item/common/error.hpp"

namespace item::session {

std::string to_string(Role r) { return r == Role::Active ? "active" : "passive"; }

std::string to_string(TopologyKind k) {
  switch (k) {
    case TopologyKind::FullMesh: return "mesh";
    case TopologyKind::TranslatorAdHoc: return "adhoc";
    case TopologyKind::MulticastTree: return "multicast";
  }
  return "?";
}

TopologyKind topology_from_string(const std::string& s) {
  if (s == "mesh" || s == "full-mesh") return TopologyKind::FullMesh;
  if (s == "adhoc" || s == "translator") return TopologyKind::TranslatorAdHoc;
  if (s == "multicast") return TopologyKind::MulticastTree;
  throw InvalidArgument("unknown topology '" + s + "'");
}

std::size_t SessionState::active_count() const {
  std::size_t n = 0;
  for (const auto& [id, role] : participants) n += role == Role::Active;
  return n;
}

const SessionState* ScpServer::session(SessionId id) const {
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : &it->second;
}

void ScpServer::elect_translator(SessionState& s) {
  if (s.topology.kind != TopologyKind::TranslatorAdHoc) {
    s.translator.reset();
    return;
  }
  if (s.translator && s.participants.count(*s.translator) && s.participants.at(*s.translator) == Role::Active) return;
  s.translator.reset();
  for (const auto& [id, role] : s.participants) {
    if (role == Role::Active) {
      s.translator = id;
      break;
    }
  }
}

void ScpServer::notify(std::vector<ScpReply>& out, const SessionState& s, ClientId except, const std::string& text) const {
  for (const auto& [id, role] : s.participants)
    if (id != except) out.push_back({true, id, text, s});
}

std::vector<ScpReply> ScpServer::handle(const ScpMessage& m) {
  using K = ScpMessage::Kind;
  const ClientId c = m.client;
  switch (m.kind) {
    case K::Register:
      if (users_.count(c)) return error(c, "already registered");
      users_[c] = m.credential;
      return {{true, c, "registered", std::nullopt}};
    case K::Login:
      if (!users_.count(c)) return error(c, "unknown user");
      if (users_.at(c) != m.credential) return error(c, "authentication failed");
      online_.insert(c);
      return {{true, c, "logged in", std::nullopt}};
    default: break;
  }
  if (!online_.count(c)) return error(c, "unauthenticated sender");
  if (!m.session) return error(c, "missing session id");
  const SessionId sid = *m.session;
  auto it = sessions_.find(sid);

  if (m.kind == K::Create) {
    if (it != sessions_.end()) return error(c, "session already exists");
    if (m.topology.kind == TopologyKind::MulticastTree && m.topology.fanout < 1) return error(c, "fanout must be >= 1");
    SessionState s;
    s.id = sid;
    s.creator = c;
    s.topology = m.topology;
    s.channel = m.topology.kind == TopologyKind::MulticastTree ? Channel::Multicast : Channel::Unicast;
    s.participants[c] = Role::Active;
    elect_translator(s);
    sessions_[sid] = s;
    return {{true, c, "created", s}};
  }
  if (it == sessions_.end() || !it->second.open) return error(c, "unknown session");
  SessionState& s = it->second;
  std::vector<ScpReply> out;
  switch (m.kind) {
    case K::Join:
      if (s.participants.count(c)) return error(c, "already joined");
      s.participants[c] = m.mode;
      elect_translator(s);
      out.push_back({true, c, "joined", s});
      notify(out, s, c, "member joined");
      return out;
    case K::Leave:
      if (!s.participants.count(c)) return error(c, "not a participant");
      s.participants.erase(c);
      if (s.participants.empty()) {
        s.open = false;
        s.translator.reset();
        return {{true, c, "left; session closed", s}};
      }
      elect_translator(s);
      out.push_back({true, c, "left", s});
      notify(out, s, c, "member left");
      return out;
    case K::Terminate: {
      if (!s.participants.count(c)) return error(c, "not a participant");
      const SessionState before = s;
      s.participants.clear();
      s.translator.reset();
      s.open = false;
      out.push_back({true, c, "terminated", s});
      for (const auto& [id, role] : before.participants)
        if (id != c) out.push_back({true, id, "session terminated", s});
      return out;
    }
    default: return error(c, "unexpected message");
  }
}

}  // namespace item::session
