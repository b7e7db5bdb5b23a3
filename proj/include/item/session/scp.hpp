#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace item::session {

using ClientId = int;
using SessionId = int;

enum class Role { Active, Passive };
enum class TopologyKind { FullMesh, TranslatorAdHoc, MulticastTree };
enum class Channel { Unicast, Multicast };

std::string to_string(Role r);
std::string to_string(TopologyKind k);
TopologyKind topology_from_string(const std::string& s);

struct TopologySpec {
  TopologyKind kind = TopologyKind::TranslatorAdHoc;
  /// Children per node of a multicast tree.
  int fanout = 4;
};

struct ScpMessage {
  enum class Kind { Register, Login, Create, Join, Leave, Terminate };
  Kind kind = Kind::Register;
  ClientId client = 0;
  std::optional<SessionId> session;
  Role mode = Role::Active;
  std::string credential;
  /// Media capabilities descriptor, e.g. "video/object;audio/pcmu".
  std::string capabilities;
  TopologySpec topology;
};

struct SessionState {
  SessionId id = 0;
  ClientId creator = 0;
  std::map<ClientId, Role> participants;
  TopologySpec topology;
  std::optional<ClientId> translator;
  Channel channel = Channel::Unicast;
  bool open = true;

  std::size_t active_count() const;
};

struct ScpReply {
  bool ok = true;
  ClientId to = 0;
  std::string text;
  /// Current transmission structure (Create/Join/Leave replies and notices).
  std::optional<SessionState> structure;
};

/// Control server: membership, authentication and the session table.
class ScpServer {
 public:
  std::vector<ScpReply> handle(const ScpMessage& msg);

  const std::map<SessionId, SessionState>& sessions() const { return sessions_; }
  const SessionState* session(SessionId id) const;
  bool registered(ClientId c) const { return users_.count(c) != 0; }
  bool logged_in(ClientId c) const { return online_.count(c) != 0; }

 private:
  std::vector<ScpReply> error(ClientId to, const std::string& text) const { return {{false, to, text, std::nullopt}}; }
  void elect_translator(SessionState& s);
  void notify(std::vector<ScpReply>& out, const SessionState& s, ClientId except, const std::string& text) const;

  std::map<ClientId, std::string> users_;
  std::set<ClientId> online_;
  std::map<SessionId, SessionState> sessions_;
};

}  // namespace item::session
