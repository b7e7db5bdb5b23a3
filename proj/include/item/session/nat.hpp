#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "item/session/scp.hpp"

namespace item::session {

enum class NatType { FullCone, RestrictedCone, PortRestrictedCone, Symmetric };

NatType nat_from_string(const std::string& s);

struct Endpoint {
  std::string ip;
  int port = 0;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// Public-endpoint table of the NAT traversal server. Counts every message it
/// handles, split into control and media.
class Rendezvous {
 public:
  /// A client behind `nat` with public address `public_ip`; its NAT maps the
  /// client's socket to `base_port`.
  void register_client(ClientId id, NatType nat, const std::string& public_ip, int base_port);
  bool knows(ClientId id) const { return table_.count(id) != 0; }
  /// Public endpoint the rendezvous observed for the client.
  std::optional<Endpoint> observed(ClientId id) const;
  NatType nat_of(ClientId id) const { return table_.at(id).nat; }

  std::size_t control_messages() const { return control_; }
  std::size_t media_messages() const { return media_; }
  void count_control(std::size_t n = 1) { control_ += n; }

 private:
  struct Entry {
    NatType nat;
    Endpoint observed;
  };
  std::map<ClientId, Entry> table_;
  std::size_t control_ = 0;
  std::size_t media_ = 0;
};

/// Established peer-to-peer path; media sent over it bypasses the rendezvous.
struct P2PPath {
  ClientId a = 0;
  ClientId b = 0;
  Endpoint a_public;
  Endpoint b_public;
  bool direct = false;
  std::size_t media_packets = 0;

  void send_media(std::size_t packets) { media_packets += packets; }
};

struct PunchResult {
  bool ok = false;
  int rounds = 0;
  std::string error;
  std::vector<std::string> trace;
  std::optional<P2PPath> path;
};

/// Three rounds: both peers refresh their registration, the rendezvous swaps
/// the observed endpoints, both send simultaneous-open probes. A symmetric
/// NAT allocates a fresh port per destination, so probes miss and the punch
/// fails.
PunchResult hole_punch(ClientId a, ClientId b, Rendezvous& rv);

}  // namespace item::session
