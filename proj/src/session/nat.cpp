#include "item/session/nat.hpp"

#include "item/common/error.hpp"

namespace item::session {

NatType nat_from_string(const std::string& s) {
  if (s == "full-cone") return NatType::FullCone;
  if (s == "restricted-cone") return NatType::RestrictedCone;
  if (s == "port-restricted-cone") return NatType::PortRestrictedCone;
  if (s == "symmetric") return NatType::Symmetric;
  throw InvalidArgument("unknown NAT type '" + s + "'");
}

void Rendezvous::register_client(ClientId id, NatType nat, const std::string& public_ip, int base_port) {
  table_[id] = {nat, {public_ip, base_port}};
  ++control_;
}

std::optional<Endpoint> Rendezvous::observed(ClientId id) const {
  const auto it = table_.find(id);
  if (it == table_.end()) return std::nullopt;
  return it->second.observed;
}

PunchResult hole_punch(ClientId a, ClientId b, Rendezvous& rv) {
  PunchResult r;
  if (a == b) {
    r.error = "cannot punch to self";
    return r;
  }
  for (ClientId c : {a, b}) {
    if (!rv.knows(c)) {
      r.error = "unregistered peer " + std::to_string(c);
      return r;
    }
  }
  const Endpoint ea = *rv.observed(a);
  const Endpoint eb = *rv.observed(b);
  // round 1: both peers refresh their mapping at the rendezvous
  rv.count_control(2);
  r.rounds = 1;
  r.trace.push_back("register " + std::to_string(a) + " " + ea.ip + ":" + std::to_string(ea.port));
  r.trace.push_back("register " + std::to_string(b) + " " + eb.ip + ":" + std::to_string(eb.port));
  // round 2: the rendezvous tells each peer the other's public endpoint
  rv.count_control(2);
  r.rounds = 2;
  r.trace.push_back("exchange endpoints");
  // round 3: simultaneous-open probes towards the advertised endpoints. A
  // symmetric NAT maps the probe socket to a new port for the new
  // destination, so the other side's filter never matches.
  r.rounds = 3;
  auto probe_port = [&](ClientId c, const Endpoint& e) { return rv.nat_of(c) == NatType::Symmetric ? e.port + 1 : e.port; };
  const bool a_ok = probe_port(a, ea) == ea.port;
  const bool b_ok = probe_port(b, eb) == eb.port;
  r.trace.push_back("probe " + std::to_string(a) + "->" + std::to_string(b) + (a_ok ? " ok" : " dropped"));
  r.trace.push_back("probe " + std::to_string(b) + "->" + std::to_string(a) + (b_ok ? " ok" : " dropped"));
  if (!a_ok || !b_ok) {
    r.error = "symmetric NAT: probes did not reach the advertised endpoint";
    return r;
  }
  r.ok = true;
  r.path = P2PPath{a, b, ea, eb, true, 0};
  return r;
}

}  // namespace item::session
