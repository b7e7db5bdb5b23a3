#include <doctest.h>

#include <set>
#include <sstream>

#include "item/common/error.hpp"
#include "item/session/latency.hpp"
#include "item/session/nat.hpp"
#include "item/session/scenario.hpp"
#include "item/session/scp.hpp"
#include "item/session/topology.hpp"

using namespace item;
using namespace item::session;
using K = ScpMessage::Kind;

namespace {

ScpMessage msg(K kind, ClientId c, std::optional<SessionId> sid = std::nullopt, Role mode = Role::Active) {
  ScpMessage m;
  m.kind = kind;
  m.client = c;
  m.session = sid;
  m.mode = mode;
  m.credential = "pw";
  return m;
}

void online(ScpServer& srv, ClientId c) {
  REQUIRE(srv.handle(msg(K::Register, c)).front().ok);
  REQUIRE(srv.handle(msg(K::Login, c)).front().ok);
}

SessionState session_of(int active, int passive, TopologyKind kind, int fanout = 4) {
  SessionState s;
  s.topology = {kind, fanout};
  for (int i = 1; i <= active; ++i) s.participants[i] = Role::Active;
  for (int i = 0; i < passive; ++i) s.participants[active + 1 + i] = Role::Passive;
  if (kind == TopologyKind::TranslatorAdHoc) s.translator = 1;
  return s;
}

}  // namespace

TEST_CASE("scp registration and authentication") {
  ScpServer srv;
  CHECK(srv.handle(msg(K::Register, 1)).front().ok);
  CHECK_FALSE(srv.handle(msg(K::Register, 1)).front().ok);
  auto bad = msg(K::Login, 1);
  bad.credential = "nope";
  CHECK_FALSE(srv.handle(bad).front().ok);
  CHECK_FALSE(srv.handle(msg(K::Login, 9)).front().ok);
  CHECK_FALSE(srv.handle(msg(K::Create, 1, 1)).front().ok);  // not logged in yet
  CHECK(srv.handle(msg(K::Login, 1)).front().ok);
  CHECK(srv.logged_in(1));
  CHECK_FALSE(srv.handle(msg(K::Create, 1)).front().ok);  // no session id
}

TEST_CASE("scp session lifecycle with translator election") {
  ScpServer srv;
  for (int c = 1; c <= 4; ++c) online(srv, c);
  auto create = msg(K::Create, 2, 7);
  create.topology.kind = TopologyKind::TranslatorAdHoc;
  CHECK(srv.handle(create).front().ok);
  CHECK_FALSE(srv.handle(create).front().ok);
  CHECK(srv.session(7)->translator == 2);

  const auto r = srv.handle(msg(K::Join, 1, 7));
  REQUIRE(r.size() == 2);
  CHECK(r[0].to == 1);
  CHECK(r[1].to == 2);
  CHECK(r[1].text == "member joined");
  CHECK(srv.session(7)->translator == 2);  // incumbent keeps the role
  CHECK_FALSE(srv.handle(msg(K::Join, 1, 7)).front().ok);
  CHECK_FALSE(srv.handle(msg(K::Join, 3, 8)).front().ok);
  CHECK(srv.handle(msg(K::Join, 3, 7, Role::Passive)).front().ok);

  CHECK(srv.handle(msg(K::Leave, 2, 7)).front().ok);
  CHECK(srv.session(7)->translator == 1);
  CHECK_FALSE(srv.handle(msg(K::Leave, 4, 7)).front().ok);
  CHECK_FALSE(srv.handle(msg(K::Terminate, 4, 7)).front().ok);

  const auto t = srv.handle(msg(K::Terminate, 1, 7));
  CHECK(t.size() == 2);
  CHECK_FALSE(srv.session(7)->open);
  CHECK_FALSE(srv.handle(msg(K::Join, 4, 7)).front().ok);
}

TEST_CASE("last member leaving closes the session") {
  ScpServer srv;
  online(srv, 1);
  auto create = msg(K::Create, 1, 3);
  create.topology.kind = TopologyKind::MulticastTree;
  REQUIRE(srv.handle(create).front().ok);
  CHECK(srv.session(3)->channel == Channel::Multicast);
  CHECK_FALSE(srv.session(3)->translator.has_value());
  CHECK(srv.handle(msg(K::Leave, 1, 3)).front().ok);
  CHECK_FALSE(srv.session(3)->open);
}

TEST_CASE("topology names") {
  CHECK(topology_from_string("mesh") == TopologyKind::FullMesh);
  CHECK(topology_from_string("translator") == TopologyKind::TranslatorAdHoc);
  CHECK(topology_from_string("multicast") == TopologyKind::MulticastTree);
  CHECK_THROWS_AS(topology_from_string("star"), InvalidArgument);
  CHECK(to_string(TopologyKind::TranslatorAdHoc) == "adhoc");
}

TEST_CASE("hole punching") {
  Rendezvous rv;
  rv.register_client(1, NatType::PortRestrictedCone, "198.51.100.1", 40001);
  rv.register_client(2, NatType::FullCone, "198.51.100.2", 40002);
  rv.register_client(3, NatType::Symmetric, "198.51.100.3", 40003);
  const std::size_t before = rv.control_messages();

  const auto ok = hole_punch(1, 2, rv);
  CHECK(ok.ok);
  CHECK(ok.rounds == 3);
  REQUIRE(ok.path.has_value());
  CHECK(ok.path->direct);
  CHECK(ok.path->a_public == Endpoint{"198.51.100.1", 40001});
  CHECK(rv.control_messages() == before + 4);
  auto path = *ok.path;
  path.send_media(100);
  CHECK(path.media_packets == 100u);
  CHECK(rv.media_messages() == 0u);

  const auto sym = hole_punch(1, 3, rv);
  CHECK_FALSE(sym.ok);
  CHECK(sym.rounds == 3);
  CHECK(sym.error.find("symmetric") != std::string::npos);
  CHECK_FALSE(sym.path.has_value());

  CHECK_FALSE(hole_punch(1, 9, rv).ok);
  CHECK_FALSE(hole_punch(1, 1, rv).ok);
  CHECK_THROWS_AS(nat_from_string("cone"), InvalidArgument);
}

TEST_CASE("ad-hoc translator stream counts") {
  const auto r = build_topology(session_of(6, 0, TopologyKind::TranslatorAdHoc), 500.0);
  CHECK(r.translator == 1);
  CHECK(r.nodes.at(1).uplink_streams == 25);
  CHECK(r.nodes.at(1).uplink_kbps == doctest::Approx(12500.0));
  for (int c = 2; c <= 6; ++c) {
    CHECK(r.nodes.at(c).uplink_streams == 1);
    CHECK(r.nodes.at(c).downlink_streams == 5);
  }
  for (int n = 2; n <= 12; ++n) {
    const auto t = build_topology(session_of(n, 0, TopologyKind::TranslatorAdHoc), 1.0);
    CHECK(t.nodes.at(1).uplink_streams == (n - 1) * (n - 1));
    CHECK(t.total_uplink_streams() == t.total_downlink_streams());
  }
  // passive receivers get every active stream and send nothing
  const auto p = build_topology(session_of(3, 2, TopologyKind::TranslatorAdHoc), 1.0);
  CHECK(p.nodes.at(4).uplink_streams == 0);
  CHECK(p.nodes.at(4).downlink_streams == 3);
  CHECK(p.nodes.at(1).uplink_streams == 2 + 2 + 3 + 3);
}

TEST_CASE("full mesh stream counts") {
  for (int n = 2; n <= 12; ++n) {
    const auto r = build_topology(session_of(n, 0, TopologyKind::FullMesh), 1.0);
    for (const auto& [id, l] : r.nodes) CHECK(l.uplink_streams == n - 1);
    CHECK(r.total_uplink_streams() == n * (n - 1));
  }
  const auto p = build_topology(session_of(2, 3, TopologyKind::FullMesh), 1.0);
  CHECK(p.nodes.at(3).uplink_streams == 0);
  CHECK(p.nodes.at(1).uplink_streams == 4);
}

TEST_CASE("multicast tree for a large passive audience") {
  const auto r = build_topology(session_of(1, 20, TopologyKind::MulticastTree, 4), 500.0);
  CHECK(r.nodes.at(1).uplink_streams == 4);
  CHECK(r.tree_depth == 2);
  for (const auto& [id, l] : r.nodes) {
    CHECK(l.uplink_streams <= 4);
    if (id != 1) CHECK(l.downlink_streams == 1);
  }
  const auto chain = build_topology(session_of(1, 5, TopologyKind::MulticastTree, 1), 1.0);
  CHECK(chain.tree_depth == 5);
  CHECK_THROWS_AS(build_topology(session_of(1, 5, TopologyKind::MulticastTree, 0), 1.0), InvalidArgument);
}

TEST_CASE("topology input errors") {
  CHECK_THROWS_AS(build_topology(session_of(1, 0, TopologyKind::FullMesh), 1.0), InvalidArgument);
  auto s = session_of(3, 1, TopologyKind::TranslatorAdHoc);
  s.translator = 4;  // passive
  CHECK_THROWS_AS(build_topology(s, 1.0), InvalidArgument);
  s.translator.reset();
  CHECK_THROWS_AS(build_topology(s, 1.0), InvalidArgument);
}

TEST_CASE("latency bounds and simulation") {
  const auto m = LatencyModel::conferencing_default();
  const auto b = analytic_bounds(m);
  CHECK(b.min_ms == doctest::Approx(102.0));
  CHECK(b.max_ms == doctest::Approx(165.0));
  const auto st = simulate_latency(m, 100000, 3);
  CHECK(st.out_of_bounds == 0u);
  CHECK(st.min_ms >= 102.0);
  CHECK(st.max_ms <= 165.0);
  CHECK(st.mean_ms == doctest::Approx(133.5).epsilon(0.01));

  LatencyModel point{{{"a", 5, 5}, {"b", 7, 7}}};
  const auto p = simulate_latency(point, 100, 1);
  CHECK(p.min_ms == 12.0);
  CHECK(p.max_ms == 12.0);
  LatencyModel bad{{{"a", 5, 4}}};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  CHECK_THROWS_AS(LatencyModel{}.validate(), InvalidArgument);
}

TEST_CASE("scripted session: determinism, media path and membership") {
  const auto ops = growing_session_script(6, {TopologyKind::TranslatorAdHoc, 4}, 500.0);
  const auto m = LatencyModel::conferencing_default();
  const auto a = run_session_script(ops, m, 11);
  const auto b = run_session_script(ops, m, 11);
  CHECK(a.log == b.log);
  CHECK(a.latency_samples == b.latency_samples);
  CHECK(a.rendezvous_media_messages == 0u);
  for (double v : a.latency_samples) {
    CHECK(v >= 102.0);
    CHECK(v <= 165.0);
  }
  REQUIRE_FALSE(a.membership.empty());
  CHECK(a.membership.back().second.at(1).size() == 6u);
  double last = -1;
  double peak_up = 0;
  for (const auto& row : a.metrics) {
    CHECK(row.time >= last);
    last = row.time;
    peak_up = std::max(peak_up, row.up_kbps);
  }
  CHECK(peak_up == doctest::Approx(25 * 500.0));
  std::ostringstream csv;
  write_metrics_csv(csv, a.metrics);
  CHECK(csv.str().rfind("time,session,node,up_kbps,down_kbps\n", 0) == 0);
}

TEST_CASE("script parsing and unknown clients") {
  const auto ops = growing_session_script(3, {}, 100.0);
  CHECK(script_to_jsonl(parse_script(script_to_jsonl(ops))) == script_to_jsonl(ops));
  CHECK(parse_script("# comment\n\n{\"op\":\"step\",\"dt\":2}\n").front().dt == 2.0);
  CHECK_THROWS_AS(parse_script("{\"op\":\"fly\"}"), FormatError);
  CHECK_THROWS_AS(parse_script("{op}"), FormatError);
  const auto bad = parse_script("{\"op\":\"register\",\"client\":1}\n{\"op\":\"login\",\"client\":2}\n");
  CHECK_THROWS_AS(run_session_script(bad, LatencyModel::conferencing_default(), 1), InvalidArgument);
}

TEST_CASE("leaving members leave no dangling edges") {
  auto ops = growing_session_script(5, {TopologyKind::TranslatorAdHoc, 4}, 100.0);
  ScriptOp leave;
  leave.op = "leave";
  leave.client = 1;  // the translator
  leave.session = 1;
  ops.push_back(leave);
  ScriptOp step;
  step.op = "step";
  ops.push_back(step);
  const auto r = run_session_script(ops, LatencyModel::conferencing_default(), 2);
  const auto& members = r.membership.back().second.at(1);
  CHECK(members.size() == 4u);
  const double t_end = r.metrics.back().time;
  std::set<ClientId> nodes;
  for (const auto& row : r.metrics)
    if (row.time == t_end) nodes.insert(row.node);
  CHECK(nodes == std::set<ClientId>(members.begin(), members.end()));
  CHECK(r.rendezvous_media_messages == 0u);
}
