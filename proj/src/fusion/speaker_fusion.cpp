#include "item/fusion/speaker_fusion.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "item/common/error.hpp"
#include "item/common/random.hpp"

namespace item::fusion {

using audio::Direction;
using nlohmann::json;

void FusionConfig::validate() const {
  if (consistency_window < 1) throw InvalidArgument("fusion: consistency window must be >= 1");
  if (!(gate_deg >= 0.0 && gate_deg <= 180.0)) throw InvalidArgument("fusion: gate outside [0, 180]");
  if (min_peak < 0.0) throw InvalidArgument("fusion: negative peak gate");
  if (lost_memory_frames < 0) throw InvalidArgument("fusion: negative lost-track memory");
}

Direction direction_of(const Eigen::Vector3d& p) {
  const double r = p.norm();
  if (!(r > 0.0)) throw InvalidArgument("fusion: track at the array origin has no direction");
  const double theta = std::acos(std::clamp(p.z() / r, -1.0, 1.0)) * 180.0 / std::numbers::pi;
  double phi = std::atan2(p.y(), p.x()) * 180.0 / std::numbers::pi;
  if (phi < 0.0) phi += 360.0;
  if (phi >= 360.0) phi = 0.0;
  return {theta, phi};
}

std::optional<PersonId> associate(const Direction& doa, const std::vector<PersonTrack>& tracks, double gate_deg) {
  std::optional<PersonId> best;
  double best_d = 0.0;
  for (const auto& t : tracks) {
    if (!t.visible || !(t.position.norm() > 0.0)) continue;
    const double d = audio::angular_distance(doa, direction_of(t.position));
    if (d > gate_deg) continue;
    if (!best || d < best_d || (d == best_d && t.id < *best)) {
      best = t.id;
      best_d = d;
    }
  }
  return best;
}

FusionEvent update(FusionState& s, std::optional<PersonId> obs, const FusionConfig& config) {
  if (!obs || obs == s.active) {
    s.pending.reset();
    return {};
  }
  if (s.pending && s.pending->id == *obs) {
    ++s.pending->count;
  } else {
    s.pending = Pending{*obs, 1};
  }
  if (s.pending->count >= config.consistency_window) {
    s.active = *obs;
    s.pending.reset();
    return {EventKind::Switch, *obs, std::nullopt};
  }
  return {};
}

FusionEvent step(FusionState& s, const std::optional<DoaObservation>& doa, const std::vector<PersonTrack>& tracks,
                 const FusionConfig& config) {
  // tracks that were visible last frame and are gone now become "lost"
  for (const auto& prev : s.last_tracks) {
    if (!prev.visible || !(prev.position.norm() > 0.0)) continue;
    bool still = false;
    for (const auto& t : tracks) still = still || (t.id == prev.id && t.visible);
    if (!still) {
      std::erase_if(s.lost, [&](const LostTrack& l) { return l.id == prev.id; });
      s.lost.push_back({prev.id, direction_of(prev.position), s.frame});
    }
  }
  for (const auto& t : tracks) {
    if (t.visible) std::erase_if(s.lost, [&](const LostTrack& l) { return l.id == t.id; });
  }
  std::erase_if(s.lost, [&](const LostTrack& l) { return s.frame - l.lost_at > config.lost_memory_frames; });

  const bool usable = doa && doa->peak >= config.min_peak;
  const std::optional<PersonId> obs = usable ? associate(doa->direction, tracks, config.gate_deg) : std::nullopt;
  FusionEvent ev = update(s, obs, config);
  if (ev.kind == EventKind::Hold && usable && !obs) {
    const LostTrack* near = nullptr;
    double near_d = 0.0;
    for (const auto& l : s.lost) {
      const double d = audio::angular_distance(doa->direction, l.direction);
      if (d <= config.gate_deg && (!near || d < near_d || (d == near_d && l.id < near->id))) {
        near = &l;
        near_d = d;
      }
    }
    if (near) ev = {EventKind::ReacquireHint, near->id, near->direction};
  }
  s.last_tracks = tracks;
  ++s.frame;
  return ev;
}

namespace {

json config_json(const FusionConfig& c) {
  return {{"consistency_window", c.consistency_window},
          {"gate_deg", c.gate_deg},
          {"min_peak", c.min_peak},
          {"lost_memory_frames", c.lost_memory_frames}};
}

FusionConfig config_from(const json& j) {
  FusionConfig c;
  c.consistency_window = j.value("consistency_window", c.consistency_window);
  c.gate_deg = j.value("gate_deg", c.gate_deg);
  c.min_peak = j.value("min_peak", c.min_peak);
  c.lost_memory_frames = j.value("lost_memory_frames", c.lost_memory_frames);
  c.validate();
  return c;
}

const char* kind_name(EventKind k) {
  switch (k) {
    case EventKind::Hold: return "hold";
    case EventKind::Switch: return "switch";
    case EventKind::ReacquireHint: return "reacquire_hint";
  }
  return "?";
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  try {
    const json j = json::parse(text);
    if (j.contains("config")) s.config = config_from(j.at("config"));
    for (const auto& f : j.at("frames")) {
      ScenarioFrame fr;
      fr.t = f.value("t", 0.0);
      if (f.contains("doa") && !f.at("doa").is_null()) {
        const auto& d = f.at("doa");
        DoaObservation o{{d.at("theta").get<double>(), d.at("phi").get<double>()}, d.value("peak", 1.0)};
        audio::validate(o.direction);
        fr.doa = o;
      }
      for (const auto& t : f.value("tracks", json::array())) {
        PersonTrack p;
        p.id = t.at("id").get<int>();
        const auto pos = t.at("position").get<std::vector<double>>();
        if (pos.size() != 3) throw FormatError("scenario: position needs 3 coordinates");
        p.position = {pos[0], pos[1], pos[2]};
        p.visible = t.value("visible", true);
        for (const auto& q : fr.tracks)
          if (q.id == p.id) throw FormatError("scenario: duplicate track id in one frame");
        fr.tracks.push_back(p);
      }
      if (f.contains("speaking") && !f.at("speaking").is_null()) fr.speaking = f.at("speaking").get<int>();
      s.frames.push_back(std::move(fr));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("scenario: ") + e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("scenario: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string scenario_to_json(const Scenario& s) {
  json frames = json::array();
  for (const auto& f : s.frames) {
    json fr{{"t", f.t}};
    fr["doa"] = f.doa ? json{{"theta", f.doa->direction.theta}, {"phi", f.doa->direction.phi}, {"peak", f.doa->peak}} : json(nullptr);
    json tracks = json::array();
    for (const auto& t : f.tracks)
      tracks.push_back({{"id", t.id}, {"position", {t.position.x(), t.position.y(), t.position.z()}}, {"visible", t.visible}});
    fr["tracks"] = tracks;
    fr["speaking"] = f.speaking ? json(*f.speaking) : json(nullptr);
    frames.push_back(fr);
  }
  return json{{"config", config_json(s.config)}, {"frames", frames}}.dump(1);
}

ScenarioReport run_scenario(const Scenario& s) {
  s.config.validate();
  ScenarioReport r;
  FusionState st;
  for (const auto& f : s.frames) {
    const FusionEvent ev = step(st, f.doa, f.tracks, s.config);
    if (ev.kind == EventKind::Switch) {
      ++r.switches;
      if (ev.id != f.speaking) ++r.spurious_switches;
    }
    if (ev.kind == EventKind::ReacquireHint) ++r.hints;
    r.events.push_back(ev);
    r.active.push_back(st.active);
  }
  return r;
}

void write_event_log(std::ostream& out, const Scenario& s, const ScenarioReport& r) {
  for (std::size_t i = 0; i < r.events.size(); ++i) {
    const auto& ev = r.events[i];
    json j{{"frame", i}, {"t", s.frames[i].t}, {"event", kind_name(ev.kind)}};
    j["id"] = ev.id ? json(*ev.id) : json(nullptr);
    if (ev.direction) {
      j["theta"] = ev.direction->theta;
      j["phi"] = ev.direction->phi;
    }
    j["active"] = r.active[i] ? json(*r.active[i]) : json(nullptr);
    out << j.dump() << '\n';
  }
}

Scenario noise_burst_scenario(std::uint64_t seed, int frames, const FusionConfig& config) {
  config.validate();
  if (frames < 1) throw InvalidArgument("scenario: need at least one frame");
  Rng rng(seed);
  Scenario s;
  s.config = config;
  const Eigen::Vector3d seat_a{1.2, 0.45, 0.0};
  const Eigen::Vector3d seat_b{1.2, -0.45, 0.05};
  const int turn = std::max(config.consistency_window * 8, 24);
  const int burst_max = std::max(config.consistency_window - 1, 0);
  int burst_left = 0;
  bool clean_gap = true;  // bursts never touch, so a burst run stays below K
  for (int i = 0; i < frames; ++i) {
    ScenarioFrame f;
    f.t = i * 0.96;
    const bool a_talks = (i / turn) % 2 == 0;
    const PersonId talker = a_talks ? 1 : 2;
    const Eigen::Vector3d sway{0.0, 0.03 * std::sin(0.2 * i), 0.02 * std::sin(0.13 * i)};
    f.tracks.push_back({1, seat_a + sway, true});
    f.tracks.push_back({2, seat_b - sway, !(i % 97 >= 60 && i % 97 < 64)});  // short tracker dropout
    if (burst_left == 0 && clean_gap && burst_max > 0 && rng.uniform() < 0.12) burst_left = rng.uniform_int(1, burst_max);
    clean_gap = burst_left == 0;
    Direction truth = direction_of(a_talks ? f.tracks[0].position : f.tracks[1].position);
    if (burst_left > 0) {
      --burst_left;
      // a cough, door or keyboard: points at the silent talker or anywhere
      truth = rng.uniform() < 0.5 ? direction_of(a_talks ? f.tracks[1].position : f.tracks[0].position)
                                  : Direction{rng.uniform(20.0, 160.0), std::floor(rng.uniform(0.0, 360.0))};
    }
    f.speaking = talker;  // the turn holder keeps the floor through a burst
    const double jt = std::clamp(truth.theta + rng.normal() * 2.0, 0.0, 180.0);
    double jp = std::fmod(truth.phi + rng.normal() * 2.0 + 360.0, 360.0);
    if (jp >= 360.0) jp = 0.0;
    f.doa = DoaObservation{{jt, jp}, 1.0};
    s.frames.push_back(std::move(f));
  }
  return s;
}

}  // namespace item::fusion
