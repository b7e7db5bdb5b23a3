#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "item/audio/avs.hpp"

namespace item::fusion {

using PersonId = int;

struct PersonTrack {
  PersonId id = 0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // metres, array coordinates
  bool visible = true;
};

struct FusionConfig {
  /// Consecutive identical observations needed to switch speakers.
  int consistency_window = 3;
  double gate_deg = 15.0;
  /// DOA frames with a spectrum peak below this are ignored (0 disables).
  double min_peak = 0.0;
  /// How long (frames) a track that disappeared can still trigger a hint.
  int lost_memory_frames = 30;

  void validate() const;
};

enum class EventKind { Hold, Switch, ReacquireHint };

struct FusionEvent {
  EventKind kind = EventKind::Hold;
  /// Switch: new speaker. ReacquireHint: the lost track's id.
  std::optional<PersonId> id;
  /// ReacquireHint: direction to look for the lost person.
  std::optional<audio::Direction> direction;

  friend bool operator==(const FusionEvent&, const FusionEvent&) = default;
};

struct Pending {
  PersonId id = 0;
  int count = 0;

  friend bool operator==(const Pending&, const Pending&) = default;
};

struct LostTrack {
  PersonId id = 0;
  audio::Direction direction;
  int lost_at = 0;
};

struct FusionState {
  std::optional<PersonId> active;
  std::optional<Pending> pending;
  std::vector<LostTrack> lost;
  std::vector<PersonTrack> last_tracks;
  int frame = 0;
};

/// Direction of a point seen from the array origin. Throws InvalidArgument at
/// the origin.
audio::Direction direction_of(const Eigen::Vector3d& position);

/// Visible track closest in angle to the DOA, within the gate; ties go to
/// the smaller id.
std::optional<PersonId> associate(const audio::Direction& doa, const std::vector<PersonTrack>& tracks, double gate_deg);

/// Identity automaton: none or the active id clears the pending run; another
/// id extends (or restarts) it, and a run of K promotes it. Returns Switch or Hold.
FusionEvent update(FusionState& state, std::optional<PersonId> observation, const FusionConfig& config);

struct DoaObservation {
  audio::Direction direction;
  double peak = 1.0;
};

/// One fused frame: association, the identity automaton, lost-track
/// bookkeeping and the reacquire hint when a DOA has no visible track but a
/// recently lost one lies within the gate.
FusionEvent step(FusionState& state, const std::optional<DoaObservation>& doa, const std::vector<PersonTrack>& tracks,
                 const FusionConfig& config);

struct ScenarioFrame {
  double t = 0.0;
  std::optional<DoaObservation> doa;
  std::vector<PersonTrack> tracks;
  /// Ground truth: who holds the floor (none during silence).
  std::optional<PersonId> speaking;
};

struct Scenario {
  FusionConfig config;
  std::vector<ScenarioFrame> frames;
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& json_text);
std::string scenario_to_json(const Scenario& s);

struct ScenarioReport {
  std::vector<FusionEvent> events;
  std::vector<std::optional<PersonId>> active;
  int switches = 0;
  /// Switches to someone other than the ground-truth speaker of that frame.
  int spurious_switches = 0;
  int hints = 0;
};

ScenarioReport run_scenario(const Scenario& s);
/// One JSON object per frame: frame, t, event, id, theta, phi, active.
void write_event_log(std::ostream& out, const Scenario& s, const ScenarioReport& r);

/// Two seated talkers taking turns, with short noise bursts (at most K-1
/// frames) whose DOA points at the silent talker or a random direction, a
/// tracking dropout and jittered DOA estimates.
Scenario noise_burst_scenario(std::uint64_t seed, int frames = 200, const FusionConfig& config = {});

}  // namespace item::fusion
