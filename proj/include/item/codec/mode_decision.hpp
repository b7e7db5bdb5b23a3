#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "item/codec/config.hpp"
#include "item/codec/macroblock.hpp"
#include "item/codec/motion.hpp"

namespace item::codec {

/// Events recorded while deciding one macroblock.
enum class Step : std::uint8_t {
  BlueBypass,            // newly exposed key-colored macroblock, I16MB only
  EarlySkip,             // Step 1: J(SKIP) below the skip threshold
  IntraEliminated,       // Step 2: J_intra > J(16x16)
  InterEliminated,       // Step 2: >= 3 intra neighbours and J_intra <= J(16x16)
  P8x8Eliminated,        // Step 3: J(16x16) < beta * J(8x8)
  Skip4x4Search,         // Step 4: one 8x8 block skipped its 4x4 search
  CandidateRdo,          // Step 5: RDO over the cheapest candidates
  Exhaustive,            // reference path: every mode
};

std::string_view to_string(Step s);

/// Everything decide_mode_* needs about one macroblock.
struct MbContext {
  const media::Frame& source;
  /// Previous source frame (key map of the co-located region); may be null.
  const media::Frame* previous_source;
  const FrameState& state;
  /// Motion estimator for P-frames; null for I-frames.
  const MotionEstimator* motion;
  int mb_x;
  int mb_y;
  const CodecConfig& config;
};

struct ModeDecision {
  MbInfo info;
  MbLevels levels;
  MbPixels recon;
  /// Motion cost of the chosen inter mode (infinity for intra modes).
  double j_mv = std::numeric_limits<double>::infinity();
  double j_intra = std::numeric_limits<double>::infinity();
  double j_rd = std::numeric_limits<double>::infinity();
  /// Half-pel motion costs used by the early-termination tests.
  double j_skip = std::numeric_limits<double>::infinity();
  double j_16x16 = std::numeric_limits<double>::infinity();
  double j_8x8 = std::numeric_limits<double>::infinity();
  std::size_t bits = 0;
  std::int64_t ssd = 0;
  std::vector<Step> trace;
  /// Modes that reached the final RDO.
  std::vector<MbType> candidates;
  std::uint64_t satd_calls = 0;

  bool traced(Step s) const;
};

/// The coarse-to-fine decision: blue bypass, early SKIP, selective
/// intra/inter elimination, beta-gated P8x8 elimination, 4x4 pruning and RDO
/// over at most three cheapest candidates with quarter-pel refinement.
ModeDecision decide_mode_fast(const MbContext& ctx);

/// Exhaustive reference: every mode with quarter-pel motion and full RDO.
/// Its candidate set contains every configuration decide_mode_fast can
/// produce, so its RD cost is never higher.
ModeDecision decide_mode_full(const MbContext& ctx);

/// Fast per-4x4 intra estimate over the three edge-selected modes:
/// SATD + lambda * 4 * (mode != most probable). Returns J_I4MB and fills the
/// resulting I4MB configuration.
struct IntraCosts {
  double j_i4mb = 0.0;
  double j_i16mb = 0.0;
  int best_i16_mode = kI16DC;
  MbInfo i4_info;
  MbLevels i4_levels;
  MbPixels i4_recon;
};
IntraCosts intra_costs(const MbContext& ctx);

/// Number of intra-coded macroblocks among left, top, top-left, top-right.
int intra_neighbor_count(const FrameState& st, int mb_x, int mb_y);

/// True when the macroblock is entirely key-colored in `current` but not in
/// `previous`.
bool newly_exposed_key_block(const MbContext& ctx);

}  // namespace item::codec
