#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "item/chromakey/chroma_key.hpp"
#include "item/media/synth.hpp"

namespace item::experiments {

struct CorpusConfig {
  int sequences = 3;
  int frames = 100;
  int width = 128;
  int height = 96;
  std::uint64_t seed = 1;
  double noise_sigma = 3.0;
  int lighting_flicker = 4;
};

struct CorpusItem {
  std::string name;
  media::VideoSequence original;
  /// Background replaced by the key color.
  media::VideoSequence keyed;
  /// Mean foreground share of the frame area.
  double foreground_fraction = 0.0;
};

/// Talking-head sequences; every third one has two actors and gestures.
std::vector<media::SynthSpec> corpus_specs(const CorpusConfig& c);
CorpusItem make_corpus_item(const std::string& name, const media::SynthSpec& spec, chromakey::KeyColor key = {});
std::vector<CorpusItem> build_corpus(const CorpusConfig& c, chromakey::KeyColor key = {});

}  // namespace item::experiments
