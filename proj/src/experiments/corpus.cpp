#include "item/experiments/corpus.hpp"

#include "item/common/error.hpp"

namespace item::experiments {

std::vector<media::SynthSpec> corpus_specs(const CorpusConfig& c) {
  if (c.sequences < 1 || c.frames < 1) throw InvalidArgument("corpus: needs at least one sequence and frame");
  std::vector<media::SynthSpec> out;
  for (int i = 0; i < c.sequences; ++i) {
    media::SynthSpec s;
    s.width = c.width;
    s.height = c.height;
    s.frame_count = c.frames;
    s.seed = c.seed * 1000 + static_cast<std::uint64_t>(i);
    s.noise_sigma = c.noise_sigma;
    s.lighting_flicker = c.lighting_flicker;
    const bool busy = i % 3 == 2;
    s.actor_count = busy ? 2 : 1;
    s.motion_amplitude = busy ? 1.0 : (i % 3 == 0 ? 0.5 : 0.8);
    s.gesture_rate = busy ? 0.5 : (i % 3 == 1 ? 0.3 : 0.0);
    out.push_back(s);
  }
  return out;
}

CorpusItem make_corpus_item(const std::string& name, const media::SynthSpec& spec, chromakey::KeyColor key) {
  CorpusItem item;
  item.name = name;
  item.original = media::synth_chat_sequence(spec);
  item.keyed = item.original;
  const auto& masks = *item.original.masks;
  double fg = 0.0;
  for (std::size_t f = 0; f < masks.size(); ++f) {
    item.keyed.frames[f] = chromakey::apply_key(item.original.frames[f], masks[f], key);
    fg += static_cast<double>(masks[f].popcount()) / static_cast<double>(masks[f].size());
  }
  item.foreground_fraction = masks.empty() ? 0.0 : fg / static_cast<double>(masks.size());
  return item;
}

std::vector<CorpusItem> build_corpus(const CorpusConfig& c, chromakey::KeyColor key) {
  std::vector<CorpusItem> out;
  int i = 0;
  for (const auto& spec : corpus_specs(c)) out.push_back(make_corpus_item("chat" + std::to_string(i++), spec, key));
  return out;
}

}  // namespace item::experiments
