#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "item/codec/bitstream.hpp"
#include "item/codec/intra.hpp"
#include "item/codec/reference.hpp"
#include "item/codec/types.hpp"
#include "item/media/frame.hpp"

namespace item::codec {

/// Decoded samples of one macroblock.
struct MbPixels {
  std::array<std::uint8_t, 256> y{};
  std::array<std::uint8_t, 64> cb{};
  std::array<std::uint8_t, 64> cr{};
};

/// A rectangular motion partition inside a macroblock, in pixels.
struct Partition {
  int x = 0;
  int y = 0;
  int w = 16;
  int h = 16;
};

/// Partitions of an inter mode in bitstream order.
std::vector<Partition> partitions_of(const MbInfo& info);
/// Sets every 4x4 vector inside `part`.
void assign_mv(MbInfo& info, const Partition& part, MotionVector mv);

/// Per-frame coding state shared by encoder and decoder: the reconstruction
/// built so far in raster order plus the decided macroblock parameters.
struct FrameState {
  FrameState(int width, int height, bool p_frame, int qp, const RefPicture* ref);

  int mbs_x;
  int mbs_y;
  bool p_frame;
  int qp;
  const RefPicture* ref;
  media::Frame recon;
  std::vector<MbInfo> info;
  std::vector<std::uint8_t> decided;

  const MbInfo* neighbor(int mb_x, int mb_y) const;
  void commit(int mb_x, int mb_y, const MbInfo& mb, const MbPixels& px);
};

/// Median of the left, top and top-right (top-left when top-right is
/// missing) neighbours' adjacent 4x4 vectors; unavailable or intra
/// neighbours contribute (0, 0). Also the SKIP vector.
MotionVector predict_mv(const FrameState& st, int mb_x, int mb_y);

/// min(left mode, top mode); a missing or non-I4MB neighbour counts as DC.
int most_probable_mode(const FrameState& st, int mb_x, int mb_y, int blk, const std::array<std::uint8_t, 16>& current);

/// Samples around 4x4 luma block `blk`; in-macroblock samples come from `local`.
Intra4Neighbors intra4_neighbors(const FrameState& st, int mb_x, int mb_y, int blk, const std::array<std::uint8_t, 256>& local);
Intra16Neighbors intra16_neighbors(const FrameState& st, int mb_x, int mb_y);
Intra16Neighbors chroma_neighbors(const FrameState& st, int mb_x, int mb_y, bool cr);

/// Motion-compensated prediction of a whole inter macroblock (luma + chroma).
MbPixels inter_prediction(const RefPicture& ref, int mb_x, int mb_y, const MbInfo& info);

/// Source samples of one macroblock.
MbPixels source_pixels(const media::Frame& src, int mb_x, int mb_y);

/// Adds decoded residual of one 4x4 block to `pred` (in place, clipped).
void add_residual(std::uint8_t* pred, int stride, const Block4x4& residual);

/// Codes the residual of all 24 blocks of (source - prediction); `recon`
/// receives prediction + reconstructed residual.
void code_macroblock_residual(const MbPixels& source, const MbPixels& pred, int qp, bool intra, MbLevels& levels,
                              MbPixels& recon, bool luma, bool chroma);

/// Chooses the mode of 4x4 block `blk` given its neighbours, its most probable
/// mode and the source samples; returns the mode.
using Intra4Chooser = std::function<int(int blk, const Intra4Neighbors&, int mpm, const std::array<std::uint8_t, 16>& source)>;

/// Sequentially predicts, codes and reconstructs the 16 luma blocks of an
/// I4MB macroblock using `choose` for each block's mode, then codes chroma.
void code_i4_macroblock(const FrameState& st, int mb_x, int mb_y, const MbPixels& source, const Intra4Chooser& choose,
                        MbInfo& info, MbLevels& levels, MbPixels& recon);

/// Decoder-side reconstruction from parsed syntax.
MbPixels reconstruct_macroblock(const FrameState& st, int mb_x, int mb_y, const MbInfo& info, const MbLevels& levels);

/// Sum of squared differences over luma and both chroma planes.
std::int64_t macroblock_ssd(const MbPixels& a, const MbPixels& b);

/// Macroblock syntax (mode, sub-types, MV differences, intra modes, coded
/// block pattern, run/level tokens). Templated on BitWriter / BitCounter.
template <class Sink>
void write_macroblock(Sink& out, const FrameState& st, int mb_x, int mb_y, const MbInfo& info, const MbLevels& levels);

extern template void write_macroblock<BitWriter>(BitWriter&, const FrameState&, int, int, const MbInfo&, const MbLevels&);
extern template void write_macroblock<BitCounter>(BitCounter&, const FrameState&, int, int, const MbInfo&, const MbLevels&);

/// Parses one macroblock; throws CorruptStream on any illegal element.
void read_macroblock(BitReader& in, const FrameState& st, int mb_x, int mb_y, MbInfo& info, MbLevels& levels);

/// Tokens for one 4x4 block: ue(run + 1) se(level) per nonzero coefficient in
/// zigzag order, ue(0) as end of block.
template <class Sink>
void write_block_tokens(Sink& out, const std::array<std::int32_t, 16>& block);

extern template void write_block_tokens<BitWriter>(BitWriter&, const std::array<std::int32_t, 16>&);
extern template void write_block_tokens<BitCounter>(BitCounter&, const std::array<std::int32_t, 16>&);

}  // namespace item::codec
