#include "item/codec/macroblock.hpp"

#include <algorithm>

#include "item/common/error.hpp"

namespace item::codec {
namespace {

constexpr int kMaxLevel = 2047;
constexpr int kMaxMv = 4096;

inline std::uint8_t clip8(int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); }

int median3(int a, int b, int c) { return std::max(std::min(a, b), std::min(std::max(a, b), c)); }

std::uint32_t coded_block_pattern(const MbLevels& levels) {
  std::uint32_t cbp = 0;
  for (int b = 0; b < 24; ++b) {
    bool nz = false;
    for (int v : levels.blocks[b]) nz = nz || v != 0;
    if (!nz) continue;
    if (b < 16) {
      cbp |= 1u << ((b / 8) * 2 + (b % 4) / 2);
    } else {
      cbp |= 1u << 4;
    }
  }
  return cbp;
}

bool block_in_cbp(int b, std::uint32_t cbp) {
  if (b < 16) return (cbp >> ((b / 8) * 2 + (b % 4) / 2)) & 1u;
  return (cbp >> 4) & 1u;
}

void read_block_tokens(BitReader& in, std::array<std::int32_t, 16>& block) {
  block.fill(0);
  int pos = 0;
  for (;;) {
    const std::uint32_t t = in.get_ue();
    if (t == 0) return;
    if (t > 16) throw CorruptStream("macroblock: run out of range");
    pos += static_cast<int>(t - 1);
    if (pos >= 16) throw CorruptStream("macroblock: coefficient index out of range");
    const std::int32_t level = in.get_se();
    if (level == 0 || level > kMaxLevel || level < -kMaxLevel) throw CorruptStream("macroblock: illegal level");
    block[kZigzag4x4[pos]] = level;
    ++pos;
  }
}

}  // namespace

std::string_view to_string(MbType t) {
  switch (t) {
    case MbType::Skip: return "SKIP";
    case MbType::Inter16x16: return "P16x16";
    case MbType::Inter16x8: return "P16x8";
    case MbType::Inter8x16: return "P8x16";
    case MbType::P8x8: return "P8x8";
    case MbType::I4MB: return "I4MB";
    case MbType::I16MB: return "I16MB";
  }
  return "?";
}

std::vector<Partition> partitions_of(const MbInfo& info) {
  switch (info.type) {
    case MbType::Skip:
    case MbType::Inter16x16: return {{0, 0, 16, 16}};
    case MbType::Inter16x8: return {{0, 0, 16, 8}, {0, 8, 16, 8}};
    case MbType::Inter8x16: return {{0, 0, 8, 16}, {8, 0, 8, 16}};
    case MbType::P8x8: {
      std::vector<Partition> parts;
      for (int q = 0; q < 4; ++q) {
        const int ox = (q % 2) * 8;
        const int oy = (q / 2) * 8;
        switch (info.sub[q]) {
          case SubType::Sub8x8: parts.push_back({ox, oy, 8, 8}); break;
          case SubType::Sub8x4:
            parts.push_back({ox, oy, 8, 4});
            parts.push_back({ox, oy + 4, 8, 4});
            break;
          case SubType::Sub4x8:
            parts.push_back({ox, oy, 4, 8});
            parts.push_back({ox + 4, oy, 4, 8});
            break;
          case SubType::Sub4x4:
            for (int k = 0; k < 4; ++k) parts.push_back({ox + (k % 2) * 4, oy + (k / 2) * 4, 4, 4});
            break;
        }
      }
      return parts;
    }
    default: return {};
  }
}

void assign_mv(MbInfo& info, const Partition& part, MotionVector mv) {
  for (int by = part.y / 4; by < (part.y + part.h) / 4; ++by) {
    for (int bx = part.x / 4; bx < (part.x + part.w) / 4; ++bx) info.mv[by * 4 + bx] = mv;
  }
}

FrameState::FrameState(int width, int height, bool p, int q, const RefPicture* r)
    : mbs_x(width / 16), mbs_y(height / 16), p_frame(p), qp(q), ref(r), recon(width, height),
      info(static_cast<std::size_t>(mbs_x) * mbs_y), decided(static_cast<std::size_t>(mbs_x) * mbs_y, 0) {}

const MbInfo* FrameState::neighbor(int mb_x, int mb_y) const {
  if (mb_x < 0 || mb_y < 0 || mb_x >= mbs_x || mb_y >= mbs_y) return nullptr;
  const std::size_t i = static_cast<std::size_t>(mb_y) * mbs_x + mb_x;
  return decided[i] ? &info[i] : nullptr;
}

void FrameState::commit(int mb_x, int mb_y, const MbInfo& mb, const MbPixels& px) {
  const std::size_t i = static_cast<std::size_t>(mb_y) * mbs_x + mb_x;
  info[i] = mb;
  decided[i] = 1;
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) recon.y(mb_x * 16 + c, mb_y * 16 + r) = px.y[r * 16 + c];
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      recon.cb(mb_x * 8 + c, mb_y * 8 + r) = px.cb[r * 8 + c];
      recon.cr(mb_x * 8 + c, mb_y * 8 + r) = px.cr[r * 8 + c];
    }
  }
}

MotionVector predict_mv(const FrameState& st, int mb_x, int mb_y) {
  const MbInfo* a = st.neighbor(mb_x - 1, mb_y);
  const MbInfo* b = st.neighbor(mb_x, mb_y - 1);
  const MbInfo* c = st.neighbor(mb_x + 1, mb_y - 1);
  int c_blk = 12;
  if (!c) {
    c = st.neighbor(mb_x - 1, mb_y - 1);
    c_blk = 15;
  }
  if (a && !b && !c) return is_inter(a->type) ? a->mv[3] : MotionVector{};
  auto mv_of = [](const MbInfo* m, int blk) { return (m && is_inter(m->type)) ? m->mv[blk] : MotionVector{}; };
  const MotionVector va = mv_of(a, 3);
  const MotionVector vb = mv_of(b, 12);
  const MotionVector vc = mv_of(c, c_blk);
  return {median3(va.dx, vb.dx, vc.dx), median3(va.dy, vb.dy, vc.dy)};
}

int most_probable_mode(const FrameState& st, int mb_x, int mb_y, int blk, const std::array<std::uint8_t, 16>& current) {
  const int bx = blk % 4;
  const int by = blk / 4;
  int left = kI4DC;
  int top = kI4DC;
  if (bx > 0) {
    left = current[blk - 1];
  } else if (const MbInfo* m = st.neighbor(mb_x - 1, mb_y); m && m->type == MbType::I4MB) {
    left = m->i4_modes[by * 4 + 3];
  }
  if (by > 0) {
    top = current[blk - 4];
  } else if (const MbInfo* m = st.neighbor(mb_x, mb_y - 1); m && m->type == MbType::I4MB) {
    top = m->i4_modes[12 + bx];
  }
  return std::min(left, top);
}

Intra4Neighbors intra4_neighbors(const FrameState& st, int mb_x, int mb_y, int blk,
                                 const std::array<std::uint8_t, 256>& local) {
  const int bx = blk % 4;
  const int by = blk / 4;
  const int mx = mb_x * 16;
  const int my = mb_y * 16;
  const int x0 = mx + 4 * bx;
  const int y0 = my + 4 * by;
  auto sample = [&](int x, int y) -> int {
    if (x >= mx && x < mx + 16 && y >= my && y < my + 16) return local[(y - my) * 16 + (x - mx)];
    return st.recon.y(x, y);
  };
  Intra4Neighbors n;
  n.has_top = y0 > 0;
  n.has_left = x0 > 0;
  n.top.fill(128);
  n.left.fill(128);
  if (n.has_top) {
    for (int i = 0; i < 4; ++i) n.top[i] = sample(x0 + i, y0 - 1);
    bool tr = false;
    if (by == 0) {
      tr = bx < 3 || mb_x + 1 < st.mbs_x;
    } else {
      tr = bx < 3;
    }
    for (int i = 4; i < 8; ++i) n.top[i] = tr ? sample(x0 + i, y0 - 1) : n.top[3];
  }
  if (n.has_left) {
    for (int i = 0; i < 4; ++i) n.left[i] = sample(x0 - 1, y0 + i);
  }
  n.top_left = (n.has_top && n.has_left) ? sample(x0 - 1, y0 - 1) : 128;
  return n;
}

Intra16Neighbors intra16_neighbors(const FrameState& st, int mb_x, int mb_y) {
  Intra16Neighbors n;
  const int x0 = mb_x * 16;
  const int y0 = mb_y * 16;
  n.has_top = mb_y > 0;
  n.has_left = mb_x > 0;
  n.top.fill(128);
  n.left.fill(128);
  if (n.has_top)
    for (int i = 0; i < 16; ++i) n.top[i] = st.recon.y(x0 + i, y0 - 1);
  if (n.has_left)
    for (int i = 0; i < 16; ++i) n.left[i] = st.recon.y(x0 - 1, y0 + i);
  n.top_left = (n.has_top && n.has_left) ? st.recon.y(x0 - 1, y0 - 1) : 128;
  return n;
}

Intra16Neighbors chroma_neighbors(const FrameState& st, int mb_x, int mb_y, bool cr) {
  Intra16Neighbors n;
  const int x0 = mb_x * 8;
  const int y0 = mb_y * 8;
  auto at = [&](int x, int y) -> int { return cr ? st.recon.cr(x, y) : st.recon.cb(x, y); };
  n.has_top = mb_y > 0;
  n.has_left = mb_x > 0;
  n.top.fill(128);
  n.left.fill(128);
  if (n.has_top)
    for (int i = 0; i < 8; ++i) n.top[i] = at(x0 + i, y0 - 1);
  if (n.has_left)
    for (int i = 0; i < 8; ++i) n.left[i] = at(x0 - 1, y0 + i);
  n.top_left = (n.has_top && n.has_left) ? at(x0 - 1, y0 - 1) : 128;
  return n;
}

MbPixels inter_prediction(const RefPicture& ref, int mb_x, int mb_y, const MbInfo& info) {
  MbPixels p;
  const int x0 = mb_x * 16;
  const int y0 = mb_y * 16;
  for (const Partition& part : partitions_of(info)) {
    const MotionVector mv = info.mv[(part.y / 4) * 4 + part.x / 4];
    ref.predict_luma(x0 + part.x, y0 + part.y, part.w, part.h, mv, p.y.data() + part.y * 16 + part.x, 16);
    ref.predict_chroma(mb_x * 8 + part.x / 2, mb_y * 8 + part.y / 2, part.w / 2, part.h / 2, mv,
                       p.cb.data() + (part.y / 2) * 8 + part.x / 2, p.cr.data() + (part.y / 2) * 8 + part.x / 2, 8);
  }
  return p;
}

MbPixels source_pixels(const media::Frame& src, int mb_x, int mb_y) {
  MbPixels p;
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) p.y[r * 16 + c] = src.y(mb_x * 16 + c, mb_y * 16 + r);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      p.cb[r * 8 + c] = src.cb(mb_x * 8 + c, mb_y * 8 + r);
      p.cr[r * 8 + c] = src.cr(mb_x * 8 + c, mb_y * 8 + r);
    }
  }
  return p;
}

void add_residual(std::uint8_t* pred, int stride, const Block4x4& residual) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) pred[r * stride + c] = clip8(pred[r * stride + c] + residual[r * 4 + c]);
}

namespace {

void code_block(const std::uint8_t* src, const std::uint8_t* pred, std::uint8_t* recon, int stride, int qp, bool intra,
                std::array<std::int32_t, 16>& levels) {
  Block4x4 res{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) res[r * 4 + c] = src[r * stride + c] - pred[r * stride + c];
  Block4x4 lv{};
  Block4x4 rres{};
  code_residual(res, qp, intra, lv, rres);
  levels = lv;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) recon[r * stride + c] = clip8(pred[r * stride + c] + rres[r * 4 + c]);
}

void code_chroma(const MbPixels& source, const MbPixels& pred, int qp, bool intra, MbLevels& levels, MbPixels& recon) {
  for (int k = 0; k < 4; ++k) {
    const int off = (k / 2) * 4 * 8 + (k % 2) * 4;
    code_block(source.cb.data() + off, pred.cb.data() + off, recon.cb.data() + off, 8, qp, intra, levels.blocks[16 + k]);
    code_block(source.cr.data() + off, pred.cr.data() + off, recon.cr.data() + off, 8, qp, intra, levels.blocks[20 + k]);
  }
}

}  // namespace

void code_macroblock_residual(const MbPixels& source, const MbPixels& pred, int qp, bool intra, MbLevels& levels,
                              MbPixels& recon, bool luma, bool chroma) {
  recon = pred;
  if (luma) {
    for (int b = 0; b < 16; ++b) {
      const int off = (b / 4) * 4 * 16 + (b % 4) * 4;
      code_block(source.y.data() + off, pred.y.data() + off, recon.y.data() + off, 16, qp, intra, levels.blocks[b]);
    }
  } else {
    for (int b = 0; b < 16; ++b) levels.blocks[b].fill(0);
  }
  if (chroma) {
    code_chroma(source, pred, qp, intra, levels, recon);
  } else {
    for (int b = 16; b < 24; ++b) levels.blocks[b].fill(0);
  }
}

void code_i4_macroblock(const FrameState& st, int mb_x, int mb_y, const MbPixels& source, const Intra4Chooser& choose,
                        MbInfo& info, MbLevels& levels, MbPixels& recon) {
  info = MbInfo{};
  info.type = MbType::I4MB;
  for (int blk = 0; blk < 16; ++blk) {
    const Intra4Neighbors n = intra4_neighbors(st, mb_x, mb_y, blk, recon.y);
    const int mpm = most_probable_mode(st, mb_x, mb_y, blk, info.i4_modes);
    const int off = (blk / 4) * 4 * 16 + (blk % 4) * 4;
    std::array<std::uint8_t, 16> src4{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) src4[r * 4 + c] = source.y[off + r * 16 + c];
    const int mode = choose(blk, n, mpm, src4);
    info.i4_modes[blk] = static_cast<std::uint8_t>(mode);
    const auto pred4 = predict_intra4(n, mode);
    std::array<std::uint8_t, 16> rec4{};
    code_block(src4.data(), pred4.data(), rec4.data(), 4, st.qp, true, levels.blocks[blk]);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) recon.y[off + r * 16 + c] = rec4[r * 4 + c];
  }
  MbPixels pred;
  pred.cb = predict_chroma_dc(chroma_neighbors(st, mb_x, mb_y, false));
  pred.cr = predict_chroma_dc(chroma_neighbors(st, mb_x, mb_y, true));
  code_chroma(source, pred, st.qp, true, levels, recon);
}

MbPixels reconstruct_macroblock(const FrameState& st, int mb_x, int mb_y, const MbInfo& info, const MbLevels& levels) {
  MbPixels px;
  auto add_all = [&](bool luma) {
    if (luma) {
      for (int b = 0; b < 16; ++b) {
        const int off = (b / 4) * 4 * 16 + (b % 4) * 4;
        add_residual(px.y.data() + off, 16, reconstruct_residual(levels.blocks[b], st.qp));
      }
    }
    for (int k = 0; k < 4; ++k) {
      const int off = (k / 2) * 4 * 8 + (k % 2) * 4;
      add_residual(px.cb.data() + off, 8, reconstruct_residual(levels.blocks[16 + k], st.qp));
      add_residual(px.cr.data() + off, 8, reconstruct_residual(levels.blocks[20 + k], st.qp));
    }
  };
  if (is_inter(info.type)) {
    if (!st.ref) throw CorruptStream("macroblock: inter macroblock without reference");
    px = inter_prediction(*st.ref, mb_x, mb_y, info);
    add_all(true);
    return px;
  }
  px.cb = predict_chroma_dc(chroma_neighbors(st, mb_x, mb_y, false));
  px.cr = predict_chroma_dc(chroma_neighbors(st, mb_x, mb_y, true));
  if (info.type == MbType::I16MB) {
    px.y = predict_intra16(intra16_neighbors(st, mb_x, mb_y), info.i16_mode);
    add_all(true);
    return px;
  }
  for (int blk = 0; blk < 16; ++blk) {
    const Intra4Neighbors n = intra4_neighbors(st, mb_x, mb_y, blk, px.y);
    auto pred4 = predict_intra4(n, info.i4_modes[blk]);
    add_residual(pred4.data(), 4, reconstruct_residual(levels.blocks[blk], st.qp));
    const int off = (blk / 4) * 4 * 16 + (blk % 4) * 4;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) px.y[off + r * 16 + c] = pred4[r * 4 + c];
  }
  add_all(false);
  return px;
}

std::int64_t macroblock_ssd(const MbPixels& a, const MbPixels& b) {
  std::int64_t s = 0;
  for (int i = 0; i < 256; ++i) {
    const int d = a.y[i] - b.y[i];
    s += d * d;
  }
  for (int i = 0; i < 64; ++i) {
    const int d1 = a.cb[i] - b.cb[i];
    const int d2 = a.cr[i] - b.cr[i];
    s += d1 * d1 + d2 * d2;
  }
  return s;
}

template <class Sink>
void write_block_tokens(Sink& out, const std::array<std::int32_t, 16>& block) {
  int run = 0;
  for (int pos = 0; pos < 16; ++pos) {
    const std::int32_t v = block[kZigzag4x4[pos]];
    if (v == 0) {
      ++run;
      continue;
    }
    out.put_ue(static_cast<std::uint32_t>(run + 1));
    out.put_se(v);
    run = 0;
  }
  out.put_ue(0);
}

template <class Sink>
void write_macroblock(Sink& out, const FrameState& st, int mb_x, int mb_y, const MbInfo& info, const MbLevels& levels) {
  const auto type = static_cast<std::uint32_t>(info.type);
  if (st.p_frame) {
    out.put_ue(type);
  } else {
    out.put_ue(type - static_cast<std::uint32_t>(MbType::I4MB));
  }
  if (info.type == MbType::Skip) return;
  if (info.type == MbType::P8x8) {
    for (SubType s : info.sub) out.put_ue(static_cast<std::uint32_t>(s));
  }
  if (is_inter(info.type)) {
    const MotionVector pred = predict_mv(st, mb_x, mb_y);
    for (const Partition& part : partitions_of(info)) {
      const MotionVector mv = info.mv[(part.y / 4) * 4 + part.x / 4];
      out.put_se(mv.dx - pred.dx);
      out.put_se(mv.dy - pred.dy);
    }
  } else if (info.type == MbType::I4MB) {
    for (int blk = 0; blk < 16; ++blk) {
      const int mpm = most_probable_mode(st, mb_x, mb_y, blk, info.i4_modes);
      const int mode = info.i4_modes[blk];
      if (mode == mpm) {
        out.put_bit(true);
      } else {
        out.put_bit(false);
        out.put_bits(static_cast<std::uint32_t>(mode < mpm ? mode : mode - 1), 3);
      }
    }
  } else {
    out.put_ue(info.i16_mode);
  }
  const std::uint32_t cbp = coded_block_pattern(levels);
  out.put_ue(cbp);
  for (int b = 0; b < 24; ++b) {
    if (block_in_cbp(b, cbp)) write_block_tokens(out, levels.blocks[b]);
  }
}

template void write_macroblock<BitWriter>(BitWriter&, const FrameState&, int, int, const MbInfo&, const MbLevels&);
template void write_macroblock<BitCounter>(BitCounter&, const FrameState&, int, int, const MbInfo&, const MbLevels&);
template void write_block_tokens<BitWriter>(BitWriter&, const std::array<std::int32_t, 16>&);
template void write_block_tokens<BitCounter>(BitCounter&, const std::array<std::int32_t, 16>&);

void read_macroblock(BitReader& in, const FrameState& st, int mb_x, int mb_y, MbInfo& info, MbLevels& levels) {
  info = MbInfo{};
  levels = MbLevels{};
  const std::uint32_t code = in.get_ue();
  if (st.p_frame) {
    if (code >= kMbTypeCount) throw CorruptStream("macroblock: mode code out of range");
    info.type = static_cast<MbType>(code);
  } else {
    if (code > 1) throw CorruptStream("macroblock: intra mode code out of range");
    info.type = static_cast<MbType>(code + static_cast<std::uint32_t>(MbType::I4MB));
  }
  if (info.type == MbType::Skip) {
    const MotionVector pred = predict_mv(st, mb_x, mb_y);
    info.mv.fill(pred);
    return;
  }
  if (info.type == MbType::P8x8) {
    for (auto& s : info.sub) {
      const std::uint32_t v = in.get_ue();
      if (v > 3) throw CorruptStream("macroblock: sub-partition code out of range");
      s = static_cast<SubType>(v);
    }
  }
  if (is_inter(info.type)) {
    const MotionVector pred = predict_mv(st, mb_x, mb_y);
    for (const Partition& part : partitions_of(info)) {
      const std::int64_t dx = static_cast<std::int64_t>(pred.dx) + in.get_se();
      const std::int64_t dy = static_cast<std::int64_t>(pred.dy) + in.get_se();
      if (dx > kMaxMv || dx < -kMaxMv || dy > kMaxMv || dy < -kMaxMv) throw CorruptStream("macroblock: vector out of range");
      assign_mv(info, part, {static_cast<int>(dx), static_cast<int>(dy)});
    }
  } else if (info.type == MbType::I4MB) {
    for (int blk = 0; blk < 16; ++blk) {
      const int mpm = most_probable_mode(st, mb_x, mb_y, blk, info.i4_modes);
      if (in.get_bit()) {
        info.i4_modes[blk] = static_cast<std::uint8_t>(mpm);
      } else {
        const int rem = static_cast<int>(in.get_bits(3));
        info.i4_modes[blk] = static_cast<std::uint8_t>(rem < mpm ? rem : rem + 1);
      }
    }
  } else {
    const std::uint32_t mode = in.get_ue();
    if (mode > 3) throw CorruptStream("macroblock: intra 16x16 mode out of range");
    info.i16_mode = static_cast<std::uint8_t>(mode);
  }
  const std::uint32_t cbp = in.get_ue();
  if (cbp > 31) throw CorruptStream("macroblock: coded block pattern out of range");
  for (int b = 0; b < 24; ++b) {
    if (block_in_cbp(b, cbp)) {
      read_block_tokens(in, levels.blocks[b]);
    }
  }
}

}  // namespace item::codec
