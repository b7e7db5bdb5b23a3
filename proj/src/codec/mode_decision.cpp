#include "item/codec/mode_decision.hpp"

#include <algorithm>
#include <array>

#include "item/chromakey/chroma_key.hpp"
#include "item/codec/bitstream.hpp"
#include "item/codec/transform.hpp"

namespace item::codec {

std::string_view to_string(Step s) {
  switch (s) {
    case Step::BlueBypass: return "blue-bypass";
    case Step::EarlySkip: return "step1-skip";
    case Step::IntraEliminated: return "step2-no-intra";
    case Step::InterEliminated: return "step2-no-inter";
    case Step::P8x8Eliminated: return "step3-no-p8x8";
    case Step::Skip4x4Search: return "step4-no-4x4";
    case Step::CandidateRdo: return "step5-rdo";
    case Step::Exhaustive: return "exhaustive";
  }
  return "?";
}

bool ModeDecision::traced(Step s) const { return std::find(trace.begin(), trace.end(), s) != trace.end(); }

namespace {

struct Candidate {
  MbInfo info;
  MbLevels levels;
  MbPixels recon;
  std::size_t bits = 0;
  std::int64_t ssd = 0;
  double j = 0.0;
};

void finish_rd(const MbContext& ctx, const MbPixels& src, Candidate& c) {
  BitCounter bc;
  write_macroblock(bc, ctx.state, ctx.mb_x, ctx.mb_y, c.info, c.levels);
  c.bits = bc.bit_count();
  c.ssd = macroblock_ssd(src, c.recon);
  c.j = static_cast<double>(c.ssd) + ctx.config.lambda_mode() * static_cast<double>(c.bits);
}

Candidate rd_inter(const MbContext& ctx, const MbPixels& src, const MbInfo& info) {
  Candidate c;
  c.info = info;
  const MbPixels pred = inter_prediction(*ctx.state.ref, ctx.mb_x, ctx.mb_y, info);
  if (info.type == MbType::Skip) {
    c.recon = pred;
  } else {
    code_macroblock_residual(src, pred, ctx.state.qp, false, c.levels, c.recon, true, true);
  }
  finish_rd(ctx, src, c);
  return c;
}

MbPixels chroma_dc_prediction(const MbContext& ctx) {
  MbPixels pred;
  pred.cb = predict_chroma_dc(chroma_neighbors(ctx.state, ctx.mb_x, ctx.mb_y, false));
  pred.cr = predict_chroma_dc(chroma_neighbors(ctx.state, ctx.mb_x, ctx.mb_y, true));
  return pred;
}

Candidate rd_i16(const MbContext& ctx, const MbPixels& src, int mode) {
  Candidate c;
  c.info.type = MbType::I16MB;
  c.info.i16_mode = static_cast<std::uint8_t>(mode);
  MbPixels pred = chroma_dc_prediction(ctx);
  pred.y = predict_intra16(intra16_neighbors(ctx.state, ctx.mb_x, ctx.mb_y), mode);
  code_macroblock_residual(src, pred, ctx.state.qp, true, c.levels, c.recon, true, true);
  finish_rd(ctx, src, c);
  return c;
}

Candidate rd_i4(const MbContext& ctx, const MbPixels& src, const Intra4Chooser& choose) {
  Candidate c;
  code_i4_macroblock(ctx.state, ctx.mb_x, ctx.mb_y, src, choose, c.info, c.levels, c.recon);
  finish_rd(ctx, src, c);
  return c;
}

// Per-block RD choice over all nine modes: SSD + lambda_mode * (mode bits + token bits).
Intra4Chooser rd_greedy_chooser(const MbContext& ctx) {
  const int qp = ctx.state.qp;
  const double lambda = ctx.config.lambda_mode();
  return [qp, lambda](int, const Intra4Neighbors& n, int mpm, const std::array<std::uint8_t, 16>& s) {
    int best = 0;
    double best_j = 0.0;
    for (int m = 0; m < 9; ++m) {
      const auto pred = predict_intra4(n, m);
      Block4x4 res{};
      for (int i = 0; i < 16; ++i) res[i] = s[i] - pred[i];
      Block4x4 lv{};
      Block4x4 rr{};
      code_residual(res, qp, true, lv, rr);
      std::int64_t ssd = 0;
      for (int i = 0; i < 16; ++i) {
        const int r = std::clamp(pred[i] + rr[i], 0, 255);
        ssd += (s[i] - r) * (s[i] - r);
      }
      BitCounter bc;
      write_block_tokens(bc, lv);
      const double j = static_cast<double>(ssd) + lambda * static_cast<double>(bc.bit_count() + (m == mpm ? 1 : 4));
      if (m == 0 || j < best_j) {
        best = m;
        best_j = j;
      }
    }
    return best;
  };
}

MbInfo inter_info(MbType type, const std::array<MotionVector, 4>& mvs, const std::array<SubType, 4>& sub = {}) {
  MbInfo info;
  info.type = type;
  info.sub = sub;
  std::size_t k = 0;
  for (const Partition& p : partitions_of(info)) assign_mv(info, p, mvs[k++]);
  return info;
}

// P8x8 sub-partition geometry relative to the macroblock origin.
std::vector<Partition> sub_parts(int q, SubType s) {
  const int x = (q % 2) * 8;
  const int y = (q / 2) * 8;
  switch (s) {
    case SubType::Sub8x8: return {{x, y, 8, 8}};
    case SubType::Sub8x4: return {{x, y, 8, 4}, {x, y + 4, 8, 4}};
    case SubType::Sub4x8: return {{x, y, 4, 8}, {x + 4, y, 4, 8}};
    case SubType::Sub4x4: return {{x, y, 4, 4}, {x + 4, y, 4, 4}, {x, y + 4, 4, 4}, {x + 4, y + 4, 4, 4}};
  }
  return {};
}

// Motion results for every partition of one shape at half and quarter precision.
struct ShapeSearch {
  std::vector<Partition> parts;
  std::vector<MotionResult> half;
  std::vector<MotionResult> quarter;
  double half_cost = 0.0;
  double quarter_cost = 0.0;
};

ShapeSearch search_shape(const MbContext& ctx, const std::vector<Partition>& parts, MotionVector pred, bool quarter) {
  ShapeSearch s;
  s.parts = parts;
  const int x0 = ctx.mb_x * 16;
  const int y0 = ctx.mb_y * 16;
  for (const Partition& p : parts) {
    const MotionResult h = ctx.motion->search(x0 + p.x, y0 + p.y, p.w, p.h, MvPrecision::Half, pred);
    s.half.push_back(h);
    s.half_cost += h.cost;
    if (quarter) {
      const MotionResult q = ctx.motion->refine(x0 + p.x, y0 + p.y, p.w, p.h, pred, h, 1);
      s.quarter.push_back(q);
      s.quarter_cost += q.cost;
    }
  }
  return s;
}

void refine_shape(const MbContext& ctx, ShapeSearch& s, MotionVector pred) {
  if (!s.quarter.empty()) return;
  const int x0 = ctx.mb_x * 16;
  const int y0 = ctx.mb_y * 16;
  for (std::size_t i = 0; i < s.parts.size(); ++i) {
    const Partition& p = s.parts[i];
    const MotionResult q = ctx.motion->refine(x0 + p.x, y0 + p.y, p.w, p.h, pred, s.half[i], 1);
    s.quarter.push_back(q);
    s.quarter_cost += q.cost;
  }
}

std::array<MotionVector, 4> quarter_mvs(const ShapeSearch& s) {
  std::array<MotionVector, 4> out{};
  for (std::size_t i = 0; i < s.quarter.size() && i < 4; ++i) out[i] = s.quarter[i].mv;
  return out;
}

// Searches of all four sub-types of one 8x8 quadrant.
struct QuadSearch {
  std::array<ShapeSearch, 4> by_sub;
  bool searched[4] = {false, false, false, false};
};

MbInfo p8x8_info(const std::array<QuadSearch, 4>& quads, const std::array<SubType, 4>& sub) {
  MbInfo info;
  info.type = MbType::P8x8;
  info.sub = sub;
  for (int q = 0; q < 4; ++q) {
    const ShapeSearch& s = quads[q].by_sub[static_cast<int>(sub[q])];
    for (std::size_t i = 0; i < s.parts.size(); ++i) assign_mv(info, s.parts[i], s.quarter[i].mv);
  }
  return info;
}

// Step 4 sub-type rule on half-pel costs: 8x8 wins outright when cheaper than
// both 8x4 and 4x8, otherwise the cheapest of the four shapes.
SubType fast_sub_type(const QuadSearch& q) {
  const double c8 = q.by_sub[0].half_cost;
  if (c8 < std::min(q.by_sub[1].half_cost, q.by_sub[2].half_cost)) return SubType::Sub8x8;
  int best = 0;
  for (int s = 1; s < 4; ++s)
    if (q.by_sub[s].half_cost < q.by_sub[best].half_cost) best = s;
  return static_cast<SubType>(best);
}

void adopt(ModeDecision& d, Candidate&& c) {
  d.info = c.info;
  d.levels = c.levels;
  d.recon = c.recon;
  d.bits = c.bits;
  d.ssd = c.ssd;
  d.j_rd = c.j;
}

struct SatdScope {
  std::uint64_t start = satd_call_count();
  std::uint64_t elapsed() const { return satd_call_count() - start; }
};

}  // namespace

int intra_neighbor_count(const FrameState& st, int mb_x, int mb_y) {
  int n = 0;
  const int dx[4] = {-1, 0, -1, 1};
  const int dy[4] = {0, -1, -1, -1};
  for (int k = 0; k < 4; ++k) {
    const MbInfo* nb = st.neighbor(mb_x + dx[k], mb_y + dy[k]);
    if (nb && is_intra(nb->type)) ++n;
  }
  return n;
}

bool newly_exposed_key_block(const MbContext& ctx) {
  if (!ctx.previous_source) return false;
  return chromakey::macroblock_is_key(ctx.source, ctx.mb_x, ctx.mb_y, ctx.config.key) &&
         !chromakey::macroblock_is_key(*ctx.previous_source, ctx.mb_x, ctx.mb_y, ctx.config.key);
}

IntraCosts intra_costs(const MbContext& ctx) {
  IntraCosts out;
  const MbPixels src = source_pixels(ctx.source, ctx.mb_x, ctx.mb_y);
  const double lambda = ctx.config.lambda_mv();
  double total = 0.0;
  const Intra4Chooser eq2 = [&](int, const Intra4Neighbors& n, int mpm, const std::array<std::uint8_t, 16>& s) {
    Block4x4 blk{};
    for (int i = 0; i < 16; ++i) blk[i] = s[i];
    const auto modes = select_intra4_modes(dominant_edge_angle(forward_transform(blk)), mpm);
    int best = -1;
    double best_j = 0.0;
    for (int m : modes) {
      const auto pred = predict_intra4(n, m);
      const double j = satd4x4(s.data(), 4, pred.data(), 4) + lambda * 4.0 * (m == mpm ? 0 : 1);
      if (best < 0 || j < best_j || (j == best_j && m < best)) {
        best = m;
        best_j = j;
      }
    }
    total += best_j;
    return best;
  };
  code_i4_macroblock(ctx.state, ctx.mb_x, ctx.mb_y, src, eq2, out.i4_info, out.i4_levels, out.i4_recon);
  out.j_i4mb = total;

  const Intra16Neighbors n16 = intra16_neighbors(ctx.state, ctx.mb_x, ctx.mb_y);
  for (int m = 0; m < 4; ++m) {
    const auto pred = predict_intra16(n16, m);
    const int s = satd({src.y.data(), 16, 16, 16}, {pred.data(), 16, 16, 16});
    if (m == 0 || s < out.j_i16mb) {
      out.j_i16mb = s;
      out.best_i16_mode = m;
    }
  }
  return out;
}

ModeDecision decide_mode_fast(const MbContext& ctx) {
  SatdScope scope;
  ModeDecision d;
  const MbPixels src = source_pixels(ctx.source, ctx.mb_x, ctx.mb_y);
  const bool p_frame = ctx.state.p_frame && ctx.motion;

  if (p_frame && newly_exposed_key_block(ctx)) {
    d.trace.push_back(Step::BlueBypass);
    d.candidates = {MbType::I16MB};
    for (int m = 0; m < 4; ++m) {
      Candidate c = rd_i16(ctx, src, m);
      if (m == 0 || c.j < d.j_rd) adopt(d, std::move(c));
    }
    d.satd_calls = scope.elapsed();
    return d;
  }

  if (!p_frame) {
    const IntraCosts ic = intra_costs(ctx);
    d.j_intra = std::min(ic.j_i4mb, ic.j_i16mb);
    d.trace.push_back(Step::CandidateRdo);
    d.candidates = {MbType::I4MB, MbType::I16MB};
    Candidate i4;
    i4.info = ic.i4_info;
    i4.levels = ic.i4_levels;
    i4.recon = ic.i4_recon;
    finish_rd(ctx, src, i4);
    Candidate i16 = rd_i16(ctx, src, ic.best_i16_mode);
    if (i16.j < i4.j) {
      adopt(d, std::move(i16));
    } else {
      adopt(d, std::move(i4));
    }
    d.satd_calls = scope.elapsed();
    return d;
  }

  // Step 1
  const MotionVector pred = predict_mv(ctx.state, ctx.mb_x, ctx.mb_y);
  const int x0 = ctx.mb_x * 16;
  const int y0 = ctx.mb_y * 16;
  d.j_skip = ctx.motion->satd_at(x0, y0, 16, 16, pred);
  if (d.j_skip < skip_threshold(ctx.state.qp)) {
    d.trace.push_back(Step::EarlySkip);
    d.candidates = {MbType::Skip};
    MbInfo skip;
    skip.mv.fill(pred);
    adopt(d, rd_inter(ctx, src, skip));
    d.j_mv = d.j_skip;
    d.satd_calls = scope.elapsed();
    return d;
  }

  // Half-pel motion for the large shapes.
  ShapeSearch s16 = search_shape(ctx, {{0, 0, 16, 16}}, pred, false);
  ShapeSearch s16x8 = search_shape(ctx, {{0, 0, 16, 8}, {0, 8, 16, 8}}, pred, false);
  ShapeSearch s8x16 = search_shape(ctx, {{0, 0, 8, 16}, {8, 0, 8, 16}}, pred, false);
  std::array<QuadSearch, 4> quads;
  for (int q = 0; q < 4; ++q) {
    quads[q].by_sub[0] = search_shape(ctx, sub_parts(q, SubType::Sub8x8), pred, false);
    quads[q].searched[0] = true;
  }
  d.j_16x16 = s16.half_cost;
  d.j_8x8 = 0.0;
  for (const QuadSearch& q : quads) d.j_8x8 += q.by_sub[0].half_cost;

  // Step 2
  const IntraCosts ic = intra_costs(ctx);
  d.j_intra = std::min(ic.j_i4mb, ic.j_i16mb);
  bool intra_alive = true;
  bool inter_alive = true;
  bool p8x8_alive = true;
  if (d.j_intra > d.j_16x16) {
    intra_alive = false;
    d.trace.push_back(Step::IntraEliminated);
  } else if (intra_neighbor_count(ctx.state, ctx.mb_x, ctx.mb_y) >= 3) {
    inter_alive = false;
    d.trace.push_back(Step::InterEliminated);
  }

  std::array<SubType, 4> sub{};
  double j_p8x8 = 0.0;
  if (inter_alive) {
    // Step 3
    if (d.j_16x16 < ctx.config.beta.at(ctx.state.qp) * d.j_8x8) {
      p8x8_alive = false;
      d.trace.push_back(Step::P8x8Eliminated);
    }
    // Step 4
    if (p8x8_alive) {
      for (int q = 0; q < 4; ++q) {
        QuadSearch& qs = quads[q];
        qs.by_sub[1] = search_shape(ctx, sub_parts(q, SubType::Sub8x4), pred, false);
        qs.by_sub[2] = search_shape(ctx, sub_parts(q, SubType::Sub4x8), pred, false);
        qs.searched[1] = qs.searched[2] = true;
        const double c8 = qs.by_sub[0].half_cost;
        if (c8 < std::min(qs.by_sub[1].half_cost, qs.by_sub[2].half_cost)) {
          d.trace.push_back(Step::Skip4x4Search);
          sub[q] = SubType::Sub8x8;
        } else {
          qs.by_sub[3] = search_shape(ctx, sub_parts(q, SubType::Sub4x4), pred, false);
          qs.searched[3] = true;
          sub[q] = fast_sub_type(qs);
        }
        j_p8x8 += qs.by_sub[static_cast<int>(sub[q])].half_cost;
      }
    }
  } else {
    p8x8_alive = false;
  }

  // Step 5: the three cheapest survivors, enumeration order on ties.
  d.trace.push_back(Step::CandidateRdo);
  std::vector<std::pair<double, MbType>> pool;
  if (inter_alive) {
    pool.emplace_back(d.j_skip, MbType::Skip);
    pool.emplace_back(s16.half_cost, MbType::Inter16x16);
    pool.emplace_back(s16x8.half_cost, MbType::Inter16x8);
    pool.emplace_back(s8x16.half_cost, MbType::Inter8x16);
    if (p8x8_alive) pool.emplace_back(j_p8x8, MbType::P8x8);
  }
  if (intra_alive) {
    pool.emplace_back(ic.j_i4mb, MbType::I4MB);
    pool.emplace_back(ic.j_i16mb, MbType::I16MB);
  }
  std::stable_sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  if (pool.size() > 3) pool.resize(3);
  // RDO runs in enumeration order so RD ties resolve to the lower mode.
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) { return a.second < b.second; });

  bool have = false;
  auto consider = [&](Candidate&& c, double j_mv) {
    if (!have || c.j < d.j_rd) {
      adopt(d, std::move(c));
      d.j_mv = j_mv;
      have = true;
    }
  };
  for (const auto& [cost, type] : pool) {
    d.candidates.push_back(type);
    switch (type) {
      case MbType::Skip: {
        MbInfo skip;
        skip.mv.fill(pred);
        consider(rd_inter(ctx, src, skip), d.j_skip);
        break;
      }
      case MbType::Inter16x16:
      case MbType::Inter16x8:
      case MbType::Inter8x16: {
        ShapeSearch& s = type == MbType::Inter16x16 ? s16 : (type == MbType::Inter16x8 ? s16x8 : s8x16);
        refine_shape(ctx, s, pred);
        consider(rd_inter(ctx, src, inter_info(type, quarter_mvs(s))), s.quarter_cost);
        break;
      }
      case MbType::P8x8: {
        double jq = 0.0;
        for (int q = 0; q < 4; ++q) {
          ShapeSearch& s = quads[q].by_sub[static_cast<int>(sub[q])];
          refine_shape(ctx, s, pred);
          jq += s.quarter_cost;
        }
        consider(rd_inter(ctx, src, p8x8_info(quads, sub)), jq);
        break;
      }
      case MbType::I4MB: {
        Candidate c;
        c.info = ic.i4_info;
        c.levels = ic.i4_levels;
        c.recon = ic.i4_recon;
        finish_rd(ctx, src, c);
        consider(std::move(c), std::numeric_limits<double>::infinity());
        break;
      }
      case MbType::I16MB:
        consider(rd_i16(ctx, src, ic.best_i16_mode), std::numeric_limits<double>::infinity());
        break;
    }
  }
  d.satd_calls = scope.elapsed();
  return d;
}

ModeDecision decide_mode_full(const MbContext& ctx) {
  SatdScope scope;
  ModeDecision d;
  d.trace.push_back(Step::Exhaustive);
  const MbPixels src = source_pixels(ctx.source, ctx.mb_x, ctx.mb_y);
  const bool p_frame = ctx.state.p_frame && ctx.motion;
  bool have = false;
  auto consider = [&](Candidate&& c, double j_mv) {
    if (!have || c.j < d.j_rd) {
      adopt(d, std::move(c));
      d.j_mv = j_mv;
      have = true;
    }
  };

  if (p_frame) {
    const MotionVector pred = predict_mv(ctx.state, ctx.mb_x, ctx.mb_y);
    const int x0 = ctx.mb_x * 16;
    const int y0 = ctx.mb_y * 16;
    d.j_skip = ctx.motion->satd_at(x0, y0, 16, 16, pred);
    MbInfo skip;
    skip.mv.fill(pred);
    consider(rd_inter(ctx, src, skip), d.j_skip);

    const ShapeSearch s16 = search_shape(ctx, {{0, 0, 16, 16}}, pred, true);
    const ShapeSearch s16x8 = search_shape(ctx, {{0, 0, 16, 8}, {0, 8, 16, 8}}, pred, true);
    const ShapeSearch s8x16 = search_shape(ctx, {{0, 0, 8, 16}, {8, 0, 8, 16}}, pred, true);
    consider(rd_inter(ctx, src, inter_info(MbType::Inter16x16, quarter_mvs(s16))), s16.quarter_cost);
    consider(rd_inter(ctx, src, inter_info(MbType::Inter16x8, quarter_mvs(s16x8))), s16x8.quarter_cost);
    consider(rd_inter(ctx, src, inter_info(MbType::Inter8x16, quarter_mvs(s8x16))), s8x16.quarter_cost);
    d.j_16x16 = s16.half_cost;

    std::array<QuadSearch, 4> quads;
    std::array<SubType, 4> by_cost{};
    std::array<SubType, 4> by_rule{};
    double j_cost = 0.0;
    double j_rule = 0.0;
    d.j_8x8 = 0.0;
    for (int q = 0; q < 4; ++q) {
      for (int s = 0; s < 4; ++s) {
        quads[q].by_sub[s] = search_shape(ctx, sub_parts(q, static_cast<SubType>(s)), pred, true);
        quads[q].searched[s] = true;
      }
      d.j_8x8 += quads[q].by_sub[0].half_cost;
      int best = 0;
      for (int s = 1; s < 4; ++s)
        if (quads[q].by_sub[s].quarter_cost < quads[q].by_sub[best].quarter_cost) best = s;
      by_cost[q] = static_cast<SubType>(best);
      by_rule[q] = fast_sub_type(quads[q]);
      j_cost += quads[q].by_sub[best].quarter_cost;
      j_rule += quads[q].by_sub[static_cast<int>(by_rule[q])].quarter_cost;
    }
    consider(rd_inter(ctx, src, p8x8_info(quads, by_cost)), j_cost);
    if (by_rule != by_cost) consider(rd_inter(ctx, src, p8x8_info(quads, by_rule)), j_rule);
  }

  const IntraCosts ic = intra_costs(ctx);
  d.j_intra = std::min(ic.j_i4mb, ic.j_i16mb);
  const double none = std::numeric_limits<double>::infinity();
  consider(rd_i4(ctx, src, rd_greedy_chooser(ctx)), none);
  Candidate eq2;
  eq2.info = ic.i4_info;
  eq2.levels = ic.i4_levels;
  eq2.recon = ic.i4_recon;
  finish_rd(ctx, src, eq2);
  consider(std::move(eq2), none);
  for (int m = 0; m < 4; ++m) consider(rd_i16(ctx, src, m), none);

  for (int t = 0; t < kMbTypeCount; ++t) {
    if (p_frame || is_intra(static_cast<MbType>(t))) d.candidates.push_back(static_cast<MbType>(t));
  }
  d.satd_calls = scope.elapsed();
  return d;
}

}  // namespace item::codec
