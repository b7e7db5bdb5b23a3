#include "item/codec/encoder.hpp"

#include <chrono>
#include <memory>
#include <ostream>

#include "container.hpp"
#include "item/codec/bitstream.hpp"
#include "item/codec/macroblock.hpp"
#include "item/codec/mode_decision.hpp"
#include "item/codec/motion.hpp"
#include "item/codec/reference.hpp"
#include "item/common/error.hpp"
#include "item/media/metrics.hpp"

namespace item::codec {

std::size_t EncodeResult::total_bits() const {
  std::size_t b = 0;
  for (const auto& s : stats) b += s.bits;
  return b;
}

double EncodeResult::mean_psnr_y() const {
  if (stats.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& s : stats) sum += s.psnr_y;
  return sum / static_cast<double>(stats.size());
}

std::uint64_t EncodeResult::total_satd_calls() const {
  std::uint64_t n = 0;
  for (const auto& s : stats) n += s.satd_calls;
  return n;
}

double EncodeResult::bitrate(double frame_rate) const {
  if (stats.empty()) return 0.0;
  return static_cast<double>(total_bits()) * frame_rate / static_cast<double>(stats.size());
}

EncodeResult encode_sequence(const media::VideoSequence& seq, const CodecConfig& config, const EncodeOptions& options) {
  config.validate();
  seq.validate();
  if (seq.frames.empty()) throw InvalidArgument("encode: empty sequence");
  const int w = seq.width();
  const int h = seq.height();
  if (w > container::kMaxDimension || h > container::kMaxDimension) throw InvalidArgument("encode: frame too large");
  if (seq.fps_num <= 0 || seq.fps_den <= 0) throw InvalidArgument("encode: bad frame rate");

  EncodeResult res;
  auto& out = res.bitstream;
  out.insert(out.end(), container::kMagic.begin(), container::kMagic.end());
  container::put_le(out, static_cast<std::uint32_t>(w), 2);
  container::put_le(out, static_cast<std::uint32_t>(h), 2);
  container::put_le(out, static_cast<std::uint32_t>(config.qp), 1);
  container::put_le(out, static_cast<std::uint32_t>(config.gop), 2);
  container::put_le(out, static_cast<std::uint32_t>(seq.fps_num), 4);
  container::put_le(out, static_cast<std::uint32_t>(seq.fps_den), 4);
  container::put_le(out, static_cast<std::uint32_t>(seq.frames.size()), 4);
  container::put_le(out, container::crc32_of(out.data(), out.size()), 4);

  res.recon.fps_num = seq.fps_num;
  res.recon.fps_den = seq.fps_den;
  std::unique_ptr<RefPicture> ref;
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    const media::Frame& src = seq.frames[f];
    const bool intra = f % static_cast<std::size_t>(config.gop) == 0;
    FrameState st(w, h, !intra, config.qp, intra ? nullptr : ref.get());
    std::unique_ptr<MotionEstimator> me;
    if (!intra) me = std::make_unique<MotionEstimator>(src, *ref, config.search_range, config.lambda_mv());
    const media::Frame* prev = f > 0 ? &seq.frames[f - 1] : nullptr;

    FrameStats fs;
    fs.frame = static_cast<int>(f);
    fs.intra = intra;
    BitWriter bw;
    bw.put_ue(intra ? 0 : 1);
    for (int my = 0; my < st.mbs_y; ++my) {
      for (int mx = 0; mx < st.mbs_x; ++mx) {
        const MbContext ctx{src, prev, st, me.get(), mx, my, config};
        const auto t0 = std::chrono::steady_clock::now();
        const ModeDecision d =
            options.path == DecisionPath::Fast ? decide_mode_fast(ctx) : decide_mode_full(ctx);
        if (options.timing) {
          fs.md_time_us +=
              std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
        }
        fs.satd_calls += d.satd_calls;
        fs.j_rd += d.j_rd;
        ++fs.modes[static_cast<int>(d.info.type)];
        if (options.beta_samples && !intra && options.path == DecisionPath::Full) {
          options.beta_samples->push_back({config.qp, d.j_16x16, d.j_8x8, d.info.type == MbType::P8x8});
        }
        write_macroblock(bw, st, mx, my, d.info, d.levels);
        st.commit(mx, my, d.info, d.recon);
      }
    }
    bw.align();
    const std::vector<std::uint8_t> payload = bw.take();
    container::put_le(out, static_cast<std::uint32_t>(payload.size()), 4);
    out.insert(out.end(), payload.begin(), payload.end());
    container::put_le(out, container::crc32_of(payload.data(), payload.size()), 4);

    fs.bits = payload.size() * 8;
    fs.psnr_y = media::psnr_luma(src, st.recon);
    res.stats.push_back(fs);
    ref = std::make_unique<RefPicture>(st.recon);
    res.recon.frames.push_back(std::move(st.recon));
  }
  return res;
}

void write_stats_csv(std::ostream& out, const std::vector<FrameStats>& stats) {
  out << "frame,type,bits,psnr_y,md_time_us,satd_calls";
  for (int t = 0; t < kMbTypeCount; ++t) out << ',' << to_string(static_cast<MbType>(t));
  out << '\n';
  char buf[32];
  for (const auto& s : stats) {
    std::snprintf(buf, sizeof buf, "%.4f", s.psnr_y);
    out << s.frame << ',' << (s.intra ? 'I' : 'P') << ',' << s.bits << ',' << buf << ',' << s.md_time_us << ','
        << s.satd_calls;
    for (int m : s.modes) out << ',' << m;
    out << '\n';
  }
}

}  // namespace item::codec
