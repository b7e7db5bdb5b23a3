#include <memory>

#include "container.hpp"
#include "item/codec/bitstream.hpp"
#include "item/codec/encoder.hpp"
#include "item/codec/macroblock.hpp"
#include "item/codec/reference.hpp"
#include "item/common/error.hpp"

namespace item::codec {

DecodeResult decode_sequence(const std::vector<std::uint8_t>& bs, const DecodeOptions& options) {
  using namespace container;
  if (bs.size() < kHeaderSize) throw CorruptStream("decode: truncated header");
  if (!std::equal(kMagic.begin(), kMagic.end(), bs.begin())) throw CorruptStream("decode: bad magic");
  const std::uint8_t* p = bs.data() + kMagic.size();
  DecodeResult out;
  StreamHeader& hd = out.header;
  hd.width = static_cast<int>(get_le(p, 2));
  hd.height = static_cast<int>(get_le(p + 2, 2));
  hd.qp = static_cast<int>(get_le(p + 4, 1));
  hd.gop = static_cast<int>(get_le(p + 5, 2));
  hd.fps_num = get_le(p + 7, 4);
  hd.fps_den = get_le(p + 11, 4);
  hd.frame_count = get_le(p + 15, 4);
  if (options.verify_checksums && get_le(p + 19, 4) != crc32_of(bs.data(), kHeaderSize - 4)) {
    throw CorruptStream("decode: header checksum mismatch");
  }
  if (hd.width <= 0 || hd.height <= 0 || hd.width % 16 || hd.height % 16 || hd.width > kMaxDimension ||
      hd.height > kMaxDimension) {
    throw CorruptStream("decode: bad dimensions");
  }
  if (hd.qp > kMaxQp || hd.gop < 1 || hd.fps_num == 0 || hd.fps_den == 0 || hd.fps_num > 0x7fffffffu ||
      hd.fps_den > 0x7fffffffu) {
    throw CorruptStream("decode: bad header field");
  }
  out.video.fps_num = static_cast<int>(hd.fps_num);
  out.video.fps_den = static_cast<int>(hd.fps_den);

  std::size_t pos = kHeaderSize;
  std::unique_ptr<RefPicture> ref;
  for (std::uint32_t f = 0; f < hd.frame_count; ++f) {
    if (bs.size() - pos < 4) throw CorruptStream("decode: truncated frame length");
    const std::size_t len = get_le(bs.data() + pos, 4);
    pos += 4;
    if (bs.size() - pos < len || bs.size() - pos - len < 4) throw CorruptStream("decode: truncated frame");
    const std::uint8_t* payload = bs.data() + pos;
    if (options.verify_checksums && get_le(payload + len, 4) != crc32_of(payload, len)) {
      throw CorruptStream("decode: frame checksum mismatch");
    }
    BitReader br({payload, len});
    const std::uint32_t type = br.get_ue();
    const bool intra = f % static_cast<std::uint32_t>(hd.gop) == 0;
    if (type != (intra ? 0u : 1u)) throw CorruptStream("decode: unexpected frame type");
    FrameState st(hd.width, hd.height, !intra, hd.qp, intra ? nullptr : ref.get());
    MbInfo info;
    MbLevels levels;
    for (int my = 0; my < st.mbs_y; ++my) {
      for (int mx = 0; mx < st.mbs_x; ++mx) {
        read_macroblock(br, st, mx, my, info, levels);
        st.commit(mx, my, info, reconstruct_macroblock(st, mx, my, info, levels));
      }
    }
    if (br.bits_left() >= 8) throw CorruptStream("decode: trailing bytes in frame");
    pos += len + 4;
    ref = std::make_unique<RefPicture>(st.recon);
    out.video.frames.push_back(std::move(st.recon));
  }
  if (pos != bs.size()) throw CorruptStream("decode: trailing data after last frame");
  return out;
}

}  // namespace item::codec
