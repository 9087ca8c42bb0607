#include "ewspb/bitstream.hpp"

#include <cstring>

namespace ewspb {

namespace {

constexpr uint8_t kMagic[4] = {'E', 'W', 'S', 'P'};

void put_u8(std::vector<uint8_t> &out, uint8_t v) { out.push_back(v); }

void put_u32(std::vector<uint8_t> &out, uint32_t v) {
  for (int i = 0; i < 4; ++i)
    out.push_back(static_cast<uint8_t>(v >> (8 * i))); // little-endian
}

void put_u64(std::vector<uint8_t> &out, uint64_t v) {
  for (int i = 0; i < 8; ++i)
    out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_i16(std::vector<uint8_t> &out, int16_t v) {
  const auto u = static_cast<uint16_t>(v);
  out.push_back(static_cast<uint8_t>(u));
  out.push_back(static_cast<uint8_t>(u >> 8));
}

bool have(std::span<const uint8_t> in, size_t offset, size_t n) {
  return offset + n <= in.size();
}

uint8_t get_u8(std::span<const uint8_t> in, size_t &o) { return in[o++]; }

uint32_t get_u32(std::span<const uint8_t> in, size_t &o) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<uint32_t>(in[o++]) << (8 * i);
  return v;
}

uint64_t get_u64(std::span<const uint8_t> in, size_t &o) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<uint64_t>(in[o++]) << (8 * i);
  return v;
}

int16_t get_i16(std::span<const uint8_t> in, size_t &o) {
  uint16_t v = static_cast<uint16_t>(in[o]) |
               (static_cast<uint16_t>(in[o + 1]) << 8);
  o += 2;
  return static_cast<int16_t>(v);
}

} // namespace

size_t header_size() { return 4 + 4 * 4 + 1 + 4 + 7 * 1 + 2 + 4; }

void write_header(std::vector<uint8_t> &out, const StreamHeader &h) {
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u32(out, h.version);
  put_u32(out, h.width);
  put_u32(out, h.height);
  put_u32(out, h.frame_count);
  put_u8(out, static_cast<uint8_t>(h.chroma));
  put_u32(out, h.gop_length);
  put_u8(out, h.temporal_levels);
  put_u8(out, h.spatial_levels);
  put_u8(out, static_cast<uint8_t>(h.temporal_filter));
  put_u8(out, static_cast<uint8_t>(h.spatial_filter));
  put_u8(out, static_cast<uint8_t>(h.convention));
  put_u8(out, h.tree_id);
  put_u8(out, h.weighted);
  put_i16(out, h.termination_exp);
  put_u32(out, h.pad_frames);
}

StreamHeader read_header(std::span<const uint8_t> in, size_t &offset) {
  if (!have(in, offset, header_size()))
    throw CorruptStream("truncated stream header");
  if (std::memcmp(in.data() + offset, kMagic, 4) != 0)
    throw CorruptStream("bad magic");
  offset += 4;
  StreamHeader h;
  h.version = get_u32(in, offset);
  if (h.version != 1)
    throw CorruptStream("unsupported version");
  h.width = get_u32(in, offset);
  h.height = get_u32(in, offset);
  h.frame_count = get_u32(in, offset);
  h.chroma = static_cast<ChromaFormat>(get_u8(in, offset));
  h.gop_length = get_u32(in, offset);
  h.temporal_levels = get_u8(in, offset);
  h.spatial_levels = get_u8(in, offset);
  h.temporal_filter = static_cast<FilterKind>(get_u8(in, offset));
  h.spatial_filter = static_cast<FilterKind>(get_u8(in, offset));
  h.convention = static_cast<Convention>(get_u8(in, offset));
  h.tree_id = get_u8(in, offset);
  h.weighted = get_u8(in, offset);
  h.termination_exp = get_i16(in, offset);
  h.pad_frames = get_u32(in, offset);
  return h;
}

void write_segment(std::vector<uint8_t> &out, const GopSegment &seg) {
  put_u8(out, seg.component);
  put_u32(out, seg.gop_index);
  put_u8(out, seg.empty_gop ? 1 : 0);
  put_i16(out, seg.threshold_exp);
  put_u64(out, seg.payload_bits);
  out.insert(out.end(), seg.payload.begin(), seg.payload.end());
}

std::optional<GopSegment> read_segment(std::span<const uint8_t> in,
                                       size_t &offset) {
  constexpr size_t kSegHeader = 1 + 4 + 1 + 2 + 8;
  if (!have(in, offset, kSegHeader))
    return std::nullopt;
  GopSegment seg;
  seg.component = get_u8(in, offset);
  seg.gop_index = get_u32(in, offset);
  seg.empty_gop = get_u8(in, offset) != 0;
  seg.threshold_exp = get_i16(in, offset);
  seg.payload_bits = get_u64(in, offset);
  const size_t want = (seg.payload_bits + 7) / 8;
  const size_t got = std::min(want, in.size() - offset);
  seg.payload.assign(in.begin() + offset, in.begin() + offset + got);
  offset += got;
  return seg;
}

} // namespace ewspb
