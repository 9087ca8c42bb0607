#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ewspb/wavelet.hpp"

namespace ewspb {

/// MSB-first bit packing into a byte vector.
class BitWriter {
public:
  void put_bit(bool b) {
    if (bit_ == 0)
      bytes_.push_back(0);
    if (b)
      bytes_.back() |= static_cast<uint8_t>(0x80u >> bit_);
    bit_ = (bit_ + 1) & 7;
    ++count_;
  }

  void put_bits(uint64_t value, int n) {
    for (int i = n - 1; i >= 0; --i)
      put_bit((value >> i) & 1);
  }

  void align_byte() {
    while (bit_ != 0)
      put_bit(false);
  }

  uint64_t bit_count() const { return count_; }
  const std::vector<uint8_t> &bytes() const { return bytes_; }
  std::vector<uint8_t> take() {
    bit_ = 0;
    count_ = 0;
    return std::move(bytes_);
  }

private:
  std::vector<uint8_t> bytes_;
  int bit_ = 0;
  uint64_t count_ = 0;
};

/// MSB-first bit reading; throws EndOfStream past the last bit.
class BitReader {
public:
  BitReader() = default;
  BitReader(std::span<const uint8_t> bytes, uint64_t bit_limit)
      : bytes_(bytes), limit_(bit_limit) {}
  explicit BitReader(std::span<const uint8_t> bytes)
      : BitReader(bytes, uint64_t(bytes.size()) * 8) {}

  bool get_bit() {
    if (pos_ >= limit_)
      throw EndOfStream("bit read past end of stream");
    const bool b = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1;
    ++pos_;
    return b;
  }

  uint64_t get_bits(int n) {
    uint64_t v = 0;
    for (int i = 0; i < n; ++i)
      v = (v << 1) | (get_bit() ? 1u : 0u);
    return v;
  }

  uint64_t position() const { return pos_; }
  uint64_t remaining() const { return limit_ - pos_; }

private:
  std::span<const uint8_t> bytes_;
  uint64_t limit_ = 0;
  uint64_t pos_ = 0;
};

enum class ChromaFormat : uint8_t { Mono = 0, C420 = 1 };

struct StreamHeader {
  uint32_t version = 1;
  uint32_t width = 0;
  uint32_t height = 0;
  uint32_t frame_count = 0;
  ChromaFormat chroma = ChromaFormat::C420;
  uint32_t gop_length = 16;
  uint8_t temporal_levels = 4;
  uint8_t spatial_levels = 3;
  FilterKind temporal_filter = FilterKind::LeGall53;
  FilterKind spatial_filter = FilterKind::Cdf97;
  Convention convention = Convention::Jpeg2000;
  uint8_t tree_id = 0; // TreeKind
  uint8_t weighted = 1;
  int16_t termination_exp = -16;
  uint32_t pad_frames = 0;

  bool operator==(const StreamHeader &) const = default;
};

struct GopSegment {
  uint8_t component = 0; // 0=Y, 1=U, 2=V
  uint32_t gop_index = 0;
  bool empty_gop = false;
  int16_t threshold_exp = 0;
  uint64_t payload_bits = 0; // declared length; bytes may be shorter if the
                             // file was truncated externally
  std::vector<uint8_t> payload;
};

void write_header(std::vector<uint8_t> &out, const StreamHeader &h);
/// Throws CorruptStream on bad magic/version/truncated header.
StreamHeader read_header(std::span<const uint8_t> in, size_t &offset);
size_t header_size();

void write_segment(std::vector<uint8_t> &out, const GopSegment &seg);
/// Returns nullopt at (possibly mid-segment-header) end of data. A payload
/// cut short by external truncation is returned with the bytes present.
std::optional<GopSegment> read_segment(std::span<const uint8_t> in,
                                       size_t &offset);

} // namespace ewspb
