#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ewspb/bitstream.hpp"

using namespace ewspb;

TEST_CASE("three bits round-trip MSB first") {
  BitWriter bw;
  bw.put_bits(0b101, 3);
  const auto bytes = bw.take();
  REQUIRE(bytes.size() == 1);
  CHECK(bytes[0] == 0b10100000);
  BitReader br(bytes, 3);
  CHECK(br.get_bits(3) == 0b101);
}

TEST_CASE("a million random bits round-trip") {
  std::mt19937_64 rng(71);
  std::vector<bool> bits(1000000);
  BitWriter bw;
  for (size_t i = 0; i < bits.size(); ++i) {
    bits[i] = (rng() & 1) != 0;
    bw.put_bit(bits[i]);
  }
  const uint64_t n = bw.bit_count();
  CHECK(n == bits.size());
  const auto bytes = bw.take();
  BitReader br(bytes, n);
  for (size_t i = 0; i < bits.size(); ++i)
    CHECK(br.get_bit() == bits[i]);
  CHECK_THROWS_AS((void)br.get_bit(), EndOfStream);
}

TEST_CASE("reading from empty throws") {
  BitReader br(std::span<const uint8_t>{});
  CHECK_THROWS_AS((void)br.get_bit(), EndOfStream);
}

TEST_CASE("header round trip and rejection") {
  StreamHeader h;
  h.width = 352;
  h.height = 288;
  h.frame_count = 97;
  h.chroma = ChromaFormat::C420;
  h.gop_length = 16;
  h.temporal_levels = 4;
  h.spatial_levels = 3;
  h.tree_id = 0;
  h.weighted = 1;
  h.termination_exp = -16;
  h.pad_frames = 15;

  std::vector<uint8_t> buf;
  write_header(buf, h);
  CHECK(buf.size() == header_size());
  size_t off = 0;
  CHECK(read_header(buf, off) == h);
  CHECK(off == buf.size());

  SUBCASE("bad magic") {
    buf[0] ^= 0xFF;
    size_t o = 0;
    CHECK_THROWS_AS((void)read_header(buf, o), CorruptStream);
  }
  SUBCASE("truncated header") {
    buf.resize(buf.size() - 3);
    size_t o = 0;
    CHECK_THROWS_AS((void)read_header(buf, o), CorruptStream);
  }
  SUBCASE("serialization is deterministic") {
    std::vector<uint8_t> again;
    write_header(again, h);
    CHECK(again == buf);
  }
}

TEST_CASE("segment round trip, skip, and truncation") {
  std::mt19937_64 rng(73);
  GopSegment a;
  a.component = 1;
  a.gop_index = 4;
  a.threshold_exp = 9;
  a.payload.resize(129);
  for (auto &b : a.payload)
    b = uint8_t(rng());
  a.payload_bits = 129 * 8 - 5;
  GopSegment b;
  b.component = 2;
  b.gop_index = 4;
  b.empty_gop = true;

  std::vector<uint8_t> buf;
  write_segment(buf, a);
  const size_t second = buf.size();
  write_segment(buf, b);

  SUBCASE("round trip and skip to the next segment") {
    size_t off = 0;
    auto ra = read_segment(buf, off);
    REQUIRE(ra.has_value());
    CHECK(ra->component == 1);
    CHECK(ra->gop_index == 4);
    CHECK(ra->threshold_exp == 9);
    CHECK(ra->payload_bits == a.payload_bits);
    CHECK(ra->payload == a.payload);
    CHECK(off == second); // length prefix lands exactly on segment start
    auto rb = read_segment(buf, off);
    REQUIRE(rb.has_value());
    CHECK(rb->empty_gop);
    CHECK(off == buf.size());
    CHECK(!read_segment(buf, off).has_value());
  }

  SUBCASE("mid-payload truncation returns the bytes present") {
    std::vector<uint8_t> cut(buf.begin(), buf.begin() + second - 40);
    size_t off = 0;
    auto ra = read_segment(cut, off);
    REQUIRE(ra.has_value());
    CHECK(ra->payload.size() == a.payload.size() - 40);
    CHECK(ra->payload_bits == a.payload_bits); // declared length kept
    CHECK(off == cut.size());
  }

  SUBCASE("mid-segment-header truncation yields nullopt") {
    std::vector<uint8_t> cut(buf.begin(), buf.begin() + 3);
    size_t off = 0;
    CHECK(!read_segment(cut, off).has_value());
  }
}
