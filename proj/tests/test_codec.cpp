#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ewspb/codec.hpp"
#include "ewspb/analysis.hpp"

using namespace ewspb;

TEST_CASE("encode/decode round trip keeps geometry") {
  const Clip clip = synthetic_clip(1, 16, 64, 64);
  EncodeParams params;
  params.bitrate_kbps = 2000.0;
  const auto stream = encode_clip(clip, params);
  const Clip out = decode_stream(stream);
  CHECK(out.width == 64);
  CHECK(out.height == 64);
  CHECK(out.frame_count() == 16);
  CHECK(!out.mono());
  CHECK(psnr(clip, out) > 28.0);
}

TEST_CASE("trailing partial GOP is padded and trimmed") {
  const Clip clip = synthetic_clip(2, 21, 64, 64); // 16 + 5 frames
  EncodeParams params;
  params.bitrate_kbps = 1000.0;
  const auto stream = encode_clip(clip, params);
  CHECK(peek_header(stream).pad_frames == 11);
  const Clip out = decode_stream(stream);
  CHECK(out.frame_count() == 21);
}

TEST_CASE("encoding is deterministic") {
  const Clip clip = synthetic_clip(3, 16, 64, 64);
  EncodeParams params;
  params.bitrate_kbps = 500.0;
  CHECK(encode_clip(clip, params) == encode_clip(clip, params));
}

TEST_CASE("budgeted decode is a prefix decode") {
  const Clip clip = synthetic_clip(4, 32, 64, 64);
  EncodeParams params;
  params.bitrate_kbps = 1200.0;
  const auto stream = encode_clip(clip, params);
  double prev = 0.0;
  for (double b : {100.0, 300.0, 600.0, 1200.0}) {
    const Clip out = decode_stream(stream, b);
    const double p = plane_group_psnr(clip.y, out.y);
    CHECK(p >= prev - 1e-9);
    prev = p;
  }
}

TEST_CASE("header-only stream decodes to neutral gray") {
  const Clip clip = synthetic_clip(5, 16, 64, 64);
  EncodeParams params;
  const auto stream = encode_clip(clip, params);
  std::vector<uint8_t> cut(stream.begin(),
                           stream.begin() + long(header_size()));
  const Clip out = decode_stream(cut);
  CHECK(out.frame_count() == 16);
  for (const Plane &p : out.y)
    for (uint8_t v : p.pixels)
      CHECK(v == 128);
}

TEST_CASE("random byte truncations always decode") {
  const Clip clip = synthetic_clip(6, 16, 64, 64);
  EncodeParams params;
  params.bitrate_kbps = 400.0;
  const auto stream = encode_clip(clip, params);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<size_t> cut(header_size(), stream.size());
  for (int t = 0; t < 50; ++t) {
    std::vector<uint8_t> part(stream.begin(),
                              stream.begin() + long(cut(rng)));
    const Clip out = decode_stream(part);
    CHECK(out.width == 64);
    CHECK(out.height == 64);
    CHECK(out.frame_count() == 16);
  }
}

TEST_CASE("asym tree and unweighted modes round-trip too") {
  const Clip clip = synthetic_clip(8, 16, 64, 64);
  for (TreeKind tree : {TreeKind::Ewspb, TreeKind::Asym3d})
    for (bool weighted : {true, false}) {
      EncodeParams params;
      params.tree = tree;
      params.weighted = weighted;
      params.bitrate_kbps = 1500.0;
      const Clip out = decode_stream(encode_clip(clip, params));
      CHECK(psnr(clip, out) > 25.0);
    }
}

TEST_CASE("corrupt streams are rejected") {
  std::vector<uint8_t> junk = {'n', 'o', 'p', 'e', 0, 0, 0, 0};
  junk.resize(64, 0);
  CHECK_THROWS_AS((void)decode_stream(junk), CorruptStream);
  CHECK_THROWS_AS((void)decode_stream(std::vector<uint8_t>{}), CorruptStream);
}
