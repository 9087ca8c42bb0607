#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ewspb/bitstream.hpp"
#include "ewspb/coder.hpp"
#include "ewspb/videoio.hpp"
#include "ewspb/weighting.hpp"

namespace ewspb {

struct EncodeParams {
  int gop_length = 16;
  int temporal_levels = 4;
  int spatial_levels = 3;
  FilterKind temporal_filter = FilterKind::LeGall53;
  FilterKind spatial_filter = FilterKind::Cdf97;
  TreeKind tree = TreeKind::Ewspb;
  bool weighted = true;
  double bitrate_kbps = 1500.0;
  double fps = 30.0;
  // fraction of the budget per component; <= 0 means proportional to
  // sample counts (4:1:1 for 4:2:0)
  double split_y = -1.0, split_u = -1.0, split_v = -1.0;
  int min_exp = kDefaultMinExp;
};

/// Per-GOP payload bit budget for one component at a given bitrate.
uint64_t component_gop_budget(const EncodeParams &params, bool mono,
                              int component, double bitrate_kbps);

std::vector<uint8_t> encode_clip(const Clip &clip, const EncodeParams &params);

/// Decodes a stream; budget_kbps <= 0 decodes everything present. A
/// truncated stream decodes to a clip of the advertised dimensions, with
/// missing data reconstructing to neutral gray.
Clip decode_stream(const std::vector<uint8_t> &bytes,
                   double budget_kbps = 0.0);

StreamHeader peek_header(const std::vector<uint8_t> &bytes);

std::vector<uint8_t> read_file(const std::string &path);
void write_file(const std::string &path, const std::vector<uint8_t> &bytes);

} // namespace ewspb
