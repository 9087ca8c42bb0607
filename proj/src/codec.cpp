#include "ewspb/codec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace ewspb {

namespace {

DecompositionSpec spec_for(const EncodeParams &p, int width, int height) {
  DecompositionSpec s;
  s.gop_length = p.gop_length;
  s.width = width;
  s.height = height;
  s.temporal_levels = p.temporal_levels;
  s.spatial_levels = p.spatial_levels;
  s.temporal_filter = p.temporal_filter;
  s.spatial_filter = p.spatial_filter;
  s.validate();
  return s;
}

EncodeParams params_from(const StreamHeader &h) {
  EncodeParams p;
  p.gop_length = int(h.gop_length);
  p.temporal_levels = h.temporal_levels;
  p.spatial_levels = h.spatial_levels;
  p.temporal_filter = h.temporal_filter;
  p.spatial_filter = h.spatial_filter;
  p.tree = TreeKind(h.tree_id);
  p.weighted = h.weighted != 0;
  p.min_exp = h.termination_exp;
  return p;
}

} // namespace

uint64_t component_gop_budget(const EncodeParams &params, bool mono,
                              int component, double bitrate_kbps) {
  if (bitrate_kbps <= 0.0)
    return UINT64_MAX;
  const double gop_bits =
      bitrate_kbps * 1000.0 * double(params.gop_length) / params.fps;
  double share;
  if (mono) {
    share = component == 0 ? 1.0 : 0.0;
  } else if (params.split_y > 0.0) {
    const double tot = params.split_y + params.split_u + params.split_v;
    const double f[3] = {params.split_y, params.split_u, params.split_v};
    share = f[component] / tot;
  } else {
    // proportional to sample counts for 4:2:0
    share = component == 0 ? 4.0 / 6.0 : 1.0 / 6.0;
  }
  return uint64_t(std::llround(gop_bits * share));
}

std::vector<uint8_t> encode_clip(const Clip &clip, const EncodeParams &params) {
  if (clip.frame_count() == 0)
    throw InvalidDimensions("encode_clip: empty clip");
  const bool mono = clip.mono();
  const int gop = params.gop_length;
  const int gops = (clip.frame_count() + gop - 1) / gop;
  const int pad = gops * gop - clip.frame_count();

  StreamHeader h;
  h.width = uint32_t(clip.width);
  h.height = uint32_t(clip.height);
  h.frame_count = uint32_t(clip.frame_count());
  h.chroma = mono ? ChromaFormat::Mono : ChromaFormat::C420;
  h.gop_length = uint32_t(gop);
  h.temporal_levels = uint8_t(params.temporal_levels);
  h.spatial_levels = uint8_t(params.spatial_levels);
  h.temporal_filter = params.temporal_filter;
  h.spatial_filter = params.spatial_filter;
  h.tree_id = uint8_t(params.tree);
  h.weighted = params.weighted ? 1 : 0;
  h.termination_exp = int16_t(params.min_exp);
  h.pad_frames = uint32_t(pad);

  const int ncomp = mono ? 1 : 3;
  struct Comp {
    const std::vector<Plane> *planes;
    DecompositionSpec spec;
    WeightTable weights;
    TreeTopology topo;
  };
  std::vector<Comp> comps;
  for (int c = 0; c < ncomp; ++c) {
    const std::vector<Plane> *pl =
        c == 0 ? &clip.y : (c == 1 ? &clip.u : &clip.v);
    const Plane &p0 = (*pl)[0];
    DecompositionSpec s = spec_for(params, p0.cols, p0.rows);
    comps.push_back({pl, s, WeightTable::build(s),
                     TreeTopology::make(params.tree, s)});
  }

  std::vector<uint8_t> out;
  write_header(out, h);
  for (int g = 0; g < gops; ++g) {
    for (int c = 0; c < ncomp; ++c) {
      Comp &comp = comps[c];
      const auto &planes = *comp.planes;
      // pad the trailing GOP by repeating the last frame
      std::vector<Plane> frames;
      frames.reserve(gop);
      for (int f = 0; f < gop; ++f) {
        const int src = std::min(g * gop + f, int(planes.size()) - 1);
        frames.push_back(planes[src]);
      }
      Volume vol = planes_to_volume(frames, 0, gop);
      CoeffVolume cv = forward_gop(vol, comp.spec);
      if (params.weighted)
        cv = apply_weights(cv, comp.weights);
      const uint64_t budget =
          component_gop_budget(params, mono, c, params.bitrate_kbps);
      GopPayload pay = encode_gop(cv, comp.topo, budget, params.min_exp);
      GopSegment seg;
      seg.component = uint8_t(c);
      seg.gop_index = uint32_t(g);
      seg.empty_gop = pay.empty_gop;
      seg.threshold_exp = int16_t(pay.threshold_exp);
      seg.payload_bits = pay.bit_count;
      seg.payload = std::move(pay.bytes);
      write_segment(out, seg);
    }
  }
  return out;
}

StreamHeader peek_header(const std::vector<uint8_t> &bytes) {
  size_t off = 0;
  return read_header(bytes, off);
}

Clip decode_stream(const std::vector<uint8_t> &bytes, double budget_kbps) {
  size_t off = 0;
  const StreamHeader h = read_header(bytes, off);
  EncodeParams params = params_from(h);
  params.bitrate_kbps = budget_kbps;
  const bool mono = h.chroma == ChromaFormat::Mono;
  const int gop = int(h.gop_length);
  const int total = int(h.frame_count) + int(h.pad_frames);
  if (gop <= 0 || total <= 0 || total % gop != 0)
    throw CorruptStream("decode_stream: inconsistent frame counts");
  const int gops = total / gop;
  const int ncomp = mono ? 1 : 3;

  struct Comp {
    DecompositionSpec spec;
    WeightTable weights;
    TreeTopology topo;
    std::vector<Plane> planes;
  };
  std::vector<Comp> comps;
  for (int c = 0; c < ncomp; ++c) {
    const int w = c == 0 ? int(h.width) : int(h.width) / 2;
    const int ht = c == 0 ? int(h.height) : int(h.height) / 2;
    DecompositionSpec s = spec_for(params, w, ht);
    Comp comp{s, WeightTable::build(s), TreeTopology::make(params.tree, s),
              std::vector<Plane>(size_t(total), Plane(ht, w))};
    // neutral gray until real data lands
    for (auto &p : comp.planes)
      std::fill(p.pixels.begin(), p.pixels.end(), uint8_t(128));
    comps.push_back(std::move(comp));
  }

  while (off < bytes.size()) {
    auto seg = read_segment(bytes, off);
    if (!seg)
      break;
    if (seg->component >= ncomp || int(seg->gop_index) >= gops)
      continue; // skip segments this header does not describe
    Comp &comp = comps[seg->component];
    GopPayload pay;
    pay.empty_gop = seg->empty_gop;
    pay.threshold_exp = seg->threshold_exp;
    pay.bit_count = seg->payload_bits;
    pay.bytes = std::move(seg->payload);
    const uint64_t budget =
        component_gop_budget(params, mono, seg->component, budget_kbps);
    CoeffVolume cv =
        decode_gop(pay, comp.spec, comp.topo, budget, params.min_exp);
    if (params.weighted)
      cv = remove_weights(cv, comp.weights);
    Volume vol = inverse_gop(cv);
    volume_to_planes(vol, comp.planes, int(seg->gop_index) * gop);
  }

  Clip clip;
  clip.width = int(h.width);
  clip.height = int(h.height);
  const int keep = int(h.frame_count);
  for (int c = 0; c < ncomp; ++c) {
    comps[c].planes.resize(size_t(keep));
    if (c == 0)
      clip.y = std::move(comps[c].planes);
    else if (c == 1)
      clip.u = std::move(comps[c].planes);
    else
      clip.v = std::move(comps[c].planes);
  }
  return clip;
}

std::vector<uint8_t> read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InvalidFile("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string &path, const std::vector<uint8_t> &bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw InvalidFile("cannot open " + path);
  out.write(reinterpret_cast<const char *>(bytes.data()),
            std::streamsize(bytes.size()));
  if (!out)
    throw InvalidFile("write failure on " + path);
}

} // namespace ewspb
