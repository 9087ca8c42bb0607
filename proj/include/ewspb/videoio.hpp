#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ewspb/common.hpp"

namespace ewspb {

/// One 8-bit plane, row-major.
struct Plane {
  int rows = 0;
  int cols = 0;
  std::vector<uint8_t> pixels;

  Plane() = default;
  Plane(int r, int c) : rows(r), cols(c), pixels(size_t(r) * c, 0) {}
  uint8_t &at(int r, int c) { return pixels[size_t(r) * cols + c]; }
  uint8_t at(int r, int c) const { return pixels[size_t(r) * cols + c]; }
};

/// Planar 4:2:0 frame sequence; chroma planes empty for mono clips.
struct Clip {
  int width = 0;
  int height = 0;
  std::vector<Plane> y, u, v;

  int frame_count() const { return int(y.size()); }
  bool mono() const { return u.empty(); }
};

/// Raw planar YUV 4:2:0 file (frame-sequential Y,U,V). Dimensions are not
/// stored in the file and must be supplied. Throws InvalidFile on open
/// failure or a trailing partial frame.
Clip read_yuv420(const std::string &path, int width, int height);
void write_yuv420(const std::string &path, const Clip &clip);

/// Mean PSNR (dB) over all planes of both clips; +inf for identical clips.
double psnr(const Clip &a, const Clip &b);
double plane_psnr(const Plane &a, const Plane &b);
/// PSNR aggregated over a whole component (e.g. all Y planes of a clip).
double plane_group_psnr(const std::vector<Plane> &a,
                        const std::vector<Plane> &b);

/// Deterministic synthetic test clip: moving gradients plus textured
/// blocks, fully determined by (seed, frames, width, height).
Clip synthetic_clip(uint64_t seed, int frames, int width, int height);

/// Plane group <-> Volume with a -128 level shift (doubles in the volume).
Volume planes_to_volume(const std::vector<Plane> &planes, int first, int count);
void volume_to_planes(const Volume &vol, std::vector<Plane> &planes,
                      int first);

} // namespace ewspb
