#include "ewspb/videoio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>

namespace ewspb {

Clip read_yuv420(const std::string &path, int width, int height) {
  if (width <= 0 || height <= 0 || width % 2 || height % 2)
    throw InvalidDimensions("read_yuv420: dimensions must be positive even");
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InvalidFile("read_yuv420: cannot open " + path);
  const size_t ysz = size_t(width) * height;
  const size_t csz = ysz / 4;
  Clip clip;
  clip.width = width;
  clip.height = height;
  std::vector<char> buf(ysz + 2 * csz);
  for (;;) {
    in.read(buf.data(), std::streamsize(buf.size()));
    const size_t got = size_t(in.gcount());
    if (got == 0)
      break;
    if (got != buf.size())
      throw InvalidFile("read_yuv420: trailing partial frame in " + path);
    Plane py(height, width), pu(height / 2, width / 2),
        pv(height / 2, width / 2);
    std::copy_n(buf.data(), ysz, reinterpret_cast<char *>(py.pixels.data()));
    std::copy_n(buf.data() + ysz, csz,
                reinterpret_cast<char *>(pu.pixels.data()));
    std::copy_n(buf.data() + ysz + csz, csz,
                reinterpret_cast<char *>(pv.pixels.data()));
    clip.y.push_back(std::move(py));
    clip.u.push_back(std::move(pu));
    clip.v.push_back(std::move(pv));
  }
  if (clip.y.empty())
    throw InvalidFile("read_yuv420: no frames in " + path);
  return clip;
}

void write_yuv420(const std::string &path, const Clip &clip) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw InvalidFile("write_yuv420: cannot open " + path);
  for (int f = 0; f < clip.frame_count(); ++f) {
    auto put = [&](const Plane &p) {
      out.write(reinterpret_cast<const char *>(p.pixels.data()),
                std::streamsize(p.pixels.size()));
    };
    put(clip.y[f]);
    if (!clip.mono()) {
      put(clip.u[f]);
      put(clip.v[f]);
    }
  }
  if (!out)
    throw InvalidFile("write_yuv420: write failure on " + path);
}

double plane_psnr(const Plane &a, const Plane &b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw InvalidDimensions("plane_psnr: shape mismatch");
  double se = 0.0;
  for (size_t i = 0; i < a.pixels.size(); ++i) {
    const double d = double(a.pixels[i]) - double(b.pixels[i]);
    se += d * d;
  }
  if (se == 0.0)
    return std::numeric_limits<double>::infinity();
  const double mse = se / double(a.pixels.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double plane_group_psnr(const std::vector<Plane> &a,
                        const std::vector<Plane> &b) {
  if (a.size() != b.size() || a.empty())
    throw InvalidDimensions("plane_group_psnr: group size mismatch");
  double se = 0.0;
  size_t n = 0;
  for (size_t f = 0; f < a.size(); ++f) {
    if (a[f].rows != b[f].rows || a[f].cols != b[f].cols)
      throw InvalidDimensions("plane_group_psnr: plane shape mismatch");
    for (size_t i = 0; i < a[f].pixels.size(); ++i) {
      const double d = double(a[f].pixels[i]) - double(b[f].pixels[i]);
      se += d * d;
    }
    n += a[f].pixels.size();
  }
  if (se == 0.0)
    return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / (se / double(n)));
}

double psnr(const Clip &a, const Clip &b) {
  if (a.frame_count() != b.frame_count() || a.mono() != b.mono())
    throw InvalidDimensions("psnr: clip shape mismatch");
  double se = 0.0;
  size_t n = 0;
  auto acc = [&](const Plane &p, const Plane &q) {
    if (p.rows != q.rows || p.cols != q.cols)
      throw InvalidDimensions("psnr: plane shape mismatch");
    for (size_t i = 0; i < p.pixels.size(); ++i) {
      const double d = double(p.pixels[i]) - double(q.pixels[i]);
      se += d * d;
    }
    n += p.pixels.size();
  };
  for (int f = 0; f < a.frame_count(); ++f) {
    acc(a.y[f], b.y[f]);
    if (!a.mono()) {
      acc(a.u[f], b.u[f]);
      acc(a.v[f], b.v[f]);
    }
  }
  if (se == 0.0)
    return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / (se / double(n)));
}

Clip synthetic_clip(uint64_t seed, int frames, int width, int height) {
  if (width <= 0 || height <= 0 || width % 2 || height % 2 || frames <= 0)
    throw InvalidDimensions("synthetic_clip: bad geometry");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  // a handful of moving textured patches over a drifting gradient
  struct Patch {
    double r, c, vr, vc, size, amp, fr, fc;
  };
  std::vector<Patch> patches(6);
  for (auto &p : patches) {
    p.r = uni(rng) * height;
    p.c = uni(rng) * width;
    p.vr = (uni(rng) - 0.5) * 3.0;
    p.vc = (uni(rng) - 0.5) * 3.0;
    p.size = 6.0 + uni(rng) * double(std::min(width, height)) / 3.0;
    p.amp = 40.0 + uni(rng) * 80.0;
    p.fr = 0.2 + uni(rng) * 0.8;
    p.fc = 0.2 + uni(rng) * 0.8;
  }
  const double gr = (uni(rng) - 0.5) * 2.0;
  const double gc = (uni(rng) - 0.5) * 2.0;
  auto clamp8 = [](double v) {
    return uint8_t(std::lround(std::clamp(v, 0.0, 255.0)));
  };
  Clip clip;
  clip.width = width;
  clip.height = height;
  for (int f = 0; f < frames; ++f) {
    Plane py(height, width), pu(height / 2, width / 2),
        pv(height / 2, width / 2);
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c) {
        double v = 96.0 + 0.25 * (r + gr * f) + 0.25 * (c + gc * f);
        for (const auto &p : patches) {
          const double dr = r - (p.r + p.vr * f);
          const double dc = c - (p.c + p.vc * f);
          if (std::abs(dr) < p.size && std::abs(dc) < p.size)
            v += p.amp * std::cos(p.fr * dr) * std::cos(p.fc * dc) *
                 (1.0 - std::abs(dr) / p.size) * (1.0 - std::abs(dc) / p.size);
        }
        py.at(r, c) = clamp8(v);
      }
    for (int r = 0; r < height / 2; ++r)
      for (int c = 0; c < width / 2; ++c) {
        pu.at(r, c) = clamp8(118.0 + 24.0 * std::sin(0.05 * (r + f)));
        pv.at(r, c) = clamp8(138.0 + 24.0 * std::cos(0.05 * (c - f)));
      }
    clip.y.push_back(std::move(py));
    clip.u.push_back(std::move(pu));
    clip.v.push_back(std::move(pv));
  }
  return clip;
}

Volume planes_to_volume(const std::vector<Plane> &planes, int first,
                        int count) {
  if (first < 0 || count <= 0 || first + count > int(planes.size()))
    throw InvalidDimensions("planes_to_volume: bad frame range");
  const Plane &p0 = planes[first];
  Volume vol(count, p0.rows, p0.cols);
  for (int f = 0; f < count; ++f) {
    const Plane &p = planes[first + f];
    if (p.rows != p0.rows || p.cols != p0.cols)
      throw InvalidDimensions("planes_to_volume: ragged planes");
    for (int r = 0; r < p.rows; ++r)
      for (int c = 0; c < p.cols; ++c)
        vol.at(f, r, c) = double(p.at(r, c)) - 128.0;
  }
  return vol;
}

void volume_to_planes(const Volume &vol, std::vector<Plane> &planes,
                      int first) {
  if (first < 0 || first + vol.frames() > int(planes.size()))
    throw InvalidDimensions("volume_to_planes: bad frame range");
  for (int f = 0; f < vol.frames(); ++f) {
    Plane &p = planes[first + f];
    if (p.rows != vol.rows() || p.cols != vol.cols())
      throw InvalidDimensions("volume_to_planes: shape mismatch");
    for (int r = 0; r < p.rows; ++r)
      for (int c = 0; c < p.cols; ++c) {
        // round half away from zero, then clamp to 8 bits
        const double v = vol.at(f, r, c) + 128.0;
        const double q = v >= 0.0 ? std::floor(v + 0.5) : std::ceil(v - 0.5);
        p.at(r, c) = uint8_t(std::clamp(q, 0.0, 255.0));
      }
  }
}

} // namespace ewspb
