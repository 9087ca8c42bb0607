#include "ewspb/wavelet.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace ewspb {

namespace {

// CDF 9/7 lifting constants, scale chosen so the analysis low-pass has
// unit DC gain and the high-pass has Nyquist gain 2 (JPEG 2000).
constexpr double kAlpha97 = -1.586134342059924;
constexpr double kBeta97 = -0.052980118572961;
constexpr double kGamma97 = 0.882911075530934;
constexpr double kDelta97 = 0.443506852043971;
constexpr double kScale97 = 1.230174104914001;

// Whole-sample symmetric index reflection, period 2(n-1).
inline long reflect(long i, long n) {
  if (n <= 1)
    return 0;
  const long p = 2 * (n - 1);
  i %= p;
  if (i < 0)
    i += p;
  return i < n ? i : p - i;
}

void lift_forward(std::vector<double> &y, const FilterBank &fb) {
  const long n = static_cast<long>(y.size());
  for (const auto &st : fb.steps) {
    const long start = st.update_even ? 0 : 1;
    for (long i = start; i < n; i += 2)
      y[i] += st.coeff * (y[reflect(i - 1, n)] + y[reflect(i + 1, n)]);
  }
  for (long i = 0; i < n; i += 2)
    y[i] *= fb.low_gain;
  for (long i = 1; i < n; i += 2)
    y[i] *= fb.high_gain;
}

void lift_inverse(std::vector<double> &y, const FilterBank &fb) {
  const long n = static_cast<long>(y.size());
  for (long i = 0; i < n; i += 2)
    y[i] /= fb.low_gain;
  for (long i = 1; i < n; i += 2)
    y[i] /= fb.high_gain;
  for (auto it = fb.steps.rbegin(); it != fb.steps.rend(); ++it) {
    const long start = it->update_even ? 0 : 1;
    for (long i = start; i < n; i += 2)
      y[i] -= it->coeff * (y[reflect(i - 1, n)] + y[reflect(i + 1, n)]);
  }
}

// Forward transform of an even-length scratch buffer, dyadic layout:
// low half then high half.
void forward_span(std::vector<double> &buf, const FilterBank &fb,
                  std::vector<double> &tmp) {
  lift_forward(buf, fb);
  const size_t h = buf.size() / 2;
  tmp.resize(buf.size());
  for (size_t i = 0; i < h; ++i) {
    tmp[i] = buf[2 * i];
    tmp[h + i] = buf[2 * i + 1];
  }
  buf.swap(tmp);
}

void inverse_span(std::vector<double> &buf, const FilterBank &fb,
                  std::vector<double> &tmp) {
  const size_t h = buf.size() / 2;
  tmp.resize(buf.size());
  for (size_t i = 0; i < h; ++i) {
    tmp[2 * i] = buf[i];
    tmp[2 * i + 1] = buf[h + i];
  }
  buf.swap(tmp);
  lift_inverse(buf, fb);
}

} // namespace

FilterBank FilterBank::make(FilterKind kind, Convention conv) {
  (void)conv; // single convention for now
  FilterBank fb;
  fb.id = kind;
  switch (kind) {
  case FilterKind::Lazy:
    break;
  case FilterKind::LeGall53:
    fb.steps = {{false, -0.5}, {true, 0.25}};
    break;
  case FilterKind::Cdf97:
    fb.steps = {{false, kAlpha97},
                {true, kBeta97},
                {false, kGamma97},
                {true, kDelta97}};
    fb.low_gain = 1.0 / kScale97;
    fb.high_gain = kScale97;
    break;
  }
  return fb;
}

std::pair<std::vector<double>, std::vector<double>>
forward_1d(std::span<const double> signal, const FilterBank &filter) {
  if (signal.size() < 2 || signal.size() % 2 != 0)
    throw InvalidLength("forward_1d: signal length must be even and >= 2");
  std::vector<double> buf(signal.begin(), signal.end());
  lift_forward(buf, filter);
  const size_t h = buf.size() / 2;
  std::vector<double> low(h), high(h);
  for (size_t i = 0; i < h; ++i) {
    low[i] = buf[2 * i];
    high[i] = buf[2 * i + 1];
  }
  return {std::move(low), std::move(high)};
}

std::vector<double> inverse_1d(std::span<const double> low,
                               std::span<const double> high,
                               const FilterBank &filter) {
  if (low.size() != high.size() || low.empty())
    throw InvalidLength("inverse_1d: low/high lengths must match and be >= 1");
  std::vector<double> buf(low.size() * 2);
  for (size_t i = 0; i < low.size(); ++i) {
    buf[2 * i] = low[i];
    buf[2 * i + 1] = high[i];
  }
  lift_inverse(buf, filter);
  return buf;
}

void DecompositionSpec::validate() const {
  if (gop_length < 1 || width < 1 || height < 1)
    throw InvalidDimensions("spec: non-positive dimensions");
  if (temporal_levels < 0 || spatial_levels < 0)
    throw InvalidDimensions("spec: negative level count");
  if (temporal_levels > 0) {
    if (gop_length % (1 << temporal_levels) != 0 ||
        gop_length < (1 << temporal_levels))
      throw InvalidDimensions("spec: GOP length must be a multiple of "
                              "2^temporal_levels");
  }
  if (spatial_levels > 0) {
    const int d = 1 << spatial_levels;
    if (width % d != 0 || height % d != 0)
      throw InvalidDimensions(
          "spec: frame dimensions must be divisible by 2^spatial_levels");
  }
}

int temporal_band_of_frame(const DecompositionSpec &spec, int frame) {
  const int m = spec.temporal_levels > 0
                    ? spec.gop_length >> spec.temporal_levels
                    : spec.gop_length;
  if (frame < m)
    return 0;
  for (int b = 1; b <= spec.temporal_levels; ++b)
    if (frame < m << b)
      return b;
  throw InvalidDimensions("temporal_band_of_frame: frame out of range");
}

std::pair<int, int> temporal_band_frames(const DecompositionSpec &spec,
                                         int band) {
  const int m = spec.temporal_levels > 0
                    ? spec.gop_length >> spec.temporal_levels
                    : spec.gop_length;
  if (band == 0)
    return {0, m};
  return {m << (band - 1), m << (band - 1)};
}

std::string temporal_band_name(const DecompositionSpec &spec, int band) {
  if (spec.temporal_levels == 0)
    return "F";
  if (band == 0)
    return std::string(spec.temporal_levels, 'L');
  return std::string(spec.temporal_levels - band, 'L') + 'H';
}

std::string frame_row_name(const DecompositionSpec &spec, int frame) {
  const int band = temporal_band_of_frame(spec, frame);
  auto [first, count] = temporal_band_frames(spec, band);
  std::string name = temporal_band_name(spec, band);
  if (count > 1)
    name += "_" + std::to_string(frame - first + 1);
  return name;
}

BandRegion spatial_band_region(const DecompositionSpec &spec, SpatialBand band,
                               int level) {
  if (spec.spatial_levels == 0)
    return {0, 0, spec.height, spec.width};
  const int rh = spec.height >> level;
  const int cw = spec.width >> level;
  switch (band) {
  case SpatialBand::LL:
    return {0, 0, rh, cw};
  case SpatialBand::HL: // rows low, cols high
    return {0, cw, rh, cw};
  case SpatialBand::LH: // rows high, cols low
    return {rh, 0, rh, cw};
  case SpatialBand::HH:
    return {rh, cw, rh, cw};
  }
  throw InvalidDimensions("spatial_band_region: bad band");
}

std::string spatial_band_name(SpatialBand band, int level) {
  static const char *names[] = {"LL", "HL", "LH", "HH"};
  return std::string(names[static_cast<int>(band)]) +
         (level > 0 ? std::to_string(level) : std::string());
}

std::vector<std::pair<SpatialBand, int>>
spatial_band_list(const DecompositionSpec &spec) {
  std::vector<std::pair<SpatialBand, int>> out;
  if (spec.spatial_levels == 0) {
    out.emplace_back(SpatialBand::LL, 0);
    return out;
  }
  out.emplace_back(SpatialBand::LL, spec.spatial_levels);
  for (int l = spec.spatial_levels; l >= 1; --l) {
    out.emplace_back(SpatialBand::LH, l);
    out.emplace_back(SpatialBand::HL, l);
    out.emplace_back(SpatialBand::HH, l);
  }
  return out;
}

SubbandId subband_of(const DecompositionSpec &spec, int frame, int row,
                     int col) {
  SubbandId id;
  id.temporal_band = temporal_band_of_frame(spec, frame);
  id.frame_in_band = frame - temporal_band_frames(spec, id.temporal_band).first;
  if (spec.spatial_levels == 0) {
    id.spatial = SpatialBand::LL;
    id.spatial_level = 0;
    return id;
  }
  const int s = spec.spatial_levels;
  if (row < spec.height >> s && col < spec.width >> s) {
    id.spatial = SpatialBand::LL;
    id.spatial_level = s;
    return id;
  }
  for (int l = s; l >= 1; --l) {
    const int rh = spec.height >> l;
    const int cw = spec.width >> l;
    if (row < 2 * rh && col < 2 * cw) {
      const bool rlow = row < rh;
      const bool clow = col < cw;
      id.spatial = rlow ? SpatialBand::HL : (clow ? SpatialBand::LH
                                                  : SpatialBand::HH);
      id.spatial_level = l;
      return id;
    }
  }
  throw InvalidDimensions("subband_of: index out of range");
}

std::vector<SubbandId> list_subbands(const DecompositionSpec &spec) {
  std::vector<SubbandId> out;
  for (int f = 0; f < spec.gop_length; ++f) {
    const int band = temporal_band_of_frame(spec, f);
    const int in_band = f - temporal_band_frames(spec, band).first;
    for (auto [sb, lvl] : spatial_band_list(spec))
      out.push_back({band, in_band, sb, lvl});
  }
  return out;
}

CoeffVolume forward_gop(const Volume &gop, const DecompositionSpec &spec) {
  spec.validate();
  if (gop.frames() != spec.gop_length || gop.rows() != spec.height ||
      gop.cols() != spec.width)
    throw InvalidDimensions("forward_gop: GOP dimensions do not match spec");

  CoeffVolume cv{gop, spec};
  Volume &v = cv.samples;
  const FilterBank tf = FilterBank::make(spec.temporal_filter, spec.convention);
  const FilterBank sf = FilterBank::make(spec.spatial_filter, spec.convention);
  std::vector<double> buf, tmp;

  // temporal lifting on the recursively low band, frame axis
  for (int l = 0; l < spec.temporal_levels; ++l) {
    const int len = spec.gop_length >> l;
    buf.resize(len);
    for (int r = 0; r < spec.height; ++r)
      for (int c = 0; c < spec.width; ++c) {
        for (int f = 0; f < len; ++f)
          buf[f] = v.at(f, r, c);
        forward_span(buf, tf, tmp);
        for (int f = 0; f < len; ++f)
          v.at(f, r, c) = buf[f];
      }
  }

  // per-frame 2-D dyadic decomposition: rows then columns per level
  for (int f = 0; f < spec.gop_length; ++f)
    for (int l = 0; l < spec.spatial_levels; ++l) {
      const int rh = spec.height >> l;
      const int cw = spec.width >> l;
      buf.resize(cw);
      for (int r = 0; r < rh; ++r) {
        for (int c = 0; c < cw; ++c)
          buf[c] = v.at(f, r, c);
        forward_span(buf, sf, tmp);
        for (int c = 0; c < cw; ++c)
          v.at(f, r, c) = buf[c];
      }
      buf.resize(rh);
      for (int c = 0; c < cw; ++c) {
        for (int r = 0; r < rh; ++r)
          buf[r] = v.at(f, r, c);
        forward_span(buf, sf, tmp);
        for (int r = 0; r < rh; ++r)
          v.at(f, r, c) = buf[r];
      }
    }
  return cv;
}

Volume inverse_gop(const CoeffVolume &coeffs) {
  const DecompositionSpec &spec = coeffs.spec;
  spec.validate();
  if (coeffs.samples.frames() != spec.gop_length ||
      coeffs.samples.rows() != spec.height ||
      coeffs.samples.cols() != spec.width)
    throw InvalidDimensions("inverse_gop: volume does not match spec");

  Volume v = coeffs.samples;
  const FilterBank tf = FilterBank::make(spec.temporal_filter, spec.convention);
  const FilterBank sf = FilterBank::make(spec.spatial_filter, spec.convention);
  std::vector<double> buf, tmp;

  for (int f = 0; f < spec.gop_length; ++f)
    for (int l = spec.spatial_levels - 1; l >= 0; --l) {
      const int rh = spec.height >> l;
      const int cw = spec.width >> l;
      buf.resize(rh);
      for (int c = 0; c < cw; ++c) {
        for (int r = 0; r < rh; ++r)
          buf[r] = v.at(f, r, c);
        inverse_span(buf, sf, tmp);
        for (int r = 0; r < rh; ++r)
          v.at(f, r, c) = buf[r];
      }
      buf.resize(cw);
      for (int r = 0; r < rh; ++r) {
        for (int c = 0; c < cw; ++c)
          buf[c] = v.at(f, r, c);
        inverse_span(buf, sf, tmp);
        for (int c = 0; c < cw; ++c)
          v.at(f, r, c) = buf[c];
      }
    }

  for (int l = spec.temporal_levels - 1; l >= 0; --l) {
    const int len = spec.gop_length >> l;
    buf.resize(len);
    for (int r = 0; r < spec.height; ++r)
      for (int c = 0; c < spec.width; ++c) {
        for (int f = 0; f < len; ++f)
          buf[f] = v.at(f, r, c);
        inverse_span(buf, tf, tmp);
        for (int f = 0; f < len; ++f)
          v.at(f, r, c) = buf[f];
      }
  }
  return v;
}

} // namespace ewspb
