#include "ewspb/weighting.hpp"

#include <algorithm>
#include <cmath>

namespace ewspb {

namespace {

// The basis energy of a subband does not depend on the frame size as long
// as the probe sits in the subband interior, so big frames are replaced by
// a small geometry with the same level structure.
DecompositionSpec probe_spec(const DecompositionSpec &spec) {
  DecompositionSpec p = spec;
  const int unit = 1 << p.spatial_levels;
  const int side = unit * 8;
  if (p.width > side && p.width % unit == 0)
    p.width = side;
  if (p.height > side && p.height % unit == 0)
    p.height = side;
  return p;
}

} // namespace

double basis_energy(const SubbandId &subband, const DecompositionSpec &spec) {
  spec.validate();
  auto [first, count] = temporal_band_frames(spec, subband.temporal_band);
  if (subband.frame_in_band < 0 || subband.frame_in_band >= count)
    throw InvalidDimensions("basis_energy: frame outside temporal band");
  const BandRegion reg =
      spatial_band_region(spec, subband.spatial, subband.spatial_level);
  if (reg.rows < 1 || reg.cols < 1)
    throw SubbandTooSmall("basis_energy: empty subband region");

  CoeffVolume cv;
  cv.spec = spec;
  cv.samples = Volume(spec.gop_length, spec.height, spec.width);
  const int f = first + subband.frame_in_band;
  const int r = reg.row0 + reg.rows / 2;
  const int c = reg.col0 + reg.cols / 2;
  cv.samples.at(f, r, c) = 1.0;

  const Volume rec = inverse_gop(cv);
  double e = 0.0;
  for (double x : rec.data())
    e += x * x;
  return e;
}

WeightTable WeightTable::build(const DecompositionSpec &spec) {
  spec.validate();
  WeightTable t;
  t.spec_ = spec;
  t.bands_ = spatial_band_list(spec);

  const DecompositionSpec ps = probe_spec(spec);
  t.per_frame_.assign(spec.gop_length,
                      std::vector<double>(t.bands_.size(), 1.0));
  for (int f = 0; f < spec.gop_length; ++f) {
    const int band = temporal_band_of_frame(spec, f);
    const int in_band = f - temporal_band_frames(spec, band).first;
    for (size_t bi = 0; bi < t.bands_.size(); ++bi) {
      SubbandId id{band, in_band, t.bands_[bi].first, t.bands_[bi].second};
      const double w = std::sqrt(basis_energy(id, ps));
      t.per_frame_[f][bi] = w;
      t.entries_.push_back({id, w});
    }
  }
  return t;
}

double WeightTable::weight(const SubbandId &id) const {
  auto [first, count] = temporal_band_frames(spec_, id.temporal_band);
  const int f = first + id.frame_in_band;
  for (size_t bi = 0; bi < bands_.size(); ++bi)
    if (bands_[bi].first == id.spatial && bands_[bi].second == id.spatial_level)
      return per_frame_[f][bi];
  throw InvalidDimensions("WeightTable::weight: unknown subband");
}

double WeightTable::weight_at(int frame, int row, int col) const {
  const SubbandId id = subband_of(spec_, frame, row, col);
  for (size_t bi = 0; bi < bands_.size(); ++bi)
    if (bands_[bi].first == id.spatial && bands_[bi].second == id.spatial_level)
      return per_frame_[frame][bi];
  throw InvalidDimensions("WeightTable::weight_at: unknown subband");
}

namespace {

CoeffVolume scale_by_weights(const CoeffVolume &coeffs, const WeightTable &table,
                             bool invert) {
  if (!(coeffs.spec == table.spec()))
    throw SpecMismatch("weighting: table spec does not match volume spec");
  CoeffVolume out = coeffs;
  const DecompositionSpec &spec = coeffs.spec;
  for (int f = 0; f < spec.gop_length; ++f) {
    // one weight per spatial band per frame; walk band regions directly
    for (auto [sb, lvl] : spatial_band_list(spec)) {
      const BandRegion reg = spatial_band_region(spec, sb, lvl);
      const int band = temporal_band_of_frame(spec, f);
      const int in_band = f - temporal_band_frames(spec, band).first;
      const double w = table.weight({band, in_band, sb, lvl});
      const double m = invert ? 1.0 / w : w;
      for (int r = reg.row0; r < reg.row0 + reg.rows; ++r)
        for (int c = reg.col0; c < reg.col0 + reg.cols; ++c)
          out.samples.at(f, r, c) *= m;
    }
  }
  return out;
}

} // namespace

CoeffVolume apply_weights(const CoeffVolume &coeffs, const WeightTable &table) {
  return scale_by_weights(coeffs, table, false);
}

CoeffVolume remove_weights(const CoeffVolume &coeffs, const WeightTable &table) {
  return scale_by_weights(coeffs, table, true);
}

} // namespace ewspb
