#pragma once

#include <vector>

#include "ewspb/wavelet.hpp"

namespace ewspb {

/// Total squared-sample energy of the inverse transform of a unit impulse
/// placed at the center of the given subband.
double basis_energy(const SubbandId &subband, const DecompositionSpec &spec);

/// Per-subband multiplicative weights, sqrt of basis energy. One entry per
/// (temporal frame, spatial band) of the spec. Weights depend only on the
/// decomposition structure, so they are measured on a reduced probe
/// geometry when the frames are large; the result is deterministic for a
/// fixed spec and convention.
class WeightTable {
public:
  static WeightTable build(const DecompositionSpec &spec);

  const DecompositionSpec &spec() const { return spec_; }
  Convention convention() const { return spec_.convention; }

  double weight(const SubbandId &id) const;
  double weight_at(int frame, int row, int col) const;

  struct Entry {
    SubbandId id;
    double value;
  };
  const std::vector<Entry> &entries() const { return entries_; }

private:
  DecompositionSpec spec_;
  std::vector<Entry> entries_;
  // dense lookup: [frame][spatial pair index in spatial_band_list order]
  std::vector<std::vector<double>> per_frame_;
  std::vector<std::pair<SpatialBand, int>> bands_;
};

CoeffVolume apply_weights(const CoeffVolume &coeffs, const WeightTable &table);
CoeffVolume remove_weights(const CoeffVolume &coeffs, const WeightTable &table);

} // namespace ewspb
