#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ewspb/common.hpp"

namespace ewspb {

enum class FilterKind : uint8_t { Lazy = 0, LeGall53 = 1, Cdf97 = 2 };

/// Filter normalization convention. Determines the lifting scale factors
/// and therefore the absolute subband weights. Recorded in the stream
/// header so encoder and decoder always agree.
enum class Convention : uint8_t { Jpeg2000 = 0 };

struct LiftStep {
  bool update_even; // true: even samples updated from odd neighbors
  double coeff;
};

struct FilterBank {
  FilterKind id = FilterKind::Lazy;
  std::vector<LiftStep> steps;
  double low_gain = 1.0;
  double high_gain = 1.0;

  static FilterBank make(FilterKind kind,
                         Convention conv = Convention::Jpeg2000);
};

/// (low, high) analysis split, symmetric whole-sample extension.
std::pair<std::vector<double>, std::vector<double>>
forward_1d(std::span<const double> signal, const FilterBank &filter);

/// Synthesis; exact inverse of forward_1d.
std::vector<double> inverse_1d(std::span<const double> low,
                               std::span<const double> high,
                               const FilterBank &filter);

struct DecompositionSpec {
  int gop_length = 16;
  int width = 0;
  int height = 0;
  int temporal_levels = 4;
  int spatial_levels = 3;
  FilterKind temporal_filter = FilterKind::LeGall53;
  FilterKind spatial_filter = FilterKind::Cdf97;
  Convention convention = Convention::Jpeg2000;

  bool operator==(const DecompositionSpec &) const = default;

  /// Throws InvalidDimensions on violated invariants.
  void validate() const;
};

enum class SpatialBand : uint8_t { LL = 0, HL = 1, LH = 2, HH = 3 };

struct SubbandId {
  int temporal_band = 0;  // 0 = all-lowpass, temporal_levels = finest H
  int frame_in_band = 0;  // frame index within the temporal band
  SpatialBand spatial = SpatialBand::LL; // LL only at the coarsest level
  int spatial_level = 0;  // 1..spatial_levels (coarsest = spatial_levels)

  bool operator==(const SubbandId &) const = default;
  bool operator<(const SubbandId &o) const {
    if (temporal_band != o.temporal_band) return temporal_band < o.temporal_band;
    if (frame_in_band != o.frame_in_band) return frame_in_band < o.frame_in_band;
    if (spatial_level != o.spatial_level) return spatial_level > o.spatial_level;
    return static_cast<int>(spatial) < static_cast<int>(o.spatial);
  }
};

struct CoeffVolume {
  Volume samples;
  DecompositionSpec spec;
};

/// Temporal band of frame f: 0 for the all-lowpass band, b in 1..levels
/// for the high band with (levels - b) leading L's. Bands occupy
/// [m*2^(b-1), m*2^b) with m = gop/2^levels.
int temporal_band_of_frame(const DecompositionSpec &spec, int frame);
/// First frame and frame count of a temporal band.
std::pair<int, int> temporal_band_frames(const DecompositionSpec &spec,
                                         int band);
std::string temporal_band_name(const DecompositionSpec &spec, int band);
/// Per-frame row label in Table-style reports, e.g. "LLLH", "H_3".
std::string frame_row_name(const DecompositionSpec &spec, int frame);

SubbandId subband_of(const DecompositionSpec &spec, int frame, int row,
                     int col);
/// (row0, col0, rows, cols) of a spatial band inside a frame.
struct BandRegion {
  int row0, col0, rows, cols;
};
BandRegion spatial_band_region(const DecompositionSpec &spec, SpatialBand band,
                               int level);
std::string spatial_band_name(SpatialBand band, int level);
/// All (band, level) spatial pairs in report order: LL_S, LH_S, HL_S, HH_S,
/// LH_{S-1}, ... For S = 0 the single pair is (LL, 0).
std::vector<std::pair<SpatialBand, int>>
spatial_band_list(const DecompositionSpec &spec);

std::vector<SubbandId> list_subbands(const DecompositionSpec &spec);

CoeffVolume forward_gop(const Volume &gop, const DecompositionSpec &spec);
Volume inverse_gop(const CoeffVolume &coeffs);

} // namespace ewspb
