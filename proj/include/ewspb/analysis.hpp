#pragma once

#include <string>
#include <vector>

#include "ewspb/codec.hpp"
#include "ewspb/coder.hpp"
#include "ewspb/weighting.hpp"

namespace ewspb {

/// Subband weight report: one row per temporal-frame position (LLLL, LLLH,
/// LLH_1, ..., H_8 for the 16/4 default), one column per spatial band in
/// coarse-to-fine order (LL_S, LH_S, HL_S, HH_S, LH_{S-1}, ...).
struct WeightReport {
  std::vector<std::string> row_labels;    // gop_length rows
  std::vector<std::string> col_labels;    // 3*S + 1 columns
  std::vector<std::vector<double>> cells; // [row][col]
};

WeightReport weight_report(const WeightTable &table);
std::string weight_report_csv(const WeightReport &rep);

/// Mean-energy comparison: one row per frame that has temporal children.
/// `spatial` is the mean squared value over that frame's spatial
/// high-frequency coefficients; `temporal` is the mean squared value over
/// all coefficients of the frame's temporal child frames.
struct EnergyRow {
  int frame = 0;
  std::string label;
  double spatial = 0.0;
  double temporal = 0.0;
};

std::vector<EnergyRow> subband_energy_report(const CoeffVolume &coeffs);
std::string energy_report_csv(const std::vector<EnergyRow> &rows);

/// Degree-k zerotree ratio (percent) at scan i: the share of tree nodes
/// whose descendants beyond depth k-1 hold no coefficient significant at
/// T_i = 2^(n-i+1), n from the volume's initial threshold. Every
/// coefficient is one node; an empty set is vacuously a zerotree, so the
/// denominator (the node count) is identical for both topologies.
/// degree k in {1, 2}. All-zero volume -> 100.
double zerotree_ratio(const CoeffVolume &coeffs, const TreeTopology &topology,
                      int scan, int degree);
double zerotree_ratio(const SignificancePyramids &pyramids, int scan_exp,
                      int degree);

struct ZerotreeRow {
  int scan = 0;
  double ewspb_d1 = 0.0, ewspb_d2 = 0.0;
  double asym_d1 = 0.0, asym_d2 = 0.0;
};

std::vector<ZerotreeRow> zerotree_report(const CoeffVolume &coeffs,
                                         int max_scan);
std::string zerotree_report_csv(const std::vector<ZerotreeRow> &rows);

/// Encode once at max(bitrates), then prefix-decode at each point.
struct RdPoint {
  double bitrate_kbps = 0.0;
  double psnr_y = 0.0, psnr_u = 0.0, psnr_v = 0.0;
};

std::vector<RdPoint> rd_curve(const Clip &clip, const EncodeParams &params,
                              const std::vector<double> &bitrates);
std::string rd_curve_csv(const std::vector<RdPoint> &points);

} // namespace ewspb
