#include "ewspb/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ewspb {

WeightReport weight_report(const WeightTable &table) {
  const DecompositionSpec &spec = table.spec();
  WeightReport rep;
  const auto bands = spatial_band_list(spec);
  for (const auto &[b, lvl] : bands)
    rep.col_labels.push_back(spatial_band_name(b, lvl));
  for (int f = 0; f < spec.gop_length; ++f) {
    rep.row_labels.push_back(frame_row_name(spec, f));
    std::vector<double> row;
    for (const auto &[b, lvl] : bands) {
      const BandRegion reg = spatial_band_region(spec, b, lvl);
      row.push_back(table.weight_at(f, reg.row0, reg.col0));
    }
    rep.cells.push_back(std::move(row));
  }
  return rep;
}

std::string weight_report_csv(const WeightReport &rep) {
  std::ostringstream os;
  os << "subband";
  for (const auto &c : rep.col_labels)
    os << ',' << c;
  os << '\n';
  char buf[32];
  for (size_t r = 0; r < rep.cells.size(); ++r) {
    os << rep.row_labels[r];
    for (double v : rep.cells[r]) {
      std::snprintf(buf, sizeof buf, "%.4f", v);
      os << ',' << buf;
    }
    os << '\n';
  }
  return os.str();
}

std::vector<EnergyRow> subband_energy_report(const CoeffVolume &coeffs) {
  const DecompositionSpec &spec = coeffs.spec;
  const Volume &v = coeffs.samples;
  const size_t frame_sz = size_t(spec.height) * spec.width;
  auto frame_energy = [&](int f) {
    double e = 0.0;
    for (int r = 0; r < spec.height; ++r)
      for (int c = 0; c < spec.width; ++c)
        e += v.at(f, r, c) * v.at(f, r, c);
    return e;
  };
  const BandRegion ll =
      spatial_band_region(spec, SpatialBand::LL, spec.spatial_levels);
  auto spatial_high_mean = [&](int f) {
    double e = 0.0;
    size_t n = 0;
    for (int r = 0; r < spec.height; ++r)
      for (int c = 0; c < spec.width; ++c)
        if (r >= ll.rows || c >= ll.cols) {
          e += v.at(f, r, c) * v.at(f, r, c);
          ++n;
        }
    return n ? e / double(n) : 0.0;
  };
  std::vector<EnergyRow> rows;
  for (int f = 0; f < spec.gop_length; ++f) {
    const int c0 = f == 0 ? 1 : 2 * f;
    const int c1 = f == 0 ? 1 : 2 * f + 1;
    if (c0 >= spec.gop_length)
      continue; // no temporal children
    EnergyRow row;
    row.frame = f;
    row.label = frame_row_name(spec, f);
    row.spatial = spatial_high_mean(f);
    double te = frame_energy(c0);
    size_t tn = frame_sz;
    if (c1 != c0 && c1 < spec.gop_length) {
      te += frame_energy(c1);
      tn += frame_sz;
    }
    row.temporal = te / double(tn);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string energy_report_csv(const std::vector<EnergyRow> &rows) {
  std::ostringstream os;
  os << "frame,label,spatial_high_mean,temporal_child_mean\n";
  char buf[64];
  for (const auto &r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%s,%.6f,%.6f", r.frame,
                  r.label.c_str(), r.spatial, r.temporal);
    os << buf << '\n';
  }
  return os.str();
}

double zerotree_ratio(const SignificancePyramids &pyramids, int scan_exp,
                      int degree) {
  const TreeTopology &topo = pyramids.topology();
  const DecompositionSpec &spec = topo.spec();
  const double t = std::ldexp(1.0, scan_exp);
  uint64_t total = 0, zero = 0;
  for (int f = 0; f < spec.gop_length; ++f)
    for (int r = 0; r < spec.height; ++r)
      for (int c = 0; c < spec.width; ++c) {
        const NodeRef n{NodeKind::Coeff, f, r, c};
        const bool temporal = topo.id() == TreeKind::Ewspb &&
                              topo.is_block_root_position(r, c);
        ++total;
        const double m = degree == 1 ? pyramids.desc_max(n, temporal)
                                     : pyramids.l_max(n, temporal);
        if (m < t) // empty sets report max 0: vacuous zerotrees count
          ++zero;
      }
  return total == 0 ? 100.0 : 100.0 * double(zero) / double(total);
}

double zerotree_ratio(const CoeffVolume &coeffs, const TreeTopology &topology,
                      int scan, int degree) {
  int n;
  try {
    n = initial_threshold(coeffs);
  } catch (const EmptyGop &) {
    return 100.0;
  }
  SignificancePyramids pyr(coeffs, topology);
  return zerotree_ratio(pyr, n - scan + 1, degree);
}

std::vector<ZerotreeRow> zerotree_report(const CoeffVolume &coeffs,
                                         int max_scan) {
  std::vector<ZerotreeRow> rows;
  const auto ew = TreeTopology::make(TreeKind::Ewspb, coeffs.spec);
  const auto as = TreeTopology::make(TreeKind::Asym3d, coeffs.spec);
  int n;
  try {
    n = initial_threshold(coeffs);
  } catch (const EmptyGop &) {
    for (int i = 1; i <= max_scan; ++i)
      rows.push_back({i, 100.0, 100.0, 100.0, 100.0});
    return rows;
  }
  SignificancePyramids pe(coeffs, ew), pa(coeffs, as);
  for (int i = 1; i <= max_scan; ++i) {
    const int e = n - i + 1;
    rows.push_back({i, zerotree_ratio(pe, e, 1), zerotree_ratio(pe, e, 2),
                    zerotree_ratio(pa, e, 1), zerotree_ratio(pa, e, 2)});
  }
  return rows;
}

std::string zerotree_report_csv(const std::vector<ZerotreeRow> &rows) {
  std::ostringstream os;
  os << "scan,ewspb_deg1,ewspb_deg2,asym_deg1,asym_deg2\n";
  char buf[96];
  for (const auto &r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.2f,%.2f,%.2f,%.2f", r.scan,
                  r.ewspb_d1, r.ewspb_d2, r.asym_d1, r.asym_d2);
    os << buf << '\n';
  }
  return os.str();
}

std::vector<RdPoint> rd_curve(const Clip &clip, const EncodeParams &params,
                              const std::vector<double> &bitrates) {
  double top = 0.0;
  for (double b : bitrates)
    top = std::max(top, b);
  EncodeParams p = params;
  p.bitrate_kbps = top;
  const auto stream = encode_clip(clip, p);
  std::vector<RdPoint> points;
  for (double b : bitrates) {
    const Clip out = decode_stream(stream, b);
    RdPoint pt;
    pt.bitrate_kbps = b;
    pt.psnr_y = plane_group_psnr(clip.y, out.y);
    if (!clip.mono()) {
      pt.psnr_u = plane_group_psnr(clip.u, out.u);
      pt.psnr_v = plane_group_psnr(clip.v, out.v);
    }
    points.push_back(pt);
  }
  return points;
}

std::string rd_curve_csv(const std::vector<RdPoint> &points) {
  std::ostringstream os;
  os << "bitrate_kbps,psnr_y,psnr_u,psnr_v\n";
  char buf[96];
  for (const auto &p : points) {
    std::snprintf(buf, sizeof buf, "%.0f,%.4f,%.4f,%.4f", p.bitrate_kbps,
                  p.psnr_y, p.psnr_u, p.psnr_v);
    os << buf << '\n';
  }
  return os.str();
}

} // namespace ewspb
