#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ewspb/analysis.hpp"
#include "ewspb/codec.hpp"

using namespace ewspb;

namespace {

FilterKind parse_filter(const std::string &s) {
  if (s == "5/3" || s == "legall53" || s == "53")
    return FilterKind::LeGall53;
  if (s == "9/7" || s == "cdf97" || s == "97")
    return FilterKind::Cdf97;
  if (s == "lazy")
    return FilterKind::Lazy;
  throw CLI::ValidationError("filter", "unknown filter: " + s);
}

void emit(const std::string &text, const std::string &csv_path) {
  if (csv_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(csv_path, std::ios::trunc);
  if (!out)
    throw InvalidFile("cannot open " + csv_path);
  out << text;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"scalable 3-D wavelet video codec"};
  app.require_subcommand(1);

  // ---- encode
  auto *enc = app.add_subcommand("encode", "encode raw YUV 4:2:0 to a stream");
  std::string in_path, out_path, tree_name = "ewspb", rate_split = "auto",
              tfilter = "5/3", sfilter = "9/7";
  int width = 0, height = 0, frames = 0, gop = 16, tlevels = 4, slevels = 3;
  double bitrate = 1500.0, fps = 30.0;
  bool no_weights = false;
  enc->add_option("--input", in_path, "raw .yuv input")->required();
  enc->add_option("--output", out_path, "output stream")->required();
  enc->add_option("--width", width)->required();
  enc->add_option("--height", height)->required();
  enc->add_option("--frames", frames, "frame count (0 = whole file)");
  enc->add_option("--bitrate", bitrate, "target kbps (0 = lossless-depth)");
  enc->add_option("--fps", fps, "frame rate for budget conversion");
  enc->add_option("--gop", gop);
  enc->add_option("--tlevels", tlevels, "temporal decomposition levels");
  enc->add_option("--slevels", slevels, "spatial decomposition levels");
  enc->add_option("--tree", tree_name)
      ->check(CLI::IsMember({"ewspb", "asym"}));
  enc->add_option("--tfilter", tfilter, "temporal filter (5/3, 9/7, lazy)");
  enc->add_option("--sfilter", sfilter, "spatial filter (5/3, 9/7, lazy)");
  enc->add_flag("--no-weights", no_weights, "disable subband weighting");
  enc->add_option("--rate-split", rate_split, "auto or y:u:v shares");

  // ---- decode
  auto *dec = app.add_subcommand("decode", "decode a stream to raw YUV");
  std::string d_in, d_out;
  double d_budget = 0.0;
  dec->add_option("--input", d_in)->required();
  dec->add_option("--output", d_out)->required();
  dec->add_option("--budget", d_budget, "prefix-decode at this kbps");

  // ---- analyze
  auto *ana = app.add_subcommand("analyze", "weight/energy/zerotree/rd reports");
  std::string mode, a_in, csv_path;
  int a_width = 0, a_height = 0, a_frames = 0, max_scan = 7;
  uint64_t a_seed = 1;
  std::vector<double> a_bitrates = {128, 256, 384, 500, 768, 1000, 1500};
  ana->add_option("--mode", mode)
      ->required()
      ->check(CLI::IsMember({"weights", "energy", "zerotree", "rd"}));
  ana->add_option("--input", a_in, "raw .yuv input (energy/zerotree/rd)");
  ana->add_option("--width", a_width);
  ana->add_option("--height", a_height);
  ana->add_option("--frames", a_frames);
  ana->add_option("--seed", a_seed, "synthetic clip seed when no --input");
  ana->add_option("--scans", max_scan, "zerotree scan count");
  ana->add_option("--bitrates", a_bitrates, "rd bitrate grid (kbps)");
  ana->add_option("--csv", csv_path, "write CSV here instead of stdout");
  ana->add_option("--gop", gop);
  ana->add_option("--tlevels", tlevels);
  ana->add_option("--slevels", slevels);
  ana->add_option("--tfilter", tfilter);
  ana->add_option("--sfilter", sfilter);

  CLI11_PARSE(app, argc, argv);

  try {
    EncodeParams params;
    params.gop_length = gop;
    params.temporal_levels = tlevels;
    params.spatial_levels = slevels;
    params.temporal_filter = parse_filter(tfilter);
    params.spatial_filter = parse_filter(sfilter);
    params.fps = fps;

    if (enc->parsed()) {
      params.tree = tree_name == "asym" ? TreeKind::Asym3d : TreeKind::Ewspb;
      params.weighted = !no_weights;
      params.bitrate_kbps = bitrate;
      if (rate_split != "auto") {
        if (std::sscanf(rate_split.c_str(), "%lf:%lf:%lf", &params.split_y,
                        &params.split_u, &params.split_v) != 3 ||
            params.split_y <= 0 || params.split_u <= 0 || params.split_v <= 0)
          throw CLI::ValidationError("--rate-split",
                                     "expected auto or y:u:v positive shares");
      }
      Clip clip = read_yuv420(in_path, width, height);
      if (frames > 0 && frames < clip.frame_count()) {
        clip.y.resize(size_t(frames));
        clip.u.resize(size_t(frames));
        clip.v.resize(size_t(frames));
      }
      write_file(out_path, encode_clip(clip, params));
      return 0;
    }

    if (dec->parsed()) {
      const Clip out = decode_stream(read_file(d_in), d_budget);
      write_yuv420(d_out, out);
      return 0;
    }

    // analyze
    auto load_clip = [&]() {
      if (!a_in.empty()) {
        if (a_width <= 0 || a_height <= 0)
          throw CLI::ValidationError("--input",
                                     "--width/--height required with --input");
        Clip c = read_yuv420(a_in, a_width, a_height);
        if (a_frames > 0 && a_frames < c.frame_count()) {
          c.y.resize(size_t(a_frames));
          c.u.resize(size_t(a_frames));
          c.v.resize(size_t(a_frames));
        }
        return c;
      }
      return synthetic_clip(a_seed, a_frames > 0 ? a_frames : 32,
                            a_width > 0 ? a_width : 352,
                            a_height > 0 ? a_height : 288);
    };
    auto first_gop_coeffs = [&](const Clip &c) {
      DecompositionSpec s;
      s.gop_length = params.gop_length;
      s.width = c.width;
      s.height = c.height;
      s.temporal_levels = params.temporal_levels;
      s.spatial_levels = params.spatial_levels;
      s.temporal_filter = params.temporal_filter;
      s.spatial_filter = params.spatial_filter;
      s.validate();
      if (c.frame_count() < s.gop_length)
        throw InvalidDimensions("analysis clip shorter than one GOP");
      return forward_gop(planes_to_volume(c.y, 0, s.gop_length), s);
    };

    if (mode == "weights") {
      DecompositionSpec s;
      s.gop_length = params.gop_length;
      s.width = a_width > 0 ? a_width : 352;
      s.height = a_height > 0 ? a_height : 288;
      s.temporal_levels = params.temporal_levels;
      s.spatial_levels = params.spatial_levels;
      s.temporal_filter = params.temporal_filter;
      s.spatial_filter = params.spatial_filter;
      s.validate();
      emit(weight_report_csv(weight_report(WeightTable::build(s))), csv_path);
    } else if (mode == "energy") {
      emit(energy_report_csv(subband_energy_report(first_gop_coeffs(load_clip()))),
           csv_path);
    } else if (mode == "zerotree") {
      emit(zerotree_report_csv(
               zerotree_report(first_gop_coeffs(load_clip()), max_scan)),
           csv_path);
    } else { // rd
      emit(rd_curve_csv(rd_curve(load_clip(), params, a_bitrates)), csv_path);
    }
    return 0;
  } catch (const CLI::ValidationError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
