#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ewspb/analysis.hpp"
#include "ewspb/codec.hpp"

namespace py = pybind11;
using namespace ewspb;

namespace {

Volume volume_from_array(const py::array_t<double, py::array::c_style |
                                                       py::array::forcecast> &a) {
  if (a.ndim() != 3)
    throw py::value_error("expected a (frames, rows, cols) array");
  Volume v(int(a.shape(0)), int(a.shape(1)), int(a.shape(2)));
  std::copy_n(a.data(), v.size(), v.data().data());
  return v;
}

py::array_t<double> array_from_volume(const Volume &v) {
  py::array_t<double> a({v.frames(), v.rows(), v.cols()});
  std::copy_n(v.data().data(), v.size(), a.mutable_data());
  return a;
}

DecompositionSpec make_spec(int gop, int width, int height, int tlevels,
                            int slevels, const std::string &tfilter,
                            const std::string &sfilter) {
  auto parse = [](const std::string &s) {
    if (s == "5/3")
      return FilterKind::LeGall53;
    if (s == "9/7")
      return FilterKind::Cdf97;
    if (s == "lazy")
      return FilterKind::Lazy;
    throw py::value_error("unknown filter: " + s);
  };
  DecompositionSpec spec;
  spec.gop_length = gop;
  spec.width = width;
  spec.height = height;
  spec.temporal_levels = tlevels;
  spec.spatial_levels = slevels;
  spec.temporal_filter = parse(tfilter);
  spec.spatial_filter = parse(sfilter);
  spec.validate();
  return spec;
}

TreeKind parse_tree(const std::string &s) {
  if (s == "ewspb")
    return TreeKind::Ewspb;
  if (s == "asym")
    return TreeKind::Asym3d;
  throw py::value_error("unknown tree: " + s);
}

} // namespace

PYBIND11_MODULE(_ewspb, m) {
  m.doc() = "scalable 3-D wavelet video codec core";

  py::class_<DecompositionSpec>(m, "Spec")
      .def(py::init(&make_spec), py::arg("gop") = 16, py::arg("width") = 352,
           py::arg("height") = 288, py::arg("tlevels") = 4,
           py::arg("slevels") = 3, py::arg("tfilter") = "5/3",
           py::arg("sfilter") = "9/7")
      .def_readonly("gop", &DecompositionSpec::gop_length)
      .def_readonly("width", &DecompositionSpec::width)
      .def_readonly("height", &DecompositionSpec::height)
      .def_readonly("tlevels", &DecompositionSpec::temporal_levels)
      .def_readonly("slevels", &DecompositionSpec::spatial_levels);

  m.def(
      "forward",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>
             &gop,
         const DecompositionSpec &spec) {
        return array_from_volume(forward_gop(volume_from_array(gop), spec)
                                     .samples);
      },
      py::arg("gop"), py::arg("spec"),
      "t+2D forward wavelet transform of a (frames, rows, cols) array");

  m.def(
      "inverse",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>
             &coeffs,
         const DecompositionSpec &spec) {
        CoeffVolume cv;
        cv.spec = spec;
        cv.samples = volume_from_array(coeffs);
        return array_from_volume(inverse_gop(cv));
      },
      py::arg("coeffs"), py::arg("spec"));

  m.def(
      "weight_table",
      [](const DecompositionSpec &spec) {
        const auto rep = weight_report(WeightTable::build(spec));
        py::dict d;
        d["rows"] = rep.row_labels;
        d["cols"] = rep.col_labels;
        d["values"] = rep.cells;
        return d;
      },
      py::arg("spec"), "per-subband weights in report layout");

  m.def(
      "zerotree_ratios",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>
             &coeffs,
         const DecompositionSpec &spec, const std::string &tree, int scan,
         int degree) {
        CoeffVolume cv;
        cv.spec = spec;
        cv.samples = volume_from_array(coeffs);
        return zerotree_ratio(cv, TreeTopology::make(parse_tree(tree), spec),
                              scan, degree);
      },
      py::arg("coeffs"), py::arg("spec"), py::arg("tree") = "ewspb",
      py::arg("scan") = 1, py::arg("degree") = 1);

  m.def(
      "encode_file",
      [](const std::string &yuv_path, const std::string &out_path, int width,
         int height, double bitrate_kbps, const std::string &tree,
         bool weighted) {
        EncodeParams p;
        p.bitrate_kbps = bitrate_kbps;
        p.tree = parse_tree(tree);
        p.weighted = weighted;
        write_file(out_path,
                   encode_clip(read_yuv420(yuv_path, width, height), p));
      },
      py::arg("yuv_path"), py::arg("out_path"), py::arg("width"),
      py::arg("height"), py::arg("bitrate_kbps") = 1500.0,
      py::arg("tree") = "ewspb", py::arg("weighted") = true);

  m.def(
      "decode_file",
      [](const std::string &stream_path, const std::string &out_path,
         double budget_kbps) {
        write_yuv420(out_path, decode_stream(read_file(stream_path),
                                             budget_kbps));
      },
      py::arg("stream_path"), py::arg("out_path"),
      py::arg("budget_kbps") = 0.0);

  m.def(
      "psnr_files",
      [](const std::string &a, const std::string &b, int width, int height) {
        return psnr(read_yuv420(a, width, height),
                    read_yuv420(b, width, height));
      },
      py::arg("a"), py::arg("b"), py::arg("width"), py::arg("height"));

  m.def(
      "make_synthetic",
      [](const std::string &out_path, uint64_t seed, int frames, int width,
         int height) {
        write_yuv420(out_path, synthetic_clip(seed, frames, width, height));
      },
      py::arg("out_path"), py::arg("seed") = 1, py::arg("frames") = 32,
      py::arg("width") = 352, py::arg("height") = 288);
}
