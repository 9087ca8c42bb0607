#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ewspb/weighting.hpp"

using namespace ewspb;

namespace {

DecompositionSpec make_spec(int gop, int w, int h, int t, int s,
                            FilterKind tf = FilterKind::LeGall53,
                            FilterKind sf = FilterKind::Cdf97) {
  DecompositionSpec spec;
  spec.gop_length = gop;
  spec.width = w;
  spec.height = h;
  spec.temporal_levels = t;
  spec.spatial_levels = s;
  spec.temporal_filter = tf;
  spec.spatial_filter = sf;
  spec.validate();
  return spec;
}

DecompositionSpec cif_spec() { return make_spec(16, 352, 288, 4, 3); }

} // namespace

TEST_CASE("lazy filters give unit weights") {
  const auto spec =
      make_spec(8, 32, 32, 3, 2, FilterKind::Lazy, FilterKind::Lazy);
  const auto table = WeightTable::build(spec);
  for (const auto &e : table.entries())
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("1-level temporal 5/3 reproduces the hand-derived energies") {
  // purely temporal split with interior probes (band centers)
  const auto spec =
      make_spec(16, 8, 8, 1, 0, FilterKind::LeGall53, FilterKind::Lazy);
  SubbandId low{0, 4, SpatialBand::LL, 0}, high{1, 4, SpatialBand::LL, 0};
  CHECK(std::abs(basis_energy(low, spec) - 1.5) < 1e-9);
  CHECK(std::abs(basis_energy(high, spec) - 0.71875) < 1e-9);
}

TEST_CASE("low and high basis energies differ at every level") {
  for (FilterKind k : {FilterKind::LeGall53, FilterKind::Cdf97}) {
    for (int levels = 1; levels <= 4; ++levels) {
      const auto spec =
          make_spec(16, 8, 8, levels, 0, k, FilterKind::Lazy);
      // low band of the deepest level vs the high band created at each level
      const SubbandId low{0, 0, SpatialBand::LL, 0};
      const double e_low = basis_energy(low, spec);
      for (int band = 1; band <= levels; ++band) {
        const SubbandId high{band, 0, SpatialBand::LL, 0};
        const double e_high = basis_energy(high, spec);
        CHECK(e_low != doctest::Approx(e_high).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("weight table structure matches the report layout") {
  const auto spec = cif_spec();
  const auto table = WeightTable::build(spec);

  SUBCASE("all weights strictly positive, one per subband") {
    CHECK(table.entries().size() == size_t(16 * 10));
    for (const auto &e : table.entries())
      CHECK(e.value > 0.0);
  }

  SUBCASE("LH equals HL at every level in every frame") {
    for (int f = 0; f < 16; ++f)
      for (int l = 1; l <= 3; ++l) {
        const BandRegion lh = spatial_band_region(spec, SpatialBand::LH, l);
        const BandRegion hl = spatial_band_region(spec, SpatialBand::HL, l);
        CHECK(table.weight_at(f, lh.row0, lh.col0) ==
              doctest::Approx(table.weight_at(f, hl.row0, hl.col0))
                  .epsilon(1e-9));
      }
  }

  SUBCASE("interior high-band frames share one weight per column") {
    // frames 8..13 are the temporally interior finest-band frames
    for (int l = 1; l <= 3; ++l)
      for (SpatialBand b :
           {SpatialBand::LH, SpatialBand::HL, SpatialBand::HH}) {
        const BandRegion reg = spatial_band_region(spec, b, l);
        const double w8 = table.weight_at(8, reg.row0, reg.col0);
        for (int f = 9; f <= 13; ++f)
          CHECK(table.weight_at(f, reg.row0, reg.col0) ==
                doctest::Approx(w8).epsilon(1e-9));
      }
  }

  SUBCASE("within-row monotonicity LL >= LH = HL >= HH, coarse >= fine") {
    for (int f = 0; f < 16; ++f) {
      const BandRegion ll = spatial_band_region(spec, SpatialBand::LL, 3);
      const double wll = table.weight_at(f, ll.row0, ll.col0);
      double prev_lh = wll, prev_hh = wll;
      for (int l = 3; l >= 1; --l) {
        const BandRegion lh = spatial_band_region(spec, SpatialBand::LH, l);
        const BandRegion hh = spatial_band_region(spec, SpatialBand::HH, l);
        const double wlh = table.weight_at(f, lh.row0, lh.col0);
        const double whh = table.weight_at(f, hh.row0, hh.col0);
        CHECK(wll >= wlh - 1e-9);
        CHECK(wlh >= whh - 1e-9);
        CHECK(prev_lh >= wlh - 1e-9);
        CHECK(prev_hh >= whh - 1e-9);
        prev_lh = wlh;
        prev_hh = whh;
      }
    }
  }

  SUBCASE("global maximum sits at the all-lowpass cell") {
    const BandRegion ll = spatial_band_region(spec, SpatialBand::LL, 3);
    const double top = table.weight_at(0, ll.row0, ll.col0);
    for (const auto &e : table.entries())
      CHECK(e.value <= top + 1e-9);
  }
}

TEST_CASE("apply/remove weights") {
  const auto spec = make_spec(8, 16, 16, 3, 2);
  const auto table = WeightTable::build(spec);

  SUBCASE("zero volume stays zero") {
    CoeffVolume cv{Volume(8, 16, 16), spec};
    const CoeffVolume w = apply_weights(cv, table);
    for (double v : w.samples.data())
      CHECK(v == 0.0);
  }

  SUBCASE("unit coefficient scales by its weight") {
    CoeffVolume cv{Volume(8, 16, 16), spec};
    cv.samples.at(3, 9, 2) = 1.0;
    const CoeffVolume w = apply_weights(cv, table);
    CHECK(w.samples.at(3, 9, 2) ==
          doctest::Approx(table.weight_at(3, 9, 2)).epsilon(1e-12));
  }

  SUBCASE("round trip is exact to 1e-12") {
    std::mt19937_64 rng(5);
    CoeffVolume cv{Volume(8, 16, 16), spec};
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (double &v : cv.samples.data())
      v = u(rng);
    const CoeffVolume back = remove_weights(apply_weights(cv, table), table);
    for (size_t i = 0; i < cv.samples.size(); ++i)
      CHECK(back.samples.data()[i] ==
            doctest::Approx(cv.samples.data()[i]).epsilon(1e-12));
  }

  SUBCASE("spec mismatch is rejected") {
    CoeffVolume cv{Volume(8, 32, 32), make_spec(8, 32, 32, 3, 2)};
    CHECK_THROWS_AS((void)apply_weights(cv, table), SpecMismatch);
  }
}

TEST_CASE("weights are deterministic and size-independent") {
  const auto small = WeightTable::build(make_spec(16, 64, 64, 4, 3));
  const auto big = WeightTable::build(cif_spec());
  const BandRegion reg =
      spatial_band_region(make_spec(16, 64, 64, 4, 3), SpatialBand::HH, 2);
  const BandRegion regb = spatial_band_region(cif_spec(), SpatialBand::HH, 2);
  for (int f = 0; f < 16; ++f)
    CHECK(small.weight_at(f, reg.row0, reg.col0) ==
          doctest::Approx(big.weight_at(f, regb.row0, regb.col0))
              .epsilon(1e-9));
}
