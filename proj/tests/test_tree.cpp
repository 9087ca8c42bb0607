#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ewspb/tree.hpp"

using namespace ewspb;

namespace {

DecompositionSpec make_spec(int gop, int w, int h, int t, int s) {
  DecompositionSpec spec;
  spec.gop_length = gop;
  spec.width = w;
  spec.height = h;
  spec.temporal_levels = t;
  spec.spatial_levels = s;
  spec.validate();
  return spec;
}

// walk the whole EWSPB forest, bumping a visit counter per coefficient
struct EwspbWalker {
  const TreeTopology &topo;
  Volume counts;

  explicit EwspbWalker(const TreeTopology &t)
      : topo(t), counts(t.spec().gop_length, t.spec().height,
                        t.spec().width) {}

  void spatial(const NodeRef &n) {
    for (const NodeRef &c : topo.spatial_children(n)) {
      counts.at(c.frame, c.row, c.col) += 1.0;
      spatial(c);
    }
  }
  void temporal(const NodeRef &n) {
    for (const NodeRef &blk : topo.temporal_child_blocks(n)) {
      const BlockSplit sp = topo.split_block(blk);
      const NodeRef &a = sp.temporal_root;
      counts.at(a.frame, a.row, a.col) += 1.0;
      temporal(a);
      spatial(a); // structurally empty; guards against accidental offspring
      for (const NodeRef &m : sp.spatial_roots) {
        counts.at(m.frame, m.row, m.col) += 1.0;
        spatial(m);
      }
    }
  }
  void run() {
    for (const NodeRef &r : topo.roots()) {
      counts.at(r.frame, r.row, r.col) += 1.0;
      if (topo.is_block_root_position(r.row, r.col))
        temporal(r);
      spatial(r);
    }
  }
};

void asym_walk(const TreeTopology &topo, const NodeRef &n, Volume &counts) {
  for (const NodeRef &c : topo.asym_children(n)) {
    counts.at(c.frame, c.row, c.col) += 1.0;
    asym_walk(topo, c, counts);
  }
}

} // namespace

TEST_CASE("root sets") {
  SUBCASE("16x64x64, 4+3 levels: 64 roots") {
    const auto topo =
        TreeTopology::make(TreeKind::Ewspb, make_spec(16, 64, 64, 4, 3));
    const auto roots = topo.roots();
    CHECK(roots.size() == 64);
    for (const NodeRef &r : roots) {
      CHECK(r.frame == 0);
      CHECK(topo.in_coarsest_ll(r.row, r.col));
    }
    // raster order of 2x2 groups: a,b,c,d within each group
    CHECK(roots[0] == NodeRef{NodeKind::Coeff, 0, 0, 0});
    CHECK(roots[1] == NodeRef{NodeKind::Coeff, 0, 0, 1});
    CHECK(roots[2] == NodeRef{NodeKind::Coeff, 0, 1, 0});
    CHECK(roots[3] == NodeRef{NodeKind::Coeff, 0, 1, 1});
    CHECK(roots[4] == NodeRef{NodeKind::Coeff, 0, 0, 2});
  }
  SUBCASE("one 2x2 group") {
    const auto topo =
        TreeTopology::make(TreeKind::Ewspb, make_spec(2, 4, 4, 1, 1));
    CHECK(topo.roots().size() == 4);
  }
}

TEST_CASE("SPIHT spatial offspring rule") {
  const auto topo =
      TreeTopology::make(TreeKind::Ewspb, make_spec(16, 64, 64, 4, 3));
  SUBCASE("doubled coordinates in an oriented band") {
    // with a 4-level spatial split the coarsest LL is 4x4 and (3,5) lies
    // in an oriented band, so the plain 2r,2c rule applies
    const auto t4 =
        TreeTopology::make(TreeKind::Ewspb, make_spec(16, 64, 64, 4, 4));
    const auto kids = t4.spatial_children({NodeKind::Coeff, 2, 3, 5});
    REQUIRE(kids.size() == 4);
    CHECK(kids[0] == NodeRef{NodeKind::Coeff, 2, 6, 10});
    CHECK(kids[1] == NodeRef{NodeKind::Coeff, 2, 6, 11});
    CHECK(kids[2] == NodeRef{NodeKind::Coeff, 2, 7, 10});
    CHECK(kids[3] == NodeRef{NodeKind::Coeff, 2, 7, 11});
  }
  SUBCASE("LL group members parent their orientation-band block") {
    // 8x8 coarsest LL: member (0,1) of the first group parents the 2x2
    // block at (0,8) in the rows-low/cols-high band, (1,0) the (8,0)
    // block, (1,1) the (8,8) block
    auto kids = topo.spatial_children({NodeKind::Coeff, 0, 0, 1});
    REQUIRE(kids.size() == 4);
    CHECK(kids[0] == NodeRef{NodeKind::Coeff, 0, 0, 8});
    kids = topo.spatial_children({NodeKind::Coeff, 0, 1, 0});
    CHECK(kids[0] == NodeRef{NodeKind::Coeff, 0, 8, 0});
    kids = topo.spatial_children({NodeKind::Coeff, 0, 3, 5});
    CHECK(kids[0] == NodeRef{NodeKind::Coeff, 0, 10, 12});
  }
  SUBCASE("finest-band coefficients are leaves") {
    CHECK(topo.spatial_children({NodeKind::Coeff, 0, 40, 40}).empty());
  }
  SUBCASE("coarsest-LL group top-left has no spatial offspring") {
    CHECK(topo.spatial_children({NodeKind::Coeff, 0, 0, 0}).empty());
    CHECK(topo.spatial_children({NodeKind::Coeff, 5, 2, 4}).empty());
    CHECK(!topo.spatial_children({NodeKind::Coeff, 5, 2, 5}).empty());
  }
}

TEST_CASE("temporal frame parentage is dyadic") {
  const auto topo =
      TreeTopology::make(TreeKind::Ewspb, make_spec(16, 64, 64, 4, 3));
  CHECK(topo.temporal_child_frames(0) == std::vector<int>{1});
  CHECK(topo.temporal_child_frames(1) == std::vector<int>{2, 3});
  CHECK(topo.temporal_child_frames(3) == std::vector<int>{6, 7});
  CHECK(topo.temporal_child_frames(7) == std::vector<int>{14, 15});
  CHECK(topo.temporal_child_frames(8).empty());
  CHECK(topo.temporal_child_frames(15).empty());
}

TEST_CASE("temporal child blocks are co-located") {
  const auto topo =
      TreeTopology::make(TreeKind::Ewspb, make_spec(16, 64, 64, 4, 3));
  const auto blocks = topo.temporal_child_blocks({NodeKind::Coeff, 0, 2, 4});
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0] == NodeRef{NodeKind::Block, 1, 2, 4});
  const auto deeper = topo.temporal_child_blocks({NodeKind::Coeff, 3, 2, 4});
  REQUIRE(deeper.size() == 2);
  CHECK(deeper[0] == NodeRef{NodeKind::Block, 6, 2, 4});
  CHECK(deeper[1] == NodeRef{NodeKind::Block, 7, 2, 4});
  CHECK(topo.temporal_child_blocks({NodeKind::Coeff, 8, 2, 4}).empty());
}

TEST_CASE("split_block role assignment") {
  const auto topo =
      TreeTopology::make(TreeKind::Ewspb, make_spec(16, 64, 64, 4, 3));
  const BlockSplit sp = topo.split_block({NodeKind::Block, 5, 4, 6});
  CHECK(sp.temporal_root == NodeRef{NodeKind::Coeff, 5, 4, 6});
  CHECK(sp.spatial_roots[0] == NodeRef{NodeKind::Coeff, 5, 4, 7});
  CHECK(sp.spatial_roots[1] == NodeRef{NodeKind::Coeff, 5, 5, 6});
  CHECK(sp.spatial_roots[2] == NodeRef{NodeKind::Coeff, 5, 5, 7});
}

TEST_CASE("EWSPB closure covers every coefficient exactly once") {
  for (auto [gop, w, h, t, s] :
       {std::tuple{8, 16, 16, 3, 2}, std::tuple{4, 8, 8, 2, 1},
        std::tuple{2, 4, 4, 1, 1}, std::tuple{8, 16, 8, 3, 2}}) {
    const auto topo =
        TreeTopology::make(TreeKind::Ewspb, make_spec(gop, w, h, t, s));
    EwspbWalker walk(topo);
    walk.run();
    for (double c : walk.counts.data())
      CHECK(c == 1.0);
  }
}

TEST_CASE("Asym3d closure covers every coefficient exactly once") {
  for (auto [gop, w, h, t, s] :
       {std::tuple{8, 16, 16, 3, 2}, std::tuple{4, 8, 8, 2, 1},
        std::tuple{2, 4, 4, 1, 1}}) {
    const auto topo =
        TreeTopology::make(TreeKind::Asym3d, make_spec(gop, w, h, t, s));
    Volume counts(gop, h, w);
    for (const NodeRef &r : topo.roots()) {
      counts.at(r.frame, r.row, r.col) += 1.0;
      asym_walk(topo, r, counts);
    }
    for (double c : counts.data())
      CHECK(c == 1.0);
  }
}

TEST_CASE("depth balance: temporal tree depth tracks temporal scale") {
  const auto topo =
      TreeTopology::make(TreeKind::Ewspb, make_spec(16, 64, 64, 4, 3));
  // all blocks at depth d under a temporal root live in temporal band d
  const auto spec = topo.spec();
  auto band_of = [&](int frame) { return temporal_band_of_frame(spec, frame); };
  struct Item {
    NodeRef node;
    int depth;
  };
  std::vector<Item> stack{{NodeRef{NodeKind::Coeff, 0, 0, 0}, 0}};
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    for (const NodeRef &blk : topo.temporal_child_blocks(it.node)) {
      CHECK(band_of(blk.frame) == it.depth + 1);
      stack.push_back({topo.split_block(blk).temporal_root, it.depth + 1});
    }
  }
}

TEST_CASE("topology construction constraints") {
  // GOP must be 2^temporal_levels and the coarsest LL must tile in 2x2
  CHECK_THROWS_AS(
      (void)TreeTopology::make(TreeKind::Ewspb, make_spec(16, 64, 64, 2, 3)),
      InvalidDimensions);
}
