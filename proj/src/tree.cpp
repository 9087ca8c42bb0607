#include "ewspb/tree.hpp"

namespace ewspb {

TreeTopology TreeTopology::make(TreeKind id, const DecompositionSpec &spec) {
  spec.validate();
  if (spec.gop_length != (1 << spec.temporal_levels))
    throw InvalidDimensions(
        "tree: GOP length must equal 2^temporal_levels");
  TreeTopology t;
  t.id_ = id;
  t.spec_ = spec;
  t.llr_ = spec.height >> spec.spatial_levels;
  t.llc_ = spec.width >> spec.spatial_levels;
  if (t.llr_ % 2 != 0 || t.llc_ % 2 != 0)
    throw InvalidDimensions(
        "tree: coarsest LL dimensions must be even for 2x2 grouping");
  return t;
}

std::vector<NodeRef> TreeTopology::roots() const {
  std::vector<NodeRef> out;
  out.reserve(static_cast<size_t>(llr_) * llc_);
  for (int gr = 0; gr < llr_; gr += 2)
    for (int gc = 0; gc < llc_; gc += 2) {
      out.push_back({NodeKind::Coeff, 0, gr, gc});
      out.push_back({NodeKind::Coeff, 0, gr, gc + 1});
      out.push_back({NodeKind::Coeff, 0, gr + 1, gc});
      out.push_back({NodeKind::Coeff, 0, gr + 1, gc + 1});
    }
  return out;
}

int TreeTopology::spatial_children_into(const NodeRef &node,
                                        NodeRef out[4]) const {
  const int r = node.row, c = node.col, f = node.frame;
  int br, bc; // top-left of the 2x2 offspring block
  if (in_coarsest_ll(r, c)) {
    if (r % 2 == 0 && c % 2 == 0)
      return 0; // top-left of group: no spatial offspring
    if (spec_.spatial_levels == 0)
      return 0;
    // non-corner group member parents the co-located block of its
    // orientation band at the coarsest level
    br = (r & ~1) + (r % 2) * llr_;
    bc = (c & ~1) + (c % 2) * llc_;
  } else {
    if (2 * r >= spec_.height || 2 * c >= spec_.width)
      return 0; // finest level
    br = 2 * r;
    bc = 2 * c;
  }
  out[0] = {NodeKind::Coeff, f, br, bc};
  out[1] = {NodeKind::Coeff, f, br, bc + 1};
  out[2] = {NodeKind::Coeff, f, br + 1, bc};
  out[3] = {NodeKind::Coeff, f, br + 1, bc + 1};
  return 4;
}

std::vector<NodeRef> TreeTopology::spatial_children(const NodeRef &node) const {
  NodeRef buf[4];
  const int n = spatial_children_into(node, buf);
  return std::vector<NodeRef>(buf, buf + n);
}

int TreeTopology::temporal_child_frames_into(int frame, int out[2]) const {
  if (frame == 0) {
    if (spec_.gop_length >= 2) {
      out[0] = 1;
      return 1;
    }
    return 0;
  }
  if (2 * frame < spec_.gop_length) {
    out[0] = 2 * frame;
    out[1] = 2 * frame + 1;
    return 2;
  }
  return 0;
}

std::vector<int> TreeTopology::temporal_child_frames(int frame) const {
  int buf[2];
  const int n = temporal_child_frames_into(frame, buf);
  return std::vector<int>(buf, buf + n);
}

std::vector<NodeRef> TreeTopology::temporal_child_blocks(
    const NodeRef &node) const {
  std::vector<NodeRef> out;
  for (int cf : temporal_child_frames(node.frame))
    out.push_back({NodeKind::Block, cf, node.row, node.col});
  return out;
}

BlockSplit TreeTopology::split_block(const NodeRef &block) const {
  const int f = block.frame, r = block.row, c = block.col;
  BlockSplit s;
  s.temporal_root = {NodeKind::Coeff, f, r, c};
  s.spatial_roots = {NodeRef{NodeKind::Coeff, f, r, c + 1},
                     NodeRef{NodeKind::Coeff, f, r + 1, c},
                     NodeRef{NodeKind::Coeff, f, r + 1, c + 1}};
  return s;
}

int TreeTopology::asym_children_into(const NodeRef &node,
                                     NodeRef out[6]) const {
  int n = 0;
  if (node.frame == 0)
    n = spatial_children_into(node, out);
  int cfs[2];
  const int nc = temporal_child_frames_into(node.frame, cfs);
  for (int i = 0; i < nc; ++i)
    out[n++] = {NodeKind::Coeff, cfs[i], node.row, node.col};
  return n;
}

std::vector<NodeRef> TreeTopology::asym_children(const NodeRef &node) const {
  NodeRef buf[6];
  const int n = asym_children_into(node, buf);
  return std::vector<NodeRef>(buf, buf + n);
}

} // namespace ewspb
