#pragma once

#include <array>
#include <vector>

#include "ewspb/wavelet.hpp"

namespace ewspb {

enum class TreeKind : uint8_t { Ewspb = 0, Asym3d = 1 };

enum class NodeKind : uint8_t { Coeff = 0, Block = 1 };

struct NodeRef {
  NodeKind kind = NodeKind::Coeff;
  int frame = 0;
  int row = 0;
  int col = 0; // for Block, (row, col) is the top-left of a 2x2 block

  bool operator==(const NodeRef &) const = default;
};

struct BlockSplit {
  NodeRef temporal_root;
  std::array<NodeRef, 3> spatial_roots;
};

/// Pure parent->children topology over CoeffVolume indices.
///
/// Ewspb: roots are the coarsest-LL coefficients of the temporally lowest
/// frame in raster 2x2 groups; the top-left of each group roots a
/// temporal-domain block tree (child blocks co-located in successively
/// finer temporal frames), the other three root SPIHT spatial trees.
///
/// Asym3d: the baseline long-tree structure. Frame 0 carries the SPIHT
/// spatial trees; in addition every coefficient of a frame parents the
/// co-located coefficient in each of its temporal child frames, chaining
/// the temporal bands below the spatial structure.
class TreeTopology {
public:
  static TreeTopology make(TreeKind id, const DecompositionSpec &spec);

  TreeKind id() const { return id_; }
  const DecompositionSpec &spec() const { return spec_; }
  int ll_rows() const { return llr_; }
  int ll_cols() const { return llc_; }

  std::vector<NodeRef> roots() const;

  /// SPIHT 2x2 offspring within the node's frame; empty for leaves and for
  /// the top-left coefficient of each coarsest-LL 2x2 group.
  std::vector<NodeRef> spatial_children(const NodeRef &node) const;

  /// Temporal child frames of a frame: 0 -> {1}; f >= 1 -> {2f, 2f+1}.
  std::vector<int> temporal_child_frames(int frame) const;

  /// 2x2 child blocks of a temporal-domain root coefficient.
  std::vector<NodeRef> temporal_child_blocks(const NodeRef &node) const;

  BlockSplit split_block(const NodeRef &block) const;

  /// Children in the Asym3d topology (mixed spatial + co-located temporal).
  std::vector<NodeRef> asym_children(const NodeRef &node) const;

  /// Allocation-free variants for hot paths; return the child count.
  int spatial_children_into(const NodeRef &node, NodeRef out[4]) const;
  int asym_children_into(const NodeRef &node, NodeRef out[6]) const;
  int temporal_child_frames_into(int frame, int out[2]) const;

  /// Role helpers (structural, shared by encoder and decoder).
  bool in_coarsest_ll(int row, int col) const {
    return row < llr_ && col < llc_;
  }
  bool is_block_root_position(int row, int col) const {
    return in_coarsest_ll(row, col) && row % 2 == 0 && col % 2 == 0;
  }

private:
  TreeKind id_ = TreeKind::Ewspb;
  DecompositionSpec spec_;
  int llr_ = 0;
  int llc_ = 0;
};

} // namespace ewspb
