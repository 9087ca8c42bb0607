#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "ewspb/bitstream.hpp"
#include "ewspb/tree.hpp"

namespace ewspb {

constexpr int kDefaultMinExp = -16;

/// n = floor(log2 max|c|). Throws EmptyGop on an all-zero volume.
int initial_threshold(const CoeffVolume &coeffs);

/// Magnitude bit of |c| at weight 2^exp (refinement rule).
inline bool refinement_bit(double magnitude, int exp) {
  return (static_cast<uint64_t>(std::floor(std::ldexp(magnitude, -exp))) &
          1u) != 0;
}

struct LipEntry {
  NodeRef node; // Coeff or Block
  bool operator==(const LipEntry &) const = default;
};

struct LisEntry {
  NodeRef node;
  bool type_b = false;   // TYPE_A = D(x), TYPE_B = L(x)
  bool temporal = false; // temporal-domain block tree entry (Ewspb only)
  bool operator==(const LisEntry &) const = default;
};

struct LspEntry {
  NodeRef node;
  int pass = 0; // pass index at which the coefficient became significant
  bool operator==(const LspEntry &) const = default;
};

struct CoderState {
  std::vector<LipEntry> lip;
  std::vector<LisEntry> lis;
  std::vector<LspEntry> lsp;
  bool operator==(const CoderState &) const = default;
};

/// Structural (data-independent) set queries, shared by encoder and
/// decoder so both sides make identical list decisions.
bool node_has_desc(const TreeTopology &topo, const NodeRef &node,
                   bool temporal);
bool node_has_l(const TreeTopology &topo, const NodeRef &node, bool temporal);

/// Called after each completed (sorting + refinement) pass. `recon` is the
/// decoder-side reconstruction, null on the encoder.
using PassObserver = std::function<void(int pass, int exp,
                                        const CoderState &state,
                                        const Volume *recon)>;

/// Max-magnitude descendant pyramids for O(1) set-significance queries
/// (encoder side; also used by the analysis module).
class SignificancePyramids {
public:
  SignificancePyramids(const CoeffVolume &coeffs, const TreeTopology &topo);

  /// max |c| over all descendants of a set root (D-set significance).
  double desc_max(const NodeRef &node, bool temporal) const;
  /// max |c| over descendants minus offspring (L-set significance).
  double l_max(const NodeRef &node, bool temporal) const;
  /// max |c| over the 4 coefficients of a 2x2 block.
  double block_max(const NodeRef &block) const;

  const TreeTopology &topology() const { return topo_; }

private:
  const TreeTopology &topo_;
  const CoeffVolume &coeffs_;
  std::vector<std::vector<double>> sdesc_; // [frame][r*w+c] spatial desc max
  std::vector<std::vector<double>> tdesc_; // [frame][r*llc+c] temporal D max
  std::vector<std::vector<double>> tl_;    // [frame][r*llc+c] temporal L max
  std::vector<std::vector<double>> chain_; // Asym3d co-located chain max
  std::vector<double> adesc0_;             // Asym3d frame-0 D max

  void build_ewspb();
  void build_asym();
};

struct GopPayload {
  bool empty_gop = false;
  int threshold_exp = 0;
  uint64_t bit_count = 0;
  std::vector<uint8_t> bytes;
};

/// Bitplane set-partitioning encode of a (weighted) coefficient volume.
GopPayload encode_gop(const CoeffVolume &weighted, const TreeTopology &topology,
                      uint64_t budget_bits, int min_exp = kDefaultMinExp,
                      const PassObserver &observer = nullptr);

/// Mirror decode; reconstructs coefficients at interval midpoints. A
/// truncated payload decodes cleanly up to the last complete decision.
CoeffVolume decode_gop(const GopPayload &payload, const DecompositionSpec &spec,
                       const TreeTopology &topology,
                       uint64_t budget_bits = UINT64_MAX,
                       int min_exp = kDefaultMinExp,
                       const PassObserver &observer = nullptr);

} // namespace ewspb
