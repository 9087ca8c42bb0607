#include "ewspb/coder.hpp"

#include <algorithm>
#include <cmath>

namespace ewspb {

int initial_threshold(const CoeffVolume &coeffs) {
  double m = 0.0;
  for (double x : coeffs.samples.data())
    m = std::max(m, std::abs(x));
  if (m == 0.0)
    throw EmptyGop("initial_threshold: all-zero volume");
  return std::ilogb(m);
}

bool node_has_desc(const TreeTopology &topo, const NodeRef &node,
                   bool temporal) {
  NodeRef buf[6];
  if (topo.id() == TreeKind::Asym3d)
    return topo.asym_children_into(node, buf) > 0;
  if (temporal) {
    int cfs[2];
    return topo.temporal_child_frames_into(node.frame, cfs) > 0;
  }
  return topo.spatial_children_into(node, buf) > 0;
}

bool node_has_l(const TreeTopology &topo, const NodeRef &node, bool temporal) {
  NodeRef buf[6];
  if (topo.id() == TreeKind::Asym3d) {
    const int n = topo.asym_children_into(node, buf);
    for (int i = 0; i < n; ++i) {
      NodeRef b2[6];
      if (topo.asym_children_into(buf[i], b2) > 0)
        return true;
    }
    return false;
  }
  if (temporal) {
    int cfs[2];
    const int n = topo.temporal_child_frames_into(node.frame, cfs);
    if (n == 0)
      return false;
    if (topo.spec().spatial_levels >= 1)
      return true; // block members root spatial trees with offspring
    for (int i = 0; i < n; ++i) {
      int g[2];
      if (topo.temporal_child_frames_into(cfs[i], g) > 0)
        return true;
    }
    return false;
  }
  const int n = topo.spatial_children_into(node, buf);
  for (int i = 0; i < n; ++i) {
    NodeRef b2[4];
    if (topo.spatial_children_into(buf[i], b2) > 0)
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// significance pyramids

SignificancePyramids::SignificancePyramids(const CoeffVolume &coeffs,
                                           const TreeTopology &topo)
    : topo_(topo), coeffs_(coeffs) {
  if (!(coeffs.spec == topo.spec()))
    throw SpecMismatch("pyramids: volume spec does not match topology spec");
  if (topo.id() == TreeKind::Ewspb)
    build_ewspb();
  else
    build_asym();
}

void SignificancePyramids::build_ewspb() {
  const DecompositionSpec &spec = topo_.spec();
  const int w = spec.width, h = spec.height, gop = spec.gop_length;
  const int llc = topo_.ll_cols(), llr = topo_.ll_rows();
  const Volume &v = coeffs_.samples;

  sdesc_.assign(gop, std::vector<double>(static_cast<size_t>(h) * w, 0.0));
  auto fill_sdesc = [&](auto &&self, int f, int r, int c) -> double {
    NodeRef kids[4];
    const int n = topo_.spatial_children_into({NodeKind::Coeff, f, r, c}, kids);
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
      m = std::max(m, std::abs(v.at(f, kids[i].row, kids[i].col)));
      m = std::max(m, self(self, f, kids[i].row, kids[i].col));
    }
    sdesc_[f][static_cast<size_t>(r) * w + c] = m;
    return m;
  };
  for (int f = 0; f < gop; ++f)
    for (int r = 0; r < llr; ++r)
      for (int c = 0; c < llc; ++c)
        fill_sdesc(fill_sdesc, f, r, c);

  tdesc_.assign(gop, std::vector<double>(static_cast<size_t>(llr) * llc, 0.0));
  tl_ = tdesc_;
  auto member_desc = [&](int f, int r, int c, bool top_left) {
    return top_left ? tdesc_[f][static_cast<size_t>(r) * llc + c]
                    : sdesc_[f][static_cast<size_t>(r) * w + c];
  };
  for (int f = gop - 1; f >= 0; --f) {
    int cfs[2];
    const int nc = topo_.temporal_child_frames_into(f, cfs);
    if (nc == 0)
      continue;
    for (int r = 0; r < llr; r += 2)
      for (int c = 0; c < llc; c += 2) {
        double dm = 0.0, lm = 0.0;
        for (int i = 0; i < nc; ++i) {
          const int cf = cfs[i];
          double bm = std::abs(v.at(cf, r, c));
          bm = std::max(bm, std::abs(v.at(cf, r, c + 1)));
          bm = std::max(bm, std::abs(v.at(cf, r + 1, c)));
          bm = std::max(bm, std::abs(v.at(cf, r + 1, c + 1)));
          double md = member_desc(cf, r, c, true);
          md = std::max(md, member_desc(cf, r, c + 1, false));
          md = std::max(md, member_desc(cf, r + 1, c, false));
          md = std::max(md, member_desc(cf, r + 1, c + 1, false));
          dm = std::max({dm, bm, md});
          lm = std::max(lm, md);
        }
        tdesc_[f][static_cast<size_t>(r) * llc + c] = dm;
        tl_[f][static_cast<size_t>(r) * llc + c] = lm;
      }
  }
}

void SignificancePyramids::build_asym() {
  const DecompositionSpec &spec = topo_.spec();
  const int w = spec.width, h = spec.height, gop = spec.gop_length;
  const Volume &v = coeffs_.samples;

  chain_.assign(gop, std::vector<double>(static_cast<size_t>(h) * w, 0.0));
  for (int f = gop - 1; f >= 1; --f) {
    int cfs[2];
    const int nc = topo_.temporal_child_frames_into(f, cfs);
    if (nc == 0)
      continue;
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) {
        double m = 0.0;
        for (int i = 0; i < nc; ++i) {
          const size_t idx = static_cast<size_t>(r) * w + c;
          m = std::max(m, std::abs(v.at(cfs[i], r, c)));
          m = std::max(m, chain_[cfs[i]][idx]);
        }
        chain_[f][static_cast<size_t>(r) * w + c] = m;
      }
  }

  adesc0_.assign(static_cast<size_t>(h) * w, 0.0);
  auto fill = [&](auto &&self, int r, int c) -> double {
    double m = 0.0;
    NodeRef kids[4];
    const int n = topo_.spatial_children_into({NodeKind::Coeff, 0, r, c}, kids);
    for (int i = 0; i < n; ++i) {
      m = std::max(m, std::abs(v.at(0, kids[i].row, kids[i].col)));
      m = std::max(m, self(self, kids[i].row, kids[i].col));
    }
    if (gop >= 2) {
      m = std::max(m, std::abs(v.at(1, r, c)));
      m = std::max(m, chain_[1][static_cast<size_t>(r) * w + c]);
    }
    adesc0_[static_cast<size_t>(r) * w + c] = m;
    return m;
  };
  for (int r = 0; r < topo_.ll_rows(); ++r)
    for (int c = 0; c < topo_.ll_cols(); ++c)
      fill(fill, r, c);
}

double SignificancePyramids::desc_max(const NodeRef &node,
                                      bool temporal) const {
  const int w = topo_.spec().width;
  if (topo_.id() == TreeKind::Asym3d) {
    const size_t idx = static_cast<size_t>(node.row) * w + node.col;
    return node.frame == 0 ? adesc0_[idx] : chain_[node.frame][idx];
  }
  if (temporal)
    return tdesc_[node.frame]
                 [static_cast<size_t>(node.row) * topo_.ll_cols() + node.col];
  return sdesc_[node.frame][static_cast<size_t>(node.row) * w + node.col];
}

double SignificancePyramids::l_max(const NodeRef &node, bool temporal) const {
  const int w = topo_.spec().width;
  if (topo_.id() == TreeKind::Asym3d) {
    NodeRef kids[6];
    const int n = topo_.asym_children_into(node, kids);
    double m = 0.0;
    for (int i = 0; i < n; ++i)
      m = std::max(m, desc_max(kids[i], false));
    return m;
  }
  if (temporal)
    return tl_[node.frame]
              [static_cast<size_t>(node.row) * topo_.ll_cols() + node.col];
  NodeRef kids[4];
  const int n = topo_.spatial_children_into(node, kids);
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    m = std::max(m,
                 sdesc_[node.frame]
                       [static_cast<size_t>(kids[i].row) * w + kids[i].col]);
  return m;
}

double SignificancePyramids::block_max(const NodeRef &block) const {
  const Volume &v = coeffs_.samples;
  double m = std::abs(v.at(block.frame, block.row, block.col));
  m = std::max(m, std::abs(v.at(block.frame, block.row, block.col + 1)));
  m = std::max(m, std::abs(v.at(block.frame, block.row + 1, block.col)));
  m = std::max(m, std::abs(v.at(block.frame, block.row + 1, block.col + 1)));
  return m;
}

// ---------------------------------------------------------------------------
// pass engine, single implementation for encoder and decoder

namespace {

struct BudgetExhausted {};

template <bool kEncode> class Engine {
public:
  Engine(const TreeTopology &topo, const CoeffVolume *coeffs,
         const SignificancePyramids *pyr, Volume *recon, BitWriter *bw,
         BitReader *br, uint64_t budget)
      : topo_(topo), coeffs_(coeffs), pyr_(pyr), recon_(recon), bw_(bw),
        br_(br), budget_(budget) {}

  void run(int n_exp, int min_exp, const PassObserver &obs) {
    init_lists();
    try {
      pass_ = 0;
      for (exp_ = n_exp; exp_ >= min_exp; --exp_, ++pass_) {
        t_ = std::ldexp(1.0, exp_);
        sorting_pass();
        refinement_pass();
        if (obs)
          obs(pass_, exp_, st_, kEncode ? nullptr : recon_);
      }
    } catch (const BudgetExhausted &) {
      // clean truncation: earlier decisions remain valid
    } catch (const EndOfStream &) {
      // externally truncated payload: same contract
    }
  }

private:
  bool bit(bool v) {
    if (used_ == budget_)
      throw BudgetExhausted{};
    ++used_;
    if constexpr (kEncode) {
      bw_->put_bit(v);
      return v;
    } else {
      (void)v;
      return br_->get_bit();
    }
  }

  template <class F> bool decide(F &&enc_value) {
    if constexpr (kEncode)
      return bit(enc_value());
    else
      return bit(false);
  }

  double coeff(const NodeRef &n) const {
    return coeffs_->samples.at(n.frame, n.row, n.col);
  }
  double mag(const NodeRef &n) const { return std::abs(coeff(n)); }
  bool is_ewspb() const { return topo_.id() == TreeKind::Ewspb; }

  int offspring(const NodeRef &n, NodeRef out[6]) const {
    return is_ewspb() ? topo_.spatial_children_into(n, out)
                      : topo_.asym_children_into(n, out);
  }

  void push_lip(const NodeRef &n) {
    st_.lip.push_back({n});
    lip_dead_.push_back(0);
  }
  void push_lis(const LisEntry &e) {
    st_.lis.push_back(e);
    lis_dead_.push_back(0);
  }

  void insert_lsp(const NodeRef &n, bool negative) {
    st_.lsp.push_back({n, pass_});
    if constexpr (!kEncode) {
      const double m = 1.5 * t_;
      recon_->at(n.frame, n.row, n.col) = negative ? -m : m;
    }
  }

  // significance + sign of one coefficient; to LSP or LIP
  void code_coeff(const NodeRef &n) {
    const bool s = decide([&] { return mag(n) >= t_; });
    if (s) {
      const bool neg = decide([&] { return coeff(n) < 0.0; });
      insert_lsp(n, neg);
    } else {
      push_lip(n);
    }
  }

  void code_block_members(const NodeRef &blk) {
    const int f = blk.frame, r = blk.row, c = blk.col;
    code_coeff({NodeKind::Coeff, f, r, c});
    code_coeff({NodeKind::Coeff, f, r, c + 1});
    code_coeff({NodeKind::Coeff, f, r + 1, c});
    code_coeff({NodeKind::Coeff, f, r + 1, c + 1});
  }

  void init_lists() {
    const auto roots = topo_.roots();
    for (const NodeRef &r : roots)
      push_lip(r);
    for (const NodeRef &r : roots) {
      const bool temporal =
          is_ewspb() && topo_.is_block_root_position(r.row, r.col);
      if (node_has_desc(topo_, r, temporal))
        push_lis({r, false, temporal});
    }
  }

  void sorting_pass() {
    const size_t lip_n = st_.lip.size();
    for (size_t i = 0; i < lip_n; ++i) {
      const NodeRef nd = st_.lip[i].node;
      if (nd.kind == NodeKind::Coeff) {
        const bool s = decide([&] { return mag(nd) >= t_; });
        if (s) {
          const bool neg = decide([&] { return coeff(nd) < 0.0; });
          insert_lsp(nd, neg);
          lip_dead_[i] = 1;
        }
      } else {
        const bool s = decide([&] { return pyr_->block_max(nd) >= t_; });
        if (s) {
          code_block_members(nd);
          lip_dead_[i] = 1;
        }
      }
    }
    for (size_t i = 0; i < st_.lis.size(); ++i) {
      if (lis_dead_[i])
        continue;
      const LisEntry e = st_.lis[i];
      if (!e.type_b)
        process_type_a(e, i);
      else
        process_type_b(e, i);
    }
    compact();
  }

  void process_type_a(const LisEntry &e, size_t i) {
    const bool s = decide([&] { return pyr_->desc_max(e.node, e.temporal) >=
                                       t_; });
    if (!s)
      return;
    if (is_ewspb() && e.temporal) {
      int cfs[2];
      const int nc = topo_.temporal_child_frames_into(e.node.frame, cfs);
      for (int k = 0; k < nc; ++k) {
        const NodeRef blk{NodeKind::Block, cfs[k], e.node.row, e.node.col};
        const bool bs = decide([&] { return pyr_->block_max(blk) >= t_; });
        if (!bs)
          push_lip(blk);
        else
          code_block_members(blk);
      }
    } else {
      NodeRef kids[6];
      const int n = offspring(e.node, kids);
      for (int k = 0; k < n; ++k)
        code_coeff(kids[k]);
    }
    if (node_has_l(topo_, e.node, e.temporal))
      push_lis({e.node, true, e.temporal});
    lis_dead_[i] = 1;
  }

  void process_type_b(const LisEntry &e, size_t i) {
    const bool s = decide([&] { return pyr_->l_max(e.node, e.temporal) >=
                                       t_; });
    if (!s)
      return;
    if (is_ewspb() && e.temporal) {
      int cfs[2];
      const int nc = topo_.temporal_child_frames_into(e.node.frame, cfs);
      for (int k = 0; k < nc; ++k) {
        const auto sp = topo_.split_block(
            {NodeKind::Block, cfs[k], e.node.row, e.node.col});
        if (node_has_desc(topo_, sp.temporal_root, true))
          push_lis({sp.temporal_root, false, true});
        for (const NodeRef &m : sp.spatial_roots)
          if (node_has_desc(topo_, m, false))
            push_lis({m, false, false});
      }
    } else {
      NodeRef kids[6];
      const int n = offspring(e.node, kids);
      for (int k = 0; k < n; ++k)
        if (node_has_desc(topo_, kids[k], false))
          push_lis({kids[k], false, false});
    }
    lis_dead_[i] = 1;
  }

  void refinement_pass() {
    for (const LspEntry &e : st_.lsp) {
      if (e.pass == pass_)
        continue; // inserted this pass: interval already declared
      const bool b = decide([&] { return refinement_bit(mag(e.node), exp_); });
      if constexpr (!kEncode) {
        double &r = recon_->at(e.node.frame, e.node.row, e.node.col);
        const double half = 0.5 * t_;
        const double step = b ? half : -half;
        r += r >= 0.0 ? step : -step;
      }
    }
  }

  void compact() {
    size_t o = 0;
    for (size_t i = 0; i < st_.lip.size(); ++i)
      if (!lip_dead_[i])
        st_.lip[o++] = st_.lip[i];
    st_.lip.resize(o);
    lip_dead_.assign(o, 0);
    o = 0;
    for (size_t i = 0; i < st_.lis.size(); ++i)
      if (!lis_dead_[i])
        st_.lis[o++] = st_.lis[i];
    st_.lis.resize(o);
    lis_dead_.assign(o, 0);
  }

  const TreeTopology &topo_;
  const CoeffVolume *coeffs_;
  const SignificancePyramids *pyr_;
  Volume *recon_;
  BitWriter *bw_;
  BitReader *br_;
  uint64_t budget_;
  uint64_t used_ = 0;
  CoderState st_;
  std::vector<char> lip_dead_, lis_dead_;
  double t_ = 0.0;
  int exp_ = 0;
  int pass_ = 0;
};

} // namespace

GopPayload encode_gop(const CoeffVolume &weighted, const TreeTopology &topology,
                      uint64_t budget_bits, int min_exp,
                      const PassObserver &observer) {
  if (!(weighted.spec == topology.spec()))
    throw SpecMismatch("encode_gop: volume spec does not match topology");
  GopPayload p;
  int n;
  try {
    n = initial_threshold(weighted);
  } catch (const EmptyGop &) {
    p.empty_gop = true;
    return p;
  }
  SignificancePyramids pyr(weighted, topology);
  BitWriter bw;
  Engine<true> eng(topology, &weighted, &pyr, nullptr, &bw, nullptr,
                   budget_bits);
  eng.run(n, min_exp, observer);
  p.threshold_exp = n;
  p.bit_count = bw.bit_count();
  p.bytes = bw.take();
  return p;
}

CoeffVolume decode_gop(const GopPayload &payload, const DecompositionSpec &spec,
                       const TreeTopology &topology, uint64_t budget_bits,
                       int min_exp, const PassObserver &observer) {
  if (!(spec == topology.spec()))
    throw SpecMismatch("decode_gop: spec does not match topology");
  CoeffVolume cv;
  cv.spec = spec;
  cv.samples = Volume(spec.gop_length, spec.height, spec.width);
  if (payload.empty_gop)
    return cv;
  const uint64_t avail =
      std::min<uint64_t>(payload.bit_count, uint64_t(payload.bytes.size()) * 8);
  const uint64_t limit = std::min(avail, budget_bits);
  BitReader br(payload.bytes, limit);
  Engine<false> eng(topology, nullptr, nullptr, &cv.samples, nullptr, &br,
                    limit);
  eng.run(payload.threshold_exp, min_exp, observer);
  return cv;
}

} // namespace ewspb
