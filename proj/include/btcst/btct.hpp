#pragma once

#include <vector>

#include "btcst/block_tree.hpp"
#include "btcst/defs.hpp"
#include "btcst/paren.hpp"

namespace btcst {

// Navigation fields stored next to each block of the parentheses Block Tree.
// Excess-related fields are relative to the bit just before the block, so they
// are identical for a BackBlock and the occurrence it points to.
struct BtctExtra {
  Pos lrank = 0;     // leaves ("10" pairs) finishing inside the block
  Pos mexcess = 0;   // min prefix excess within the block
  bool lbreaker = false;  // a "10" pair straddles the block's left boundary
  // BackBlock only: the same data split at the target-block boundary. The
  // "first part" is the piece of the source occurrence inside the target
  // block, the "second part" the spill into the next block.
  Pos fb_lrank = 0;
  Pos fb_mexcess = 0;
  Pos sb_mexcess = 0;
  bool fb_lbreaker = false;
  bool m_fb = false;  // mexcess is attained inside the first part
};

// Block-Tree compressed parentheses sequence: a BlockTree over the BP bits
// augmented with the fields above, answering excess, fwd/bwd-search (d < 0),
// min-excess, leaf-rank and leaf-select without the plain sequence. Query
// signatures and domains mirror the ParenSeq scan oracles.
class Btct {
 public:
  Btct() = default;

  static Btct build(const ParenSeq& parens, int arity, Pos max_leaf_len);

  Pos length() const { return tree_.size(); }
  Pos node_count() const { return tree_.size() / 2; }

  bool get(Pos i) const { return tree_.access(i) != 0; }
  Pos rank(bool c, Pos i) const;
  MaybePos select(bool c, Pos j) const;

  Pos excess(Pos i) const;
  MaybePos fwd_search(Pos i, Pos d) const;
  MaybePos bwd_search(Pos i, Pos d) const;
  Pos min_excess(Pos i, Pos j) const;
  Pos leaf_rank(Pos i) const;
  MaybePos leaf_select(Pos j) const;

  // When disabled, every query descends instead of consuming summary fields;
  // results must not change.
  void set_skips_enabled(bool enabled) { skips_enabled_ = enabled; }
  bool skips_enabled() const { return skips_enabled_; }

  const BlockTree& tree() const { return tree_; }
  const std::vector<std::vector<BtctExtra>>& extras() const { return extras_; }

  static Btct from_parts(BlockTree tree, std::vector<std::vector<BtctExtra>> extras);

 private:
  const BtNode& node(std::size_t level, Pos idx) const {
    return tree_.levels_[level].nodes[static_cast<std::size_t>(idx)];
  }
  const BtctExtra& extra(std::size_t level, Pos idx) const {
    return extras_[level][static_cast<std::size_t>(idx)];
  }
  bool leaf_bit(const BtNode& v, Pos q) const {
    return tree_.leaf_symbols_[static_cast<std::size_t>(v.leaf_off + q - 1)] != 0;
  }
  static Pos node_excess(const BtNode& v) { return 2 * static_cast<Pos>(v.counts[1]) - v.extent; }
  Pos fb_excess(std::size_t level, Pos idx) const;

  // All helpers take half-open local ranges (from, to]; `e` is the absolute
  // excess at the scan boundary and is advanced across what gets scanned.
  MaybePos fwd_in(std::size_t level, Pos idx, Pos from, Pos to, Pos& e, Pos target) const;
  MaybePos bwd_in(std::size_t level, Pos idx, Pos from, Pos to, Pos& e, Pos target) const;
  Pos min_in(std::size_t level, Pos idx, Pos from, Pos to, Pos& e) const;
  Pos lr_in(std::size_t level, Pos idx, Pos q) const;
  Pos ls_in(std::size_t level, Pos idx, Pos k) const;

  BlockTree tree_;
  std::vector<std::vector<BtctExtra>> extras_;  // parallel to tree_.levels()
  bool skips_enabled_ = true;
};

}  // namespace btcst
