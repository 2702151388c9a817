#pragma once

#include <span>
#include <vector>

#include "btcst/defs.hpp"

namespace btcst {

enum class BlockKind : std::uint8_t { Leaf = 0, Internal = 1, Back = 2 };

// One block of the r-ary decomposition. Blocks at a level all have the same
// nominal size; only the block straddling the end of the sequence has a
// shorter extent, and such partial blocks never become BackBlocks.
struct BtNode {
  BlockKind kind = BlockKind::Leaf;
  Pos start = 0;        // global start, 1-based
  Pos extent = 0;       // true length (padding excluded)
  Pos child0 = -1;      // Internal: index of the first child in the next level
  Pos children = 0;     // Internal: number of children
  Pos target = -1;      // Back: index of the target block in the same level
  Pos offset = 0;       // Back: occurrence offset inside the target block
  Pos leaf_off = -1;    // Leaf: offset into the shared symbol store
  std::vector<std::uint32_t> counts;      // per-symbol count in the extent
  std::vector<std::uint32_t> pre_counts;  // Back: per-symbol count in target[1..offset]
};

struct BtLevel {
  Pos block_size = 0;
  std::vector<BtNode> nodes;
};

// Block Tree over a sequence of small-alphabet symbols, with per-node symbol
// counts supporting access/rank/select. A block whose content occurs strictly
// earlier (and the occurrence does not reach into the block itself) becomes a
// BackBlock onto that leftmost occurrence, provided the hosting blocks stay
// internal; levels above the shallowest BackBlock are dropped.
class BlockTree {
 public:
  BlockTree() = default;

  static BlockTree build(std::span<const Sym> s, int arity, Pos max_leaf_len, int sigma);

  Pos size() const { return n_; }
  int arity() const { return arity_; }
  Pos max_leaf_len() const { return mll_; }
  int sigma() const { return sigma_; }

  Sym access(Pos i) const;
  Pos rank(Sym c, Pos i) const;
  MaybePos select(Sym c, Pos j) const;

  Pos node_total() const;
  const std::vector<BtLevel>& levels() const { return levels_; }
  std::vector<BtLevel>& mutable_levels() { return levels_; }
  const std::vector<Sym>& leaf_symbols() const { return leaf_symbols_; }

  // Re-reads the stored symbols of a leaf block.
  std::span<const Sym> leaf_data(const BtNode& node) const;

  // Index of the top-level block containing position i (top level blocks are
  // contiguous and complete).
  Pos top_block_of(Pos i) const { return (i - 1) / levels_.front().block_size; }

  static BlockTree from_parts(Pos n, int arity, Pos mll, int sigma,
                              std::vector<BtLevel> levels, std::vector<Sym> leaf_symbols);

 private:
  friend class Btct;

  Sym access_in(std::size_t level, Pos node, Pos q) const;       // q in [1, extent]
  Pos rank_in(std::size_t level, Pos node, Sym c, Pos q) const;  // count in first q symbols
  Pos select_in(std::size_t level, Pos node, Sym c, Pos j) const;

  Pos n_ = 0;
  int arity_ = 2;
  Pos mll_ = 128;
  int sigma_ = 2;
  std::vector<BtLevel> levels_;  // levels_[0] is the (pruned) top level
  std::vector<Sym> leaf_symbols_;
};

}  // namespace btcst
