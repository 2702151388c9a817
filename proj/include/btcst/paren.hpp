#pragma once

#include <string_view>
#include <vector>

#include "btcst/bitvector.hpp"
#include "btcst/defs.hpp"

namespace btcst {

// Balanced-parentheses sequence of a single-rooted ordinal tree: bit 1 opens a
// node, bit 0 closes it. Provides naive linear-scan implementations of the
// navigation primitives; these are the correctness oracles for the Block-Tree
// variants and the workhorses during construction.
class ParenSeq {
 public:
  ParenSeq() = default;

  // Validates balance: excess(i) >= 1 for 1 <= i < 2t and excess(2t) = 0.
  static ParenSeq from_bits(const std::vector<bool>& bits);
  static ParenSeq from_string(std::string_view parens);  // of '1'/'0' or '('/')'

  const BitVector& bits() const { return bv_; }
  Pos length() const { return bv_.size(); }
  Pos node_count() const { return bv_.size() / 2; }

  bool get(Pos i) const { return bv_.get(i); }
  Pos rank(bool c, Pos i) const { return bv_.rank(c, i); }
  MaybePos select(bool c, Pos j) const { return bv_.select(c, j); }

  // rank_1(i) - rank_0(i); excess(0) = 0 by convention.
  Pos excess(Pos i) const;

  // Smallest j > i with excess(j) = excess(i) + d, d <= 0.
  MaybePos scan_fwd_search(Pos i, Pos d) const;

  // Largest j < i with excess(j) = excess(i) + d, d <= 0; j = 0 is in range.
  MaybePos scan_bwd_search(Pos i, Pos d) const;

  // min over k in [i, j] of excess(k) - excess(i - 1).
  Pos scan_min_excess(Pos i, Pos j) const;

  // Number of "10" pairs starting at positions <= i - 1.
  Pos scan_leaf_rank(Pos i) const;

  // Opening-parenthesis position of the j-th leaf in preorder.
  MaybePos scan_leaf_select(Pos j) const;

 private:
  explicit ParenSeq(BitVector bv) : bv_(std::move(bv)) {}
  BitVector bv_;
};

}  // namespace btcst
