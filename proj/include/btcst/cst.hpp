#pragma once

#include <array>
#include <vector>

#include "btcst/btct.hpp"
#include "btcst/defs.hpp"
#include "btcst/rlcsa.hpp"
#include "btcst/suffix.hpp"

namespace btcst {

// A suffix-tree node handle: the position of its opening parenthesis in the
// topology. The root is always 1.
using StNode = Pos;

// Compressed suffix tree assembled from three components: the Block-Tree
// parentheses topology, the run-length Psi CSA, and the PLCP bitvector H.
// All navigation below runs against those components only; the plain text,
// suffix array and parentheses sequence are discarded after construction.
class BtCst {
 public:
  BtCst() = default;

  Pos n() const { return n_; }
  int sigma() const { return sigma_; }
  int arity() const { return arity_; }
  Pos max_leaf_len() const { return mll_; }

  const Btct& topology() const { return topology_; }
  Btct& mutable_topology() { return topology_; }
  const CsaIndex& csa() const { return csa_; }
  const HBitvector& h() const { return h_; }
  const std::vector<std::uint8_t>& sym_to_byte() const { return sym_to_byte_; }

  Sym byte_to_sym(std::uint8_t b) const { return static_cast<Sym>(byte_to_sym_[b] < 0 ? 0 : byte_to_sym_[b]); }
  bool has_byte(std::uint8_t b) const { return byte_to_sym_[b] >= 0; }

  StNode root() const { return 1; }
  bool is_leaf(StNode v) const;
  StNode first_child(StNode v) const;
  std::optional<StNode> next_sibling(StNode v) const;
  std::optional<StNode> previous_sibling(StNode v) const;
  StNode parent(StNode v) const;
  bool is_ancestor(StNode v, StNode u) const;
  Pos tree_depth(StNode v) const;
  StNode level_ancestor(StNode v, Pos d) const;
  StNode lca(StNode v, StNode u) const;
  Pos string_depth(StNode v) const;
  Sym letter(StNode v, Pos i) const;
  StNode suffix_link(StNode v) const;
  StNode string_ancestor(StNode v, Pos d) const;
  std::optional<StNode> child_linear(StNode v, Sym c) const;
  std::optional<StNode> child_binary(StNode v, Sym c) const;

  // Matching close parenthesis of v's opening one.
  Pos close(StNode v) const;
  // Lexicographic leaf interval [l, r] below v.
  std::pair<Pos, Pos> leaf_interval(StNode v) const;
  // Suffix-array position of the i-th leaf.
  Pos leaf_sa(Pos l) const { return csa_.sa_access(l); }

  static BtCst assemble(Pos n, int sigma, int arity, Pos mll,
                        std::vector<std::uint8_t> sym_to_byte, Btct topology, CsaIndex csa,
                        HBitvector h);

 private:
  void validate(StNode v) const;

  Pos n_ = 0;
  int sigma_ = 0;
  int arity_ = 2;
  Pos mll_ = 128;
  Btct topology_;
  CsaIndex csa_;
  HBitvector h_;
  std::vector<std::uint8_t> sym_to_byte_;
  std::array<int, 256> byte_to_sym_{};
};

BtCst build_cst(const Text& text, int arity, Pos max_leaf_len, Pos sa_rate, Pos text_rate);

}  // namespace btcst
