#include "btcst/cst.hpp"

#include <algorithm>
#include <stdexcept>

namespace btcst {

BtCst build_cst(const Text& text, int arity, Pos max_leaf_len, Pos sa_rate, Pos text_rate) {
  const std::vector<Pos> sa = build_suffix_array(text);
  const std::vector<Pos> lcp = build_lcp(text, sa);
  const ParenSeq bp = build_bp_topology(lcp);
  return BtCst::assemble(text.n(), text.sigma, arity, max_leaf_len, text.sym_to_byte,
                         Btct::build(bp, arity, max_leaf_len),
                         CsaIndex::build(text, sa, sa_rate, text_rate),
                         HBitvector::build(sa, lcp));
}

BtCst BtCst::assemble(Pos n, int sigma, int arity, Pos mll, std::vector<std::uint8_t> sym_to_byte,
                      Btct topology, CsaIndex csa, HBitvector h) {
  BtCst cst;
  cst.n_ = n;
  cst.sigma_ = sigma;
  cst.arity_ = arity;
  cst.mll_ = mll;
  cst.topology_ = std::move(topology);
  cst.csa_ = std::move(csa);
  cst.h_ = std::move(h);
  cst.sym_to_byte_ = std::move(sym_to_byte);
  cst.byte_to_sym_.fill(-1);
  for (std::size_t s = 0; s < cst.sym_to_byte_.size(); ++s) {
    cst.byte_to_sym_[cst.sym_to_byte_[s]] = static_cast<int>(s);
  }
  cst.byte_to_sym_[0] = -1;  // the terminator is not addressable from outside
  return cst;
}

void BtCst::validate(StNode v) const {
  if (v < 1 || v > topology_.length() || !topology_.get(v)) {
    throw std::invalid_argument("BtCst: invalid node handle");
  }
}

Pos BtCst::close(StNode v) const {
  validate(v);
  return *topology_.fwd_search(v, -1);
}

std::pair<Pos, Pos> BtCst::leaf_interval(StNode v) const {
  return {topology_.leaf_rank(v) + 1, topology_.leaf_rank(close(v))};
}

bool BtCst::is_leaf(StNode v) const {
  validate(v);
  return !topology_.get(v + 1);
}

StNode BtCst::first_child(StNode v) const {
  if (is_leaf(v)) throw std::invalid_argument("BtCst::first_child: leaf has no children");
  return v + 1;
}

std::optional<StNode> BtCst::next_sibling(StNode v) const {
  validate(v);
  if (v == root()) throw std::invalid_argument("BtCst::next_sibling: root has no siblings");
  const Pos j = *topology_.fwd_search(v, -1) + 1;
  if (j > topology_.length() || !topology_.get(j)) return std::nullopt;
  return j;
}

std::optional<StNode> BtCst::previous_sibling(StNode v) const {
  validate(v);
  if (v == root()) throw std::invalid_argument("BtCst::previous_sibling: root has no siblings");
  if (topology_.get(v - 1)) return std::nullopt;  // preceded by the parent's opening
  return *topology_.bwd_search(v - 1, 0) + 1;
}

StNode BtCst::parent(StNode v) const {
  validate(v);
  if (v == root()) throw std::invalid_argument("BtCst::parent: root has no parent");
  return *topology_.bwd_search(v, -2) + 1;
}

bool BtCst::is_ancestor(StNode v, StNode u) const {
  validate(u);
  return v <= u && u <= close(v);
}

Pos BtCst::tree_depth(StNode v) const {
  validate(v);
  return topology_.excess(v) - 1;
}

StNode BtCst::level_ancestor(StNode v, Pos d) const {
  const Pos td = tree_depth(v);
  if (d < 0 || d > td) throw std::out_of_range("BtCst::level_ancestor: depth out of range");
  if (d == td) return v;
  return *topology_.bwd_search(v, d - td - 1) + 1;
}

StNode BtCst::lca(StNode v, StNode u) const {
  validate(v);
  validate(u);
  if (u < v) std::swap(v, u);
  if (is_ancestor(v, u)) return v;
  const Pos m = topology_.min_excess(v, u);
  return parent(*topology_.fwd_search(v - 1, m) + 1);
}

Pos BtCst::string_depth(StNode v) const {
  validate(v);
  if (v == root()) return 0;
  if (is_leaf(v)) {
    const Pos l = topology_.leaf_rank(v) + 1;
    return n_ - csa_.sa_access(l) + 1;
  }
  // LCP at the boundary between the first and second child equals |str(v)|.
  const StNode second = *next_sibling(first_child(v));
  const Pos k = topology_.leaf_rank(second) + 1;
  return h_.plcp(csa_.sa_access(k));
}

Sym BtCst::letter(StNode v, Pos i) const {
  if (i < 1 || i > string_depth(v)) {
    throw std::out_of_range("BtCst::letter: index outside the node's string");
  }
  const Pos l = topology_.leaf_rank(v) + 1;
  const Pos pos = csa_.sa_access(l) + i - 1;
  return csa_.first_char(csa_.isa_access(pos));
}

StNode BtCst::suffix_link(StNode v) const {
  validate(v);
  if (v == root()) return root();
  const auto [l, r] = leaf_interval(v);
  if (l == r && csa_.sa_access(l) == n_) return root();  // terminator leaf: str minus '$' is empty
  const StNode x = *topology_.leaf_select(csa_.psi(l));
  const StNode y = *topology_.leaf_select(csa_.psi(r));
  return lca(x, y);
}

StNode BtCst::string_ancestor(StNode v, Pos d) const {
  if (d < 0 || d > string_depth(v)) {
    throw std::out_of_range("BtCst::string_ancestor: string depth out of range");
  }
  // string_depth grows along the root path, so the highest ancestor with
  // string_depth >= d sits at the smallest qualifying tree depth.
  Pos lo = 0, hi = tree_depth(v);
  while (lo < hi) {
    const Pos mid = (lo + hi) / 2;
    if (string_depth(level_ancestor(v, mid)) >= d) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return level_ancestor(v, lo);
}

std::optional<StNode> BtCst::child_linear(StNode v, Sym c) const {
  if (is_leaf(v)) return std::nullopt;
  const Pos sd = string_depth(v);
  StNode u = first_child(v);
  while (true) {
    const Sym a = letter(u, sd + 1);
    if (a == c) return u;
    if (a > c) return std::nullopt;
    const std::optional<StNode> next = next_sibling(u);
    if (!next) return std::nullopt;
    u = *next;
  }
}

std::optional<StNode> BtCst::child_binary(StNode v, Sym c) const {
  if (is_leaf(v)) return std::nullopt;
  const Pos sd = string_depth(v);
  std::vector<StNode> children;
  for (std::optional<StNode> u = first_child(v); u; u = next_sibling(*u)) {
    children.push_back(*u);
  }
  std::size_t lo = 0, hi = children.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (letter(children[mid], sd + 1) < c) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == children.size() || letter(children[lo], sd + 1) != c) return std::nullopt;
  return children[lo];
}

}  // namespace btcst
