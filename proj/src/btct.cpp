#include "btcst/btct.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace btcst {

namespace {

// Build-time sparse table for min over the global excess prefix array.
class ExcessRmq {
 public:
  explicit ExcessRmq(const std::vector<Pos>& exc) {
    const std::size_t n = exc.size();
    const int levels = std::bit_width(n) ;
    table_.assign(static_cast<std::size_t>(levels), {});
    table_[0] = exc;
    for (int l = 1; l < levels; ++l) {
      const std::size_t half = std::size_t{1} << (l - 1);
      table_[static_cast<std::size_t>(l)].resize(n - 2 * half + 1);
      for (std::size_t i = 0; i + 2 * half <= n; ++i) {
        table_[static_cast<std::size_t>(l)][i] =
            std::min(table_[static_cast<std::size_t>(l - 1)][i],
                     table_[static_cast<std::size_t>(l - 1)][i + half]);
      }
    }
  }

  // min exc[k], i <= k <= j.
  Pos min(Pos i, Pos j) const {
    const auto a = static_cast<std::size_t>(i);
    const auto b = static_cast<std::size_t>(j);
    const int l = std::bit_width(b - a + 1) - 1;
    return std::min(table_[static_cast<std::size_t>(l)][a],
                    table_[static_cast<std::size_t>(l)][b + 1 - (std::size_t{1} << l)]);
  }

 private:
  std::vector<std::vector<Pos>> table_;
};

}  // namespace

Btct Btct::build(const ParenSeq& parens, int arity, Pos max_leaf_len) {
  const Pos p = parens.length();
  std::vector<Sym> bits(static_cast<std::size_t>(p));
  for (Pos i = 1; i <= p; ++i) bits[static_cast<std::size_t>(i - 1)] = parens.get(i) ? 1 : 0;

  Btct bt;
  bt.tree_ = BlockTree::build(bits, arity, max_leaf_len, /*sigma=*/1);

  // Global prefix arrays: excess and finishing-leaf counts.
  std::vector<Pos> exc(static_cast<std::size_t>(p) + 1, 0);
  std::vector<Pos> lr(static_cast<std::size_t>(p) + 1, 0);
  for (Pos i = 1; i <= p; ++i) {
    exc[static_cast<std::size_t>(i)] = exc[static_cast<std::size_t>(i - 1)] + (parens.get(i) ? 1 : -1);
    lr[static_cast<std::size_t>(i)] =
        lr[static_cast<std::size_t>(i - 1)] +
        (i >= 2 && parens.get(i - 1) && !parens.get(i) ? 1 : 0);
  }
  const ExcessRmq rmq(exc);

  bt.extras_.resize(bt.tree_.levels_.size());
  for (std::size_t l = 0; l < bt.tree_.levels_.size(); ++l) {
    const BtLevel& level = bt.tree_.levels_[l];
    const Pos b = level.block_size;
    bt.extras_[l].resize(level.nodes.size());
    for (std::size_t k = 0; k < level.nodes.size(); ++k) {
      const BtNode& v = level.nodes[k];
      BtctExtra& x = bt.extras_[l][k];
      const Pos s = v.start;
      const Pos t = v.start + v.extent - 1;
      x.lrank = lr[static_cast<std::size_t>(t)] - lr[static_cast<std::size_t>(s - 1)];
      x.lbreaker = s >= 2 && parens.get(s - 1) && !parens.get(s);
      x.mexcess = rmq.min(s, t) - exc[static_cast<std::size_t>(s - 1)];
      if (v.kind == BlockKind::Back) {
        const BtNode& u = level.nodes[static_cast<std::size_t>(v.target)];
        const Pos occ = u.start + v.offset;
        const Pos fend = u.start + b - 1;
        x.fb_lrank = lr[static_cast<std::size_t>(fend)] - lr[static_cast<std::size_t>(occ - 1)];
        x.fb_lbreaker = occ >= 2 && parens.get(occ - 1) && !parens.get(occ);
        x.fb_mexcess = rmq.min(occ, fend) - exc[static_cast<std::size_t>(occ - 1)];
        x.sb_mexcess = v.offset > 0
                           ? rmq.min(fend + 1, occ + b - 1) - exc[static_cast<std::size_t>(fend)]
                           : 0;
        x.m_fb = x.mexcess == x.fb_mexcess;
      }
    }
  }
  return bt;
}

Btct Btct::from_parts(BlockTree tree, std::vector<std::vector<BtctExtra>> extras) {
  Btct bt;
  bt.tree_ = std::move(tree);
  bt.extras_ = std::move(extras);
  return bt;
}

Pos Btct::rank(bool c, Pos i) const { return tree_.rank(c ? 1 : 0, i); }

MaybePos Btct::select(bool c, Pos j) const { return tree_.select(c ? 1 : 0, j); }

Pos Btct::excess(Pos i) const {
  if (i < 0 || i > length()) throw std::out_of_range("Btct::excess: position out of range");
  if (i == 0) return 0;
  return 2 * tree_.rank(1, i) - i;
}

Pos Btct::fb_excess(std::size_t level, Pos idx) const {
  const BtNode& v = node(level, idx);
  const BtNode& u = node(level, v.target);
  const Pos fb_len = tree_.levels_[level].block_size - v.offset;
  const Pos fb_ones = static_cast<Pos>(u.counts[1]) - static_cast<Pos>(v.pre_counts[1]);
  return 2 * fb_ones - fb_len;
}

MaybePos Btct::fwd_in(std::size_t level, Pos idx, Pos from, Pos to, Pos& e, Pos target) const {
  if (from >= to) return std::nullopt;
  const BtNode& v = node(level, idx);
  const BtctExtra& x = extra(level, idx);
  if (skips_enabled_ && from == 0 && to == v.extent && e + x.mexcess > target) {
    e += node_excess(v);
    return std::nullopt;
  }
  switch (v.kind) {
    case BlockKind::Leaf: {
      for (Pos q = from + 1; q <= to; ++q) {
        e += leaf_bit(v, q) ? 1 : -1;
        if (e == target) return q;
      }
      return std::nullopt;
    }
    case BlockKind::Internal: {
      const Pos bc = tree_.levels_[level + 1].block_size;
      for (Pos ci = from / bc; ci < v.children && ci * bc < to; ++ci) {
        const BtNode& child = node(level + 1, v.child0 + ci);
        const Pos lo = std::max<Pos>(from - ci * bc, 0);
        const Pos hi = std::min<Pos>(to - ci * bc, child.extent);
        if (MaybePos r = fwd_in(level + 1, v.child0 + ci, lo, hi, e, target)) {
          return ci * bc + *r;
        }
      }
      return std::nullopt;
    }
    case BlockKind::Back: {
      const Pos b = tree_.levels_[level].block_size;
      const Pos o = v.offset;
      if (o + from < b) {
        const Pos hi1 = std::min(b, o + to);
        if (skips_enabled_ && from == 0 && hi1 == b && e + x.fb_mexcess > target) {
          e += fb_excess(level, idx);
        } else if (MaybePos r = fwd_in(level, v.target, o + from, hi1, e, target)) {
          return *r - o;
        }
      }
      if (o + to > b) {
        const Pos lo2 = std::max<Pos>(o + from - b, 0);
        if (MaybePos r = fwd_in(level, v.target + 1, lo2, o + to - b, e, target)) {
          return *r + (b - o);
        }
      }
      return std::nullopt;
    }
  }
  throw std::logic_error("Btct::fwd_in: bad node kind");
}

MaybePos Btct::bwd_in(std::size_t level, Pos idx, Pos from, Pos to, Pos& e, Pos target) const {
  if (from >= to) return std::nullopt;
  const BtNode& v = node(level, idx);
  const BtctExtra& x = extra(level, idx);
  // Backward skip is conservative: the stored min covers prefix positions
  // 1..extent while a backward scan checks 0..extent-1, so extend the bound
  // with the block's left edge. It can only cause extra descents, not misses.
  if (skips_enabled_ && from == 0 && to == v.extent &&
      e - node_excess(v) + std::min<Pos>(0, x.mexcess) > target) {
    e -= node_excess(v);
    return std::nullopt;
  }
  switch (v.kind) {
    case BlockKind::Leaf: {
      for (Pos q = to; q > from; --q) {
        e -= leaf_bit(v, q) ? 1 : -1;
        if (e == target) return q - 1;
      }
      return std::nullopt;
    }
    case BlockKind::Internal: {
      const Pos bc = tree_.levels_[level + 1].block_size;
      for (Pos ci = (to - 1) / bc; ci >= 0 && (ci + 1) * bc > from; --ci) {
        const BtNode& child = node(level + 1, v.child0 + ci);
        const Pos lo = std::max<Pos>(from - ci * bc, 0);
        const Pos hi = std::min<Pos>(to - ci * bc, child.extent);
        if (MaybePos r = bwd_in(level + 1, v.child0 + ci, lo, hi, e, target)) {
          return ci * bc + *r;
        }
      }
      return std::nullopt;
    }
    case BlockKind::Back: {
      const Pos b = tree_.levels_[level].block_size;
      const Pos o = v.offset;
      if (o + to > b) {
        const Pos lo2 = std::max<Pos>(o + from - b, 0);
        const Pos hi2 = o + to - b;
        const Pos sb_exc = node_excess(v) - fb_excess(level, idx);
        if (skips_enabled_ && lo2 == 0 && hi2 == o &&
            e - sb_exc + std::min<Pos>(0, x.sb_mexcess) > target) {
          e -= sb_exc;
        } else if (MaybePos r = bwd_in(level, v.target + 1, lo2, hi2, e, target)) {
          return *r + (b - o);
        }
      }
      if (o + from < b) {
        const Pos hi1 = std::min(b, o + to);
        if (skips_enabled_ && from == 0 && hi1 == b &&
            e - fb_excess(level, idx) + std::min<Pos>(0, x.fb_mexcess) > target) {
          e -= fb_excess(level, idx);
        } else if (MaybePos r = bwd_in(level, v.target, o + from, hi1, e, target)) {
          return *r - o;
        }
      }
      return std::nullopt;
    }
  }
  throw std::logic_error("Btct::bwd_in: bad node kind");
}

Pos Btct::min_in(std::size_t level, Pos idx, Pos from, Pos to, Pos& e) const {
  const BtNode& v = node(level, idx);
  const BtctExtra& x = extra(level, idx);
  if (skips_enabled_ && from == 0 && to == v.extent) {
    const Pos m = e + x.mexcess;
    e += node_excess(v);
    return m;
  }
  switch (v.kind) {
    case BlockKind::Leaf: {
      Pos m = std::numeric_limits<Pos>::max();
      for (Pos q = from + 1; q <= to; ++q) {
        e += leaf_bit(v, q) ? 1 : -1;
        m = std::min(m, e);
      }
      return m;
    }
    case BlockKind::Internal: {
      const Pos bc = tree_.levels_[level + 1].block_size;
      Pos m = std::numeric_limits<Pos>::max();
      for (Pos ci = from / bc; ci < v.children && ci * bc < to; ++ci) {
        const BtNode& child = node(level + 1, v.child0 + ci);
        const Pos lo = std::max<Pos>(from - ci * bc, 0);
        const Pos hi = std::min<Pos>(to - ci * bc, child.extent);
        if (lo < hi) m = std::min(m, min_in(level + 1, v.child0 + ci, lo, hi, e));
      }
      return m;
    }
    case BlockKind::Back: {
      const Pos b = tree_.levels_[level].block_size;
      const Pos o = v.offset;
      Pos m = std::numeric_limits<Pos>::max();
      if (o + from < b) {
        const Pos hi1 = std::min(b, o + to);
        if (skips_enabled_ && from == 0 && hi1 == b) {
          m = std::min(m, e + x.fb_mexcess);
          e += fb_excess(level, idx);
        } else {
          m = std::min(m, min_in(level, v.target, o + from, hi1, e));
        }
      }
      if (o + to > b) {
        const Pos lo2 = std::max<Pos>(o + from - b, 0);
        const Pos hi2 = o + to - b;
        if (skips_enabled_ && lo2 == 0 && hi2 == o) {
          m = std::min(m, e + x.sb_mexcess);
          e += node_excess(v) - fb_excess(level, idx);
        } else {
          m = std::min(m, min_in(level, v.target + 1, lo2, hi2, e));
        }
      }
      return m;
    }
  }
  throw std::logic_error("Btct::min_in: bad node kind");
}

Pos Btct::lr_in(std::size_t level, Pos idx, Pos q) const {
  if (q <= 0) return 0;
  const BtNode& v = node(level, idx);
  const BtctExtra& x = extra(level, idx);
  if (q >= v.extent) return x.lrank;
  switch (v.kind) {
    case BlockKind::Leaf: {
      Pos count = x.lbreaker ? 1 : 0;
      for (Pos j = 2; j <= q; ++j) {
        if (leaf_bit(v, j - 1) && !leaf_bit(v, j)) ++count;
      }
      return count;
    }
    case BlockKind::Internal: {
      const Pos bc = tree_.levels_[level + 1].block_size;
      const Pos ci = (q - 1) / bc;
      Pos count = 0;
      for (Pos j = 0; j < ci; ++j) count += extra(level + 1, v.child0 + j).lrank;
      return count + lr_in(level + 1, v.child0 + ci, q - ci * bc);
    }
    case BlockKind::Back: {
      const Pos b = tree_.levels_[level].block_size;
      const Pos o = v.offset;
      const BtctExtra& ux = extra(level, v.target);
      const Pos pfb_lrank = ux.lrank - x.fb_lrank;
      const Pos j1 = std::min(q, b - o);
      Pos count = lr_in(level, v.target, o + j1) - pfb_lrank;
      if (q > b - o) count += lr_in(level, v.target + 1, q - (b - o));
      return count + (x.lbreaker ? 1 : 0) - (x.fb_lbreaker ? 1 : 0);
    }
  }
  throw std::logic_error("Btct::lr_in: bad node kind");
}

Pos Btct::ls_in(std::size_t level, Pos idx, Pos k) const {
  const BtNode& v = node(level, idx);
  const BtctExtra& x = extra(level, idx);
  switch (v.kind) {
    case BlockKind::Leaf: {
      Pos seen = x.lbreaker ? 1 : 0;
      if (x.lbreaker && k == 1) return 1;
      for (Pos j = 2; j <= v.extent; ++j) {
        if (leaf_bit(v, j - 1) && !leaf_bit(v, j)) {
          if (++seen == k) return j;
        }
      }
      throw std::logic_error("Btct::ls_in: leaf index not found in leaf block");
    }
    case BlockKind::Internal: {
      const Pos bc = tree_.levels_[level + 1].block_size;
      for (Pos ci = 0; ci < v.children; ++ci) {
        const Pos in_child = extra(level + 1, v.child0 + ci).lrank;
        if (k <= in_child) return ci * bc + ls_in(level + 1, v.child0 + ci, k);
        k -= in_child;
      }
      throw std::logic_error("Btct::ls_in: leaf index not found in children");
    }
    case BlockKind::Back: {
      const Pos b = tree_.levels_[level].block_size;
      const Pos o = v.offset;
      const BtctExtra& ux = extra(level, v.target);
      const Pos pfb_lrank = ux.lrank - x.fb_lrank;
      const Pos kk = k - (x.lbreaker ? 1 : 0) + (x.fb_lbreaker ? 1 : 0);
      if (kk == 0) return 1;  // the pair straddling the block's left boundary
      if (kk <= x.fb_lrank) return ls_in(level, v.target, pfb_lrank + kk) - o;
      return (b - o) + ls_in(level, v.target + 1, kk - x.fb_lrank);
    }
  }
  throw std::logic_error("Btct::ls_in: bad node kind");
}

MaybePos Btct::fwd_search(Pos i, Pos d) const {
  if (i < 0 || i > length()) throw std::out_of_range("Btct::fwd_search: position out of range");
  if (d > 0) throw std::invalid_argument("Btct::fwd_search: only d <= 0 is supported");
  const Pos target = excess(i) + d;
  Pos e = target - d;
  const Pos bsz = tree_.levels_.front().block_size;
  const auto& top = tree_.levels_.front().nodes;
  Pos from = i - (i / bsz) * bsz;
  for (Pos t = i / bsz; t < static_cast<Pos>(top.size()); ++t) {
    if (MaybePos r = fwd_in(0, t, from, top[static_cast<std::size_t>(t)].extent, e, target)) {
      return t * bsz + *r;
    }
    from = 0;
  }
  return std::nullopt;
}

MaybePos Btct::bwd_search(Pos i, Pos d) const {
  if (i < 1 || i > length()) throw std::out_of_range("Btct::bwd_search: position out of range");
  if (d > 0) throw std::invalid_argument("Btct::bwd_search: only d <= 0 is supported");
  const Pos target = excess(i) + d;
  Pos e = target - d;
  const Pos bsz = tree_.levels_.front().block_size;
  Pos to = i - ((i - 1) / bsz) * bsz;
  for (Pos t = (i - 1) / bsz; t >= 0; --t) {
    if (MaybePos r = bwd_in(0, t, 0, to, e, target)) return t * bsz + *r;
    to = bsz;
  }
  return std::nullopt;
}

Pos Btct::min_excess(Pos i, Pos j) const {
  if (i < 1 || j > length()) throw std::out_of_range("Btct::min_excess: range out of bounds");
  if (i > j) throw std::out_of_range("Btct::min_excess: empty range");
  const Pos base = excess(i - 1);
  Pos e = base;
  const Pos bsz = tree_.levels_.front().block_size;
  Pos m = std::numeric_limits<Pos>::max();
  for (Pos t = (i - 1) / bsz; t * bsz < j; ++t) {
    const BtNode& v = tree_.levels_.front().nodes[static_cast<std::size_t>(t)];
    const Pos lo = std::max<Pos>(i - 1 - t * bsz, 0);
    const Pos hi = std::min<Pos>(j - t * bsz, v.extent);
    if (lo < hi) m = std::min(m, min_in(0, t, lo, hi, e));
  }
  return m - base;
}

Pos Btct::leaf_rank(Pos i) const {
  if (i < 0 || i > length()) throw std::out_of_range("Btct::leaf_rank: position out of range");
  if (i == 0) return 0;
  const Pos bsz = tree_.levels_.front().block_size;
  const Pos t = (i - 1) / bsz;
  Pos count = 0;
  for (Pos j = 0; j < t; ++j) count += extras_[0][static_cast<std::size_t>(j)].lrank;
  return count + lr_in(0, t, i - t * bsz);
}

MaybePos Btct::leaf_select(Pos j) const {
  if (j < 1) throw std::out_of_range("Btct::leaf_select: leaf index must be >= 1");
  const Pos bsz = tree_.levels_.front().block_size;
  const auto& top = tree_.levels_.front().nodes;
  for (Pos t = 0; t < static_cast<Pos>(top.size()); ++t) {
    const Pos in_block = extras_[0][static_cast<std::size_t>(t)].lrank;
    if (j <= in_block) return t * bsz + ls_in(0, t, j) - 1;  // opening of the pair
    j -= in_block;
  }
  return std::nullopt;
}

}  // namespace btcst
