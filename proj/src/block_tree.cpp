#include "btcst/block_tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace btcst {

namespace {

// Polynomial rolling hash mod 2^61 - 1.
constexpr std::uint64_t kMod = (1ULL << 61) - 1;
constexpr std::uint64_t kBase = 1031;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kMod);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s >= kMod ? s - kMod : s;
}

std::uint64_t hash_range(std::span<const Sym> s, Pos start, Pos len) {
  std::uint64_t h = 0;
  for (Pos k = 0; k < len; ++k) {
    h = addmod(mulmod(h, kBase), s[static_cast<std::size_t>(start - 1 + k)] + 1u);
  }
  return h;
}

std::uint64_t pow_base(Pos e) {
  std::uint64_t p = 1, b = kBase;
  for (; e > 0; e >>= 1) {
    if (e & 1) p = mulmod(p, b);
    b = mulmod(b, b);
  }
  return p;
}

bool equal_range(std::span<const Sym> s, Pos a, Pos b, Pos len) {
  for (Pos k = 0; k < len; ++k) {
    if (s[static_cast<std::size_t>(a - 1 + k)] != s[static_cast<std::size_t>(b - 1 + k)]) {
      return false;
    }
  }
  return true;
}

// Leftmost verified occurrence, among windows fully inside contiguous runs of
// present blocks, of every full block's content at this level.
std::vector<Pos> find_leftmost_occurrences(std::span<const Sym> s, const BtLevel& level) {
  const Pos b = level.block_size;
  const auto& nodes = level.nodes;
  std::vector<Pos> occ(nodes.size(), -1);

  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  std::size_t unresolved = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].extent == b) {
      buckets[hash_range(s, nodes[k].start, b)].push_back(k);
      ++unresolved;
    }
  }
  const std::uint64_t top_pow = pow_base(b - 1);

  std::size_t run_begin = 0;
  while (run_begin < nodes.size() && unresolved > 0) {
    std::size_t run_end = run_begin;  // inclusive
    while (run_end + 1 < nodes.size() &&
           nodes[run_end + 1].start == nodes[run_end].start + b) {
      ++run_end;
    }
    const Pos lo = nodes[run_begin].start;
    const Pos hi = nodes[run_end].start + nodes[run_end].extent - 1;
    if (hi - lo + 1 >= b) {
      std::uint64_t h = hash_range(s, lo, b);
      for (Pos pos = lo; pos + b - 1 <= hi; ++pos) {
        auto it = buckets.find(h);
        if (it != buckets.end()) {
          bool all_done = true;
          for (std::size_t k : it->second) {
            if (occ[k] < 0 && equal_range(s, pos, nodes[k].start, b)) {
              occ[k] = pos;
              --unresolved;
            }
            all_done = all_done && occ[k] >= 0;
          }
          if (all_done) buckets.erase(it);
          if (unresolved == 0) break;
        }
        if (pos + b <= hi) {  // slide
          const std::uint64_t out =
              mulmod(s[static_cast<std::size_t>(pos - 1)] + 1u, top_pow);
          h = addmod(h, kMod - out);
          h = addmod(mulmod(h, kBase), s[static_cast<std::size_t>(pos + b - 1)] + 1u);
        }
      }
    }
    run_begin = run_end + 1;
  }
  return occ;
}

Pos block_index_at(const BtLevel& level, Pos pos) {
  auto it = std::upper_bound(level.nodes.begin(), level.nodes.end(), pos,
                             [](Pos p, const BtNode& nd) { return p < nd.start; });
  if (it == level.nodes.begin()) throw std::logic_error("BlockTree: position before first block");
  return static_cast<Pos>(it - level.nodes.begin()) - 1;
}

}  // namespace

BlockTree BlockTree::build(std::span<const Sym> s, int arity, Pos max_leaf_len, int sigma) {
  if (arity < 2) throw std::invalid_argument("BlockTree::build: arity must be >= 2");
  if (max_leaf_len < 1) throw std::invalid_argument("BlockTree::build: max leaf length must be >= 1");
  if (s.empty()) throw std::invalid_argument("BlockTree::build: empty sequence");

  BlockTree bt;
  bt.n_ = static_cast<Pos>(s.size());
  bt.arity_ = arity;
  bt.mll_ = max_leaf_len;
  bt.sigma_ = sigma;

  std::vector<BtLevel> levels;
  if (bt.n_ <= max_leaf_len || bt.n_ < arity) {
    BtLevel leaf_level;
    leaf_level.block_size = bt.n_;
    BtNode root;
    root.start = 1;
    root.extent = bt.n_;
    leaf_level.nodes.push_back(root);
    levels.push_back(std::move(leaf_level));
  } else {
    Pos b0 = max_leaf_len;
    while (b0 < bt.n_) b0 *= arity;
    BtLevel top;
    top.block_size = b0;
    for (Pos start = 1; start <= bt.n_; start += b0) {
      BtNode nd;
      nd.start = start;
      nd.extent = std::min(b0, bt.n_ - start + 1);
      top.nodes.push_back(nd);
    }
    levels.push_back(std::move(top));

    while (levels.back().block_size > max_leaf_len) {
      BtLevel& cur = levels.back();
      const Pos b = cur.block_size;
      const std::vector<Pos> occ = find_leftmost_occurrences(s, cur);

      for (std::size_t k = 0; k < cur.nodes.size(); ++k) {
        BtNode& v = cur.nodes[k];
        if (v.extent == b && occ[k] >= 0 && occ[k] + b <= v.start) {
          const Pos host1 = block_index_at(cur, occ[k]);
          const Pos host2 = block_index_at(cur, occ[k] + b - 1);
          const bool hosts_internal =
              cur.nodes[static_cast<std::size_t>(host1)].kind != BlockKind::Back &&
              cur.nodes[static_cast<std::size_t>(host2)].kind != BlockKind::Back;
          if (hosts_internal) {
            v.kind = BlockKind::Back;
            v.target = host1;
            v.offset = occ[k] - cur.nodes[static_cast<std::size_t>(host1)].start;
            continue;
          }
        }
        v.kind = BlockKind::Internal;
      }

      BtLevel next;
      next.block_size = b / arity;
      for (BtNode& v : cur.nodes) {
        if (v.kind != BlockKind::Internal) continue;
        v.child0 = static_cast<Pos>(next.nodes.size());
        v.children = (v.extent + next.block_size - 1) / next.block_size;
        for (Pos j = 0; j < v.children; ++j) {
          BtNode child;
          child.start = v.start + j * next.block_size;
          child.extent = std::min(next.block_size, v.start + v.extent - child.start);
          next.nodes.push_back(child);
        }
      }
      levels.push_back(std::move(next));
    }
    for (BtNode& v : levels.back().nodes) v.kind = BlockKind::Leaf;
  }

  // Top-level pruning: start at the shallowest level that has a BackBlock; if
  // none exists anywhere, only the leaf level is kept.
  std::size_t top_idx = levels.size() - 1;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const bool has_back = std::any_of(levels[l].nodes.begin(), levels[l].nodes.end(),
                                      [](const BtNode& v) { return v.kind == BlockKind::Back; });
    if (has_back) {
      top_idx = l;
      break;
    }
  }
  levels.erase(levels.begin(), levels.begin() + static_cast<std::ptrdiff_t>(top_idx));

  // Leaf storage and per-node symbol counts.
  for (auto& level : levels) {
    for (BtNode& v : level.nodes) {
      if (v.kind == BlockKind::Leaf) {
        v.leaf_off = static_cast<Pos>(bt.leaf_symbols_.size());
        for (Pos k = 0; k < v.extent; ++k) {
          bt.leaf_symbols_.push_back(s[static_cast<std::size_t>(v.start - 1 + k)]);
        }
      }
      v.counts.assign(static_cast<std::size_t>(sigma) + 1, 0);
      for (Pos k = 0; k < v.extent; ++k) {
        v.counts[s[static_cast<std::size_t>(v.start - 1 + k)]] += 1;
      }
      if (v.kind == BlockKind::Back) {
        v.pre_counts.assign(static_cast<std::size_t>(sigma) + 1, 0);
        const BtNode& u = level.nodes[static_cast<std::size_t>(v.target)];
        for (Pos k = 0; k < v.offset; ++k) {
          v.pre_counts[s[static_cast<std::size_t>(u.start - 1 + k)]] += 1;
        }
      }
    }
  }
  bt.levels_ = std::move(levels);
  return bt;
}

BlockTree BlockTree::from_parts(Pos n, int arity, Pos mll, int sigma,
                                std::vector<BtLevel> levels, std::vector<Sym> leaf_symbols) {
  BlockTree bt;
  bt.n_ = n;
  bt.arity_ = arity;
  bt.mll_ = mll;
  bt.sigma_ = sigma;
  bt.levels_ = std::move(levels);
  bt.leaf_symbols_ = std::move(leaf_symbols);
  return bt;
}

std::span<const Sym> BlockTree::leaf_data(const BtNode& node) const {
  return std::span<const Sym>(leaf_symbols_).subspan(static_cast<std::size_t>(node.leaf_off),
                                                     static_cast<std::size_t>(node.extent));
}

Sym BlockTree::access_in(std::size_t level, Pos node, Pos q) const {
  const BtNode& v = levels_[level].nodes[static_cast<std::size_t>(node)];
  switch (v.kind) {
    case BlockKind::Leaf:
      return leaf_symbols_[static_cast<std::size_t>(v.leaf_off + q - 1)];
    case BlockKind::Internal: {
      const Pos bc = levels_[level + 1].block_size;
      const Pos ci = (q - 1) / bc;
      return access_in(level + 1, v.child0 + ci, q - ci * bc);
    }
    case BlockKind::Back: {
      const Pos b = levels_[level].block_size;
      const Pos m = v.offset + q;
      if (m <= b) return access_in(level, v.target, m);
      return access_in(level, v.target + 1, m - b);
    }
  }
  throw std::logic_error("BlockTree::access_in: bad node kind");
}

Pos BlockTree::rank_in(std::size_t level, Pos node, Sym c, Pos q) const {
  if (q <= 0) return 0;
  const BtNode& v = levels_[level].nodes[static_cast<std::size_t>(node)];
  if (q >= v.extent) return v.counts[c];
  switch (v.kind) {
    case BlockKind::Leaf: {
      Pos count = 0;
      for (Pos k = 0; k < q; ++k) {
        if (leaf_symbols_[static_cast<std::size_t>(v.leaf_off + k)] == c) ++count;
      }
      return count;
    }
    case BlockKind::Internal: {
      const Pos bc = levels_[level + 1].block_size;
      const Pos ci = (q - 1) / bc;
      Pos count = 0;
      for (Pos j = 0; j < ci; ++j) {
        count += levels_[level + 1].nodes[static_cast<std::size_t>(v.child0 + j)].counts[c];
      }
      return count + rank_in(level + 1, v.child0 + ci, c, q - ci * bc);
    }
    case BlockKind::Back: {
      const Pos b = levels_[level].block_size;
      const Pos m = v.offset + q;
      const BtNode& u = levels_[level].nodes[static_cast<std::size_t>(v.target)];
      if (m <= b) return rank_in(level, v.target, c, m) - v.pre_counts[c];
      return (u.counts[c] - v.pre_counts[c]) + rank_in(level, v.target + 1, c, m - b);
    }
  }
  throw std::logic_error("BlockTree::rank_in: bad node kind");
}

Pos BlockTree::select_in(std::size_t level, Pos node, Sym c, Pos j) const {
  const BtNode& v = levels_[level].nodes[static_cast<std::size_t>(node)];
  switch (v.kind) {
    case BlockKind::Leaf: {
      Pos seen = 0;
      for (Pos k = 0; k < v.extent; ++k) {
        if (leaf_symbols_[static_cast<std::size_t>(v.leaf_off + k)] == c) {
          if (++seen == j) return k + 1;
        }
      }
      throw std::logic_error("BlockTree::select_in: occurrence not found in leaf");
    }
    case BlockKind::Internal: {
      const Pos bc = levels_[level + 1].block_size;
      for (Pos ci = 0; ci < v.children; ++ci) {
        const Pos in_child =
            levels_[level + 1].nodes[static_cast<std::size_t>(v.child0 + ci)].counts[c];
        if (j <= in_child) return ci * bc + select_in(level + 1, v.child0 + ci, c, j);
        j -= in_child;
      }
      throw std::logic_error("BlockTree::select_in: occurrence not found in children");
    }
    case BlockKind::Back: {
      const Pos b = levels_[level].block_size;
      const BtNode& u = levels_[level].nodes[static_cast<std::size_t>(v.target)];
      const Pos jj = v.pre_counts[c] + j;
      if (jj <= u.counts[c]) return select_in(level, v.target, c, jj) - v.offset;
      return (b - v.offset) + select_in(level, v.target + 1, c, jj - u.counts[c]);
    }
  }
  throw std::logic_error("BlockTree::select_in: bad node kind");
}

Sym BlockTree::access(Pos i) const {
  if (i < 1 || i > n_) throw std::out_of_range("BlockTree::access: position out of range");
  const Pos t = top_block_of(i);
  return access_in(0, t, i - t * levels_.front().block_size);
}

Pos BlockTree::rank(Sym c, Pos i) const {
  if (i < 0 || i > n_) throw std::out_of_range("BlockTree::rank: position out of range");
  if (i == 0) return 0;
  const Pos t = top_block_of(i);
  Pos count = 0;
  for (Pos j = 0; j < t; ++j) count += levels_.front().nodes[static_cast<std::size_t>(j)].counts[c];
  return count + rank_in(0, t, c, i - t * levels_.front().block_size);
}

MaybePos BlockTree::select(Sym c, Pos j) const {
  if (j < 1) throw std::out_of_range("BlockTree::select: occurrence index must be >= 1");
  const auto& top = levels_.front().nodes;
  Pos t = 0;
  for (; t < static_cast<Pos>(top.size()); ++t) {
    const Pos in_block = top[static_cast<std::size_t>(t)].counts[c];
    if (j <= in_block) {
      return t * levels_.front().block_size + select_in(0, t, c, j);
    }
    j -= in_block;
  }
  return std::nullopt;
}

Pos BlockTree::node_total() const {
  Pos total = 0;
  for (const auto& level : levels_) total += static_cast<Pos>(level.nodes.size());
  return total;
}

}  // namespace btcst
