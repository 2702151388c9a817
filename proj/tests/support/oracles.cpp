#include "support/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace btcst::testing {

std::vector<Pos> brute_sa(const Text& text) {
  const Pos n = text.n();
  std::vector<Pos> sa(static_cast<std::size_t>(n));
  std::iota(sa.begin(), sa.end(), 1);
  std::sort(sa.begin(), sa.end(), [&](Pos a, Pos b) {
    while (a <= n && b <= n) {
      if (text.at(a) != text.at(b)) return text.at(a) < text.at(b);
      ++a;
      ++b;
    }
    return a > n;  // the shorter suffix is smaller (never happens with a terminator)
  });
  return sa;
}

std::vector<Pos> brute_lcp(const Text& text, const std::vector<Pos>& sa) {
  const Pos n = text.n();
  std::vector<Pos> lcp(static_cast<std::size_t>(n), 0);
  for (Pos i = 2; i <= n; ++i) {
    Pos a = sa[static_cast<std::size_t>(i - 2)];
    Pos b = sa[static_cast<std::size_t>(i - 1)];
    Pos h = 0;
    while (a + h <= n && b + h <= n && text.at(a + h) == text.at(b + h)) ++h;
    lcp[static_cast<std::size_t>(i - 1)] = h;
  }
  return lcp;
}

PointerCst::PointerCst(const Text& text) : text_(&text) {
  sa_ = brute_sa(text);
  lcp_ = brute_lcp(text, sa_);
  const Pos n = text.n();
  if (n == 1) {
    nodes_.push_back({});  // explicit root above the lone leaf
    const int leaf = build(1, 1);
    nodes_[0].ch.push_back(leaf);
    nodes_[0].suf = nodes_[static_cast<std::size_t>(leaf)].suf;
    nodes_[0].l = nodes_[0].r = 1;
  } else {
    // min LCP over the full range is 0, so the first node built is the root
    if (build(1, n) != 0) throw std::logic_error("PointerCst: root is not node 0");
  }
  finalize(0, -1);
  open_to_node_.assign(bp_.size() + 1, -1);
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    open_to_node_[static_cast<std::size_t>(nodes_[v].open)] = static_cast<int>(v);
  }
}

int PointerCst::build(Pos lo, Pos hi) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({});
  if (lo == hi) {
    Node& v = nodes_.back();
    v.suf = sa_[static_cast<std::size_t>(lo - 1)];
    v.sd = text_->n() - v.suf + 1;
    v.l = v.r = lo;
    return id;
  }
  Pos m = text_->n() + 1;
  for (Pos i = lo + 1; i <= hi; ++i) m = std::min(m, lcp_[static_cast<std::size_t>(i - 1)]);
  nodes_[static_cast<std::size_t>(id)].sd = m;
  Pos start = lo;
  for (Pos i = lo + 1; i <= hi + 1; ++i) {
    if (i == hi + 1 || lcp_[static_cast<std::size_t>(i - 1)] == m) {
      const int c = build(start, i - 1);
      nodes_[static_cast<std::size_t>(id)].ch.push_back(c);
      start = i;
    }
  }
  Node& v = nodes_[static_cast<std::size_t>(id)];
  v.suf = nodes_[static_cast<std::size_t>(v.ch.front())].suf;
  v.l = nodes_[static_cast<std::size_t>(v.ch.front())].l;
  v.r = nodes_[static_cast<std::size_t>(v.ch.back())].r;
  return id;
}

void PointerCst::finalize(int v, int parent) {
  Node& nd = nodes_[static_cast<std::size_t>(v)];
  nd.parent = parent;
  bp_.push_back(true);
  nd.open = static_cast<Pos>(bp_.size());
  for (int c : nd.ch) finalize(c, v);
  bp_.push_back(false);
  nd.close = static_cast<Pos>(bp_.size());
}

int PointerCst::node_of_open(Pos open) const {
  if (open < 1 || open > static_cast<Pos>(bp_.size())) return -1;
  return open_to_node_[static_cast<std::size_t>(open)];
}

int PointerCst::next_sibling(int v) const {
  const int p = parent(v);
  const auto& ch = nodes_[static_cast<std::size_t>(p)].ch;
  const auto it = std::find(ch.begin(), ch.end(), v);
  return it + 1 == ch.end() ? -1 : *(it + 1);
}

int PointerCst::previous_sibling(int v) const {
  const int p = parent(v);
  const auto& ch = nodes_[static_cast<std::size_t>(p)].ch;
  const auto it = std::find(ch.begin(), ch.end(), v);
  return it == ch.begin() ? -1 : *(it - 1);
}

bool PointerCst::is_ancestor(int v, int u) const {
  return nodes_[static_cast<std::size_t>(v)].open <= nodes_[static_cast<std::size_t>(u)].open &&
         nodes_[static_cast<std::size_t>(u)].close <= nodes_[static_cast<std::size_t>(v)].close;
}

Pos PointerCst::tree_depth(int v) const {
  Pos d = 0;
  for (; v != 0; v = parent(v)) ++d;
  return d;
}

int PointerCst::level_ancestor(int v, Pos d) const {
  Pos td = tree_depth(v);
  for (; td > d; --td) v = parent(v);
  return v;
}

int PointerCst::lca(int v, int u) const {
  while (!is_ancestor(v, u)) v = parent(v);
  return v;
}

Sym PointerCst::letter(int v, Pos i) const {
  return text_->at(nodes_[static_cast<std::size_t>(v)].suf + i - 1);
}

int PointerCst::suffix_link(int v) const {
  if (v == 0) return 0;
  const Node& nd = nodes_[static_cast<std::size_t>(v)];
  const Pos target = nd.sd - 1;
  int cur = 0;
  while (string_depth(cur) < target) {
    const Sym c = text_->at(nd.suf + 1 + string_depth(cur));
    cur = child(cur, c);
    if (cur < 0) throw std::logic_error("PointerCst: suffix link walk fell off the tree");
  }
  if (string_depth(cur) != target) {
    throw std::logic_error("PointerCst: suffix link target is not a node");
  }
  return cur;
}

int PointerCst::string_ancestor(int v, Pos d) const {
  std::vector<int> path{v};
  while (path.back() != 0) path.push_back(parent(path.back()));
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    if (string_depth(*it) >= d) return *it;
  }
  throw std::logic_error("PointerCst: no string ancestor");
}

int PointerCst::child(int v, Sym c) const {
  const Node& nd = nodes_[static_cast<std::size_t>(v)];
  for (int u : nd.ch) {
    const Sym a = text_->at(nodes_[static_cast<std::size_t>(u)].suf + nd.sd);
    if (a == c) return u;
    if (a > c) return -1;
  }
  return -1;
}

Pos audit_block_tree(const BlockTree& bt, std::span<const Sym> s) {
  auto fail = [](const char* what) { throw std::logic_error(std::string("block tree audit: ") + what); };
  Pos backs = 0;
  for (const BtLevel& level : bt.levels()) {
    const Pos b = level.block_size;
    for (const BtNode& v : level.nodes) {
      if (v.kind != BlockKind::Back) continue;
      ++backs;
      if (b <= bt.max_leaf_len()) fail("BackBlock at leaf-sized level");
      if (v.extent != b) fail("partial BackBlock");
      if (v.target < 0 || static_cast<std::size_t>(v.target) >= level.nodes.size()) {
        fail("target out of range");
      }
      const BtNode& u = level.nodes[static_cast<std::size_t>(v.target)];
      if (u.kind == BlockKind::Back) fail("BackBlock targets a BackBlock");
      if (v.offset < 0 || v.offset >= b) fail("offset out of range");
      const Pos occ = u.start + v.offset;
      if (occ + b > v.start) fail("occurrence not strictly earlier");
      for (Pos k = 0; k < b; ++k) {
        if (s[static_cast<std::size_t>(occ - 1 + k)] != s[static_cast<std::size_t>(v.start - 1 + k)]) {
          fail("content differs from its occurrence");
        }
      }
    }
  }
  return backs;
}

std::vector<std::pair<Pos, Pos>> brute_maximal_substrings(const std::string& text_bytes,
                                                          const std::string& query) {
  auto occurs = [&](Pos i, Pos j) {  // 1-based substring S[i..j]
    if (i < 1 || j > static_cast<Pos>(query.size())) return false;
    return text_bytes.find(query.substr(static_cast<std::size_t>(i - 1),
                                        static_cast<std::size_t>(j - i + 1))) !=
           std::string::npos;
  };
  std::vector<std::pair<Pos, Pos>> out;
  const Pos m = static_cast<Pos>(query.size());
  for (Pos i = 1; i <= m; ++i) {
    for (Pos j = i; j <= m; ++j) {
      if (occurs(i, j) && !occurs(i - 1, j) && !occurs(i, j + 1)) out.push_back({i, j});
    }
  }
  return out;
}

std::vector<bool> random_bp(Pos t, Rng& rng) {
  if (t < 1) throw std::invalid_argument("random_bp: need at least one node");
  // Random word with t-1 ones and t-1 zeros, rotated at its prefix-sum
  // minimum into a Dyck word (cycle lemma), wrapped in the root's pair.
  const Pos inner = t - 1;
  std::vector<bool> word(static_cast<std::size_t>(2 * inner));
  for (Pos i = 0; i < inner; ++i) word[static_cast<std::size_t>(i)] = true;
  for (Pos i = 2 * inner - 1; i > 0; --i) {
    std::swap(word[static_cast<std::size_t>(i)],
              word[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  }
  Pos excess = 0, min_excess = 0;
  std::size_t cut = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    excess += word[i] ? 1 : -1;
    if (excess < min_excess) {
      min_excess = excess;
      cut = i + 1;
    }
  }
  std::vector<bool> bits;
  bits.reserve(static_cast<std::size_t>(2 * t));
  bits.push_back(true);
  for (std::size_t i = 0; i < word.size(); ++i) bits.push_back(word[(cut + i) % word.size()]);
  bits.push_back(false);
  return bits;
}

std::string random_text(Pos n, int sigma, Rng& rng) {
  std::string s(static_cast<std::size_t>(n), 'a');
  for (auto& c : s) c = static_cast<char>('a' + rng.below(static_cast<std::uint64_t>(sigma)));
  return s;
}

std::string mutated_copies(Pos base, int copies, int sigma, std::uint32_t rate_num, Rng& rng) {
  const std::string seed = random_text(base, sigma, rng);
  std::string out = seed;
  for (int k = 1; k < copies; ++k) {
    for (char c : seed) {
      out.push_back(rng.chance(rate_num)
                        ? static_cast<char>('a' + rng.below(static_cast<std::uint64_t>(sigma)))
                        : c);
    }
  }
  return out;
}

}  // namespace btcst::testing
