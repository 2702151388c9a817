// End-to-end acceptance checks, one pass/fail line per criterion.
// Exits nonzero if any criterion fails.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "btcst/corpus.hpp"
#include "btcst/cst.hpp"
#include "btcst/matching.hpp"
#include "btcst/serialize.hpp"
#include "btcst/space.hpp"
#include "support/oracles.hpp"

using namespace btcst;
using namespace btcst::testing;

namespace {

int failures = 0;

void criterion(const char* name, const std::function<void()>& body) {
  try {
    body();
    std::printf("PASS: %s\n", name);
  } catch (const std::exception& e) {
    std::printf("FAIL: %s (%s)\n", name, e.what());
    ++failures;
  }
}

void expect(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

template <typename A, typename B>
void expect_eq(const A& a, const B& b, const std::string& what) {
  if (!(a == b)) throw std::runtime_error("mismatch: " + what);
}

std::uint64_t fnv(std::uint64_t h, std::uint64_t x) {
  for (int k = 0; k < 8; ++k) {
    h ^= (x >> (8 * k)) & 0xFF;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// --- criterion 1: BTCT primitives vs scans -------------------------------

void bp_primitive_equivalence() {
  Rng rng(0xACCE0001ULL);
  int sequences = 0;
  for (int round = 0; round < 200; ++round) {
    Pos target_nodes;
    if (round < 2) {
      target_nodes = 50000;  // 1e5 positions
    } else if (round < 8) {
      target_nodes = 5000;
    } else {
      target_nodes = 2 + static_cast<Pos>(rng.below(1024));
    }
    ParenSeq p = [&] {
      if (round % 2) return ParenSeq::from_bits(random_bp(target_nodes, rng));
      // suffix-tree shape with roughly the requested node count
      const Pos base = std::max<Pos>(8, target_nodes / 8);
      const std::string bytes = mutated_copies(base, 6, 4, 0x01000000u, rng);
      const Text t = Text::from_string(bytes);
      return build_bp_topology(build_lcp(t, build_suffix_array(t)));
    }();
    const int r = 2 + static_cast<int>(rng.below(3));
    const Pos mll = 4 + static_cast<Pos>(rng.below(29));
    const Btct bt = Btct::build(p, r, mll);
    const Pos len = p.length();
    ++sequences;
    for (int q = 0; q < 50; ++q) {  // 50 per primitive per sequence = 1e4 each overall
      const Pos i = static_cast<Pos>(rng.below(static_cast<std::uint64_t>(len) + 1));
      expect_eq(bt.excess(i), p.excess(i), "excess");
      const Pos d = -1 - static_cast<Pos>(rng.below(3));
      expect_eq(bt.fwd_search(i, d) == p.scan_fwd_search(i, d), true, "fwd_search");
      if (i >= 1) expect_eq(bt.bwd_search(i, d) == p.scan_bwd_search(i, d), true, "bwd_search");
      const Pos a = 1 + static_cast<Pos>(rng.below(static_cast<std::uint64_t>(len)));
      const Pos span = static_cast<Pos>(rng.below(std::min<std::uint64_t>(
          static_cast<std::uint64_t>(len - a) + 1, 4096)));
      expect_eq(bt.min_excess(a, a + span), p.scan_min_excess(a, a + span), "min_excess");
      expect_eq(bt.leaf_rank(i), p.scan_leaf_rank(i), "leaf_rank");
      const Pos j = 1 + static_cast<Pos>(rng.below(static_cast<std::uint64_t>(len / 2) + 1));
      expect_eq(bt.leaf_select(j) == p.scan_leaf_select(j), true, "leaf_select");
    }
  }
  expect(sequences >= 200, "need at least 200 sequences");
}

// --- criterion 2 + 4: full CST differential, child equivalence ------------

void cst_differential(bool child_only) {
  Rng rng(0xACCE0002ULL);
  int texts = 0;
  for (int round = 0; round < 102; ++round) {
    const int sigma = round % 3 == 0 ? 2 : (round % 3 == 1 ? 4 : 26);
    const Pos n = 1 + static_cast<Pos>(rng.below(round % 4 == 0 ? 5000 : 600));
    const std::string bytes =
        round % 2 ? random_text(n, sigma, rng)
                  : mutated_copies(std::max<Pos>(1, n / 4), 4, sigma, 0x02000000u, rng);
    const Text t = Text::from_string(bytes);
    const PointerCst oracle(t);
    const BtCst cst = build_cst(t, 2 + static_cast<int>(rng.below(2)) * 2,
                                2 + static_cast<Pos>(rng.below(16)),
                                1 + static_cast<Pos>(rng.below(16)),
                                1 + static_cast<Pos>(rng.below(16)));
    ++texts;
    const auto& nodes = oracle.nodes();
    auto open = [&](int v) { return nodes[static_cast<std::size_t>(v)].open; };
    for (std::size_t vi = 0; vi < nodes.size(); ++vi) {
      const int v = static_cast<int>(vi);
      const StNode h = open(v);
      if (child_only || !oracle.is_leaf(v)) {
        if (!oracle.is_leaf(v)) {
          for (int c = 0; c <= sigma; ++c) {
            const int w = oracle.child(v, static_cast<Sym>(c));
            const std::optional<StNode> want = w < 0 ? std::optional<StNode>{} : open(w);
            expect_eq(cst.child_linear(h, static_cast<Sym>(c)) == want, true, "child_linear");
            expect_eq(cst.child_binary(h, static_cast<Sym>(c)) == want, true, "child_binary");
          }
        }
        if (child_only) continue;
      }
      expect_eq(cst.is_leaf(h), oracle.is_leaf(v), "is_leaf");
      expect_eq(cst.tree_depth(h), oracle.tree_depth(v), "tree_depth");
      expect_eq(cst.string_depth(h), oracle.string_depth(v), "string_depth");
      if (v != 0) {
        expect_eq(cst.parent(h), open(oracle.parent(v)), "parent");
        const int ns = oracle.next_sibling(v);
        const int ps = oracle.previous_sibling(v);
        expect_eq(cst.next_sibling(h) == (ns < 0 ? MaybePos{} : MaybePos{open(ns)}), true,
                  "next_sibling");
        expect_eq(cst.previous_sibling(h) == (ps < 0 ? MaybePos{} : MaybePos{open(ps)}), true,
                  "previous_sibling");
      }
      if (!oracle.is_leaf(v)) expect_eq(cst.first_child(h), open(oracle.first_child(v)), "first_child");
      expect_eq(cst.suffix_link(h), open(oracle.suffix_link(v)), "suffix_link");
      const Pos sd = oracle.string_depth(v);
      for (Pos i = 1; i <= std::min<Pos>(sd, 3); ++i) {
        expect_eq(cst.letter(h, i), oracle.letter(v, i), "letter");
      }
      if (sd > 3) expect_eq(cst.letter(h, sd), oracle.letter(v, sd), "letter(sd)");
      const int u = static_cast<int>(rng.below(nodes.size()));
      expect_eq(cst.is_ancestor(h, open(u)), oracle.is_ancestor(v, u), "is_ancestor");
      expect_eq(cst.lca(h, open(u)), open(oracle.lca(v, u)), "lca");
      const Pos d1 = static_cast<Pos>(rng.below(static_cast<std::uint64_t>(oracle.tree_depth(v)) + 1));
      expect_eq(cst.level_ancestor(h, d1), open(oracle.level_ancestor(v, d1)), "level_ancestor");
      const Pos d2 = static_cast<Pos>(rng.below(static_cast<std::uint64_t>(sd) + 1));
      expect_eq(cst.string_ancestor(h, d2), open(oracle.string_ancestor(v, d2)), "string_ancestor");
    }
  }
  expect(texts >= 100, "need at least 100 texts");
}

// --- criterion 3: banana worked example -----------------------------------

void banana_example() {
  const Text t = Text::from_string("banana");
  const std::vector<Pos> sa = brute_sa(t);
  expect_eq(sa, std::vector<Pos>{7, 6, 4, 2, 1, 5, 3}, "suffix array");
  expect_eq(build_suffix_array(t), sa, "library suffix array");
  expect_eq(brute_lcp(t, sa), std::vector<Pos>{0, 0, 1, 3, 0, 0, 2}, "LCP array");
  expect_eq(build_lcp(t, sa), brute_lcp(t, sa), "library LCP array");
  const ParenSeq p = build_bp_topology(build_lcp(t, sa));
  expect_eq(p.node_count(), Pos{11}, "node count");
  const PointerCst oracle(t);
  expect_eq(p.bits().size(), static_cast<Pos>(oracle.bp().size()), "BP length");
  for (Pos i = 1; i <= p.length(); ++i) {
    expect_eq(p.get(i), static_cast<bool>(oracle.bp()[static_cast<std::size_t>(i - 1)]), "BP bit");
  }
  // derived example values, each recomputed by the scan oracles
  expect_eq(p.scan_leaf_rank(9), Pos{3}, "leaf_rank(9)");
  expect_eq(p.excess(8), Pos{4}, "excess(8)");
  expect_eq(*p.scan_fwd_search(4, -1), Pos{13}, "fwd_search(4,-1)");
  expect_eq(*p.scan_bwd_search(7, -2), Pos{3}, "bwd_search(7,-2)");
  expect_eq(p.scan_min_excess(4, 13), Pos{0}, "min_excess(4,13)");
  expect_eq(*p.scan_leaf_select(1), Pos{2}, "leaf_select(1)");
  const CsaIndex csa = CsaIndex::build(t, sa, 2, 3);
  const std::vector<Pos> want_psi{5, 1, 6, 7, 4, 2, 3};
  for (Pos i = 1; i <= 7; ++i) {
    expect_eq(csa.psi(i), want_psi[static_cast<std::size_t>(i - 1)], "psi");
  }
  const HBitvector h = HBitvector::build(sa, build_lcp(t, sa));
  const std::vector<Pos> want_plcp{0, 3, 2, 1, 0, 0, 0};
  for (Pos i = 1; i <= 7; ++i) {
    expect_eq(h.plcp(i), want_plcp[static_cast<std::size_t>(i - 1)], "plcp");
  }
  const BtCst cst = build_cst(t, 2, 4, 2, 3);
  expect_eq(cst.parent(7), StNode{4}, "parent(7)");
  expect_eq(cst.string_depth(7), Pos{3}, "string_depth(7)");
  expect_eq(cst.suffix_link(7), StNode{16}, "suffix_link(7)");
  expect_eq(*cst.child_binary(1, cst.byte_to_sym('b')), StNode{14}, "child(root,'b')");
  expect_eq(cst.lca(8, 10), StNode{7}, "lca(8,10)");
  expect_eq(cst.level_ancestor(8, 1), StNode{4}, "level_ancestor(8,1)");
}

// --- criterion 5: space sensitivity ---------------------------------------

void space_sensitivity() {
  double prev = 1e18, last = 0;
  for (int k : {1, 2, 4, 8, 16}) {
    const Text t = gen_corpus(10240, k, 0.005, 0xC0FFEE);
    const BtCst cst = build_cst(t, 2, 128, 32, 128);
    const SpaceReport rep = measure_space(cst);
    const double bpn = rep.topology_bpn();
    expect(bpn <= prev + 1e-9, "topology bpn not non-increasing at k=" + std::to_string(k));
    prev = bpn;
    last = bpn;
  }
  // Hard assertions: monotone above, and beating the 2.79 bpn plain-BP
  // baseline at k=16. The 1.5-2.0 bpn band seen on large natural corpora is
  // indicative only; this synthetic family has no long exact BP repeats at
  // desk scale, so we report the value instead of asserting the band.
  expect(last < 2.79, "k=16 topology bpn not below the 2.79 plain-BP baseline");
  std::printf("  (info: k=16 topology bpn = %.3f)\n", last);
}

// --- criterion 6: block tree structural audit -----------------------------

void block_tree_audit() {
  Rng rng(0xACCE0006ULL);
  Pos total_backs = 0;
  for (int round = 0; round < 40; ++round) {
    const int sigma = round % 2 ? 4 : 26;
    const std::string bytes =
        round % 3 ? mutated_copies(1 + static_cast<Pos>(rng.below(400)), 6, sigma, 0x01000000u, rng)
                  : random_text(1 + static_cast<Pos>(rng.below(2000)), sigma, rng);
    std::vector<Sym> s;
    for (char c : bytes) s.push_back(static_cast<Sym>(c - 'a' + 1));
    const int r = 2 + static_cast<int>(rng.below(3));
    const Pos mll = 1 + static_cast<Pos>(rng.below(24));
    const BlockTree bt = BlockTree::build(s, r, mll, sigma);
    total_backs += audit_block_tree(bt, s);  // throws on any violation
    for (Pos i = 1; i <= static_cast<Pos>(s.size()); ++i) {
      expect_eq(bt.access(i), s[static_cast<std::size_t>(i - 1)], "block tree access");
    }
  }
  expect(total_backs > 0, "audit never saw a BackBlock");
}

// --- criterion 7: maximal substrings --------------------------------------

void maximal_substrings_vs_brute() {
  Rng rng(0xACCE0007ULL);
  for (int pair = 0; pair < 50; ++pair) {
    const int sigma = 2 + static_cast<int>(rng.below(4));
    const std::string text_bytes =
        pair % 2 ? random_text(20 + static_cast<Pos>(rng.below(500)), sigma, rng)
                 : mutated_copies(30 + static_cast<Pos>(rng.below(80)), 4, sigma, 0x04000000u, rng);
    const Text t = Text::from_string(text_bytes);
    const BtCst cst = build_cst(t, 2, 8, 8, 8);
    const std::string query = random_text(1 + static_cast<Pos>(rng.below(500)), sigma + 1, rng);
    const auto got = maximal_substrings(cst, query);
    const auto want = brute_maximal_substrings(text_bytes, query);
    expect_eq(got.size(), want.size(), "maximal substring count");
    for (std::size_t k = 0; k < got.size(); ++k) {
      expect_eq(got[k].start, want[k].first, "match start");
      expect_eq(got[k].end, want[k].second, "match end");
      const Pos len = got[k].end - got[k].start + 1;
      expect(got[k].occ >= 1 && got[k].occ + len - 1 <= static_cast<Pos>(text_bytes.size()),
             "occurrence out of range");
      expect(text_bytes.compare(static_cast<std::size_t>(got[k].occ - 1),
                                static_cast<std::size_t>(len), query,
                                static_cast<std::size_t>(got[k].start - 1),
                                static_cast<std::size_t>(len)) == 0,
             "occurrence does not hold the substring");
    }
  }
}

// --- criterion 8: serialization round-trip digests ------------------------

std::uint64_t query_digest(const BtCst& cst, std::uint64_t seed) {
  Rng rng(seed);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (int q = 0; q < 500; ++q) {
    const Pos l1 = 1 + static_cast<Pos>(rng.below(static_cast<std::uint64_t>(cst.n())));
    const Pos l2 = 1 + static_cast<Pos>(rng.below(static_cast<std::uint64_t>(cst.n())));
    const StNode v = *cst.topology().leaf_select(l1);
    const StNode w = cst.lca(v, *cst.topology().leaf_select(l2));
    h = fnv(h, static_cast<std::uint64_t>(w));
    h = fnv(h, static_cast<std::uint64_t>(cst.string_depth(w)));
    h = fnv(h, static_cast<std::uint64_t>(cst.tree_depth(v)));
    h = fnv(h, static_cast<std::uint64_t>(cst.suffix_link(w)));
    h = fnv(h, static_cast<std::uint64_t>(cst.parent(v)));
    h = fnv(h, static_cast<std::uint64_t>(cst.leaf_sa(l1)));
    if (w != cst.root()) h = fnv(h, static_cast<std::uint64_t>(cst.letter(w, 1)));
  }
  return h;
}

void serialization_round_trip() {
  const struct { int r; Pos mll, sa, tx; } params[] = {{2, 8, 8, 16}, {4, 16, 32, 32}, {3, 4, 4, 4}};
  int combo = 0;
  for (int corpus = 0; corpus < 3; ++corpus) {
    const Text t = corpus == 0 ? Text::from_string("banana")
                               : gen_corpus(500 * corpus, 4, 0.01, 17 + corpus);
    for (const auto& p : params) {
      const BtCst cst = build_cst(t, p.r, p.mll, p.sa, p.tx);
      const std::string path = "/tmp/btcst_accept_" + std::to_string(combo) + ".idx";
      save_index(cst, path);
      const BtCst back = load_index(path);
      std::remove(path.c_str());
      expect_eq(query_digest(cst, 99), query_digest(back, 99), "query digest after round trip");
      expect_eq(serialize_index(back), serialize_index(cst), "serialized bytes after round trip");
      ++combo;
    }
  }
}

}  // namespace

int main() {
  criterion("BTCT primitives match the scan oracles", bp_primitive_equivalence);
  criterion("CST operations match the pointer-tree oracle", [] { cst_differential(false); });
  criterion("banana worked example", banana_example);
  criterion("child_binary equals child_linear everywhere", [] { cst_differential(true); });
  criterion("topology space shrinks with repetitiveness", space_sensitivity);
  criterion("block tree structural audit", block_tree_audit);
  criterion("maximal substrings match the brute force", maximal_substrings_vs_brute);
  criterion("serialization round-trip preserves query digests", serialization_round_trip);
  return failures == 0 ? 0 : 1;
}
