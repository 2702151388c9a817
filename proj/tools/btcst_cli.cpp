// Command-line front end: build/save/load indexes, run query benchmarks with
// result digests, report space, solve maximal substrings, generate corpora.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "btcst/corpus.hpp"
#include "btcst/cst.hpp"
#include "btcst/matching.hpp"
#include "btcst/serialize.hpp"
#include "btcst/space.hpp"

namespace {

using namespace btcst;

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
}

struct Digest {
  std::uint64_t h = 1469598103934665603ULL;
  void mix(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h = (h ^ ((v >> (8 * b)) & 0xff)) * 1099511628211ULL;
    }
  }
};

// Random node scheme: draw two random leaves, take their lca, then pick a
// uniformly random node on that lca's path to the root.
StNode random_node(const BtCst& cst, Rng& rng) {
  const Pos l1 = 1 + static_cast<Pos>(rng.below(static_cast<std::uint64_t>(cst.n())));
  const Pos l2 = 1 + static_cast<Pos>(rng.below(static_cast<std::uint64_t>(cst.n())));
  const StNode v = cst.lca(*cst.topology().leaf_select(l1), *cst.topology().leaf_select(l2));
  std::vector<StNode> path{v};
  for (StNode u = v; u != cst.root();) {
    u = cst.parent(u);
    path.push_back(u);
  }
  return path[rng.below(path.size())];
}

int run_query(const std::string& index_path, const std::string& op, long long count,
              std::uint64_t seed) {
  const BtCst cst = load_index(index_path);
  Rng rng(seed);
  Digest digest;
  std::vector<double> micros;
  micros.reserve(static_cast<std::size_t>(count));

  for (long long q = 0; q < count; ++q) {
    const StNode v = random_node(cst, rng);
    const StNode u = random_node(cst, rng);
    const auto t0 = std::chrono::steady_clock::now();
    std::uint64_t result = 0;
    if (op == "parent") {
      result = static_cast<std::uint64_t>(v == cst.root() ? 0 : cst.parent(v));
    } else if (op == "first_child") {
      result = static_cast<std::uint64_t>(cst.is_leaf(v) ? 0 : cst.first_child(v));
    } else if (op == "next_sibling") {
      result = v == cst.root() ? 0 : static_cast<std::uint64_t>(cst.next_sibling(v).value_or(0));
    } else if (op == "lca") {
      result = static_cast<std::uint64_t>(cst.lca(v, u));
    } else if (op == "suffix_link") {
      result = static_cast<std::uint64_t>(cst.suffix_link(v));
    } else if (op == "string_depth") {
      result = static_cast<std::uint64_t>(cst.string_depth(v));
    } else if (op == "tree_depth") {
      result = static_cast<std::uint64_t>(cst.tree_depth(v));
    } else if (op == "is_leaf") {
      result = cst.is_leaf(v) ? 1 : 0;
    } else if (op == "level_ancestor") {
      const Pos d = static_cast<Pos>(rng.below(static_cast<std::uint64_t>(cst.tree_depth(v) + 1)));
      result = static_cast<std::uint64_t>(cst.level_ancestor(v, d));
    } else if (op == "string_ancestor") {
      const Pos d = static_cast<Pos>(rng.below(static_cast<std::uint64_t>(cst.string_depth(v) + 1)));
      result = static_cast<std::uint64_t>(cst.string_ancestor(v, d));
    } else if (op == "child") {
      const Sym c = static_cast<Sym>(1 + rng.below(static_cast<std::uint64_t>(cst.sigma())));
      result = static_cast<std::uint64_t>(cst.child_binary(v, c).value_or(0));
    } else if (op == "letter") {
      const Pos sd = cst.string_depth(v);
      result = sd == 0 ? 0
                       : static_cast<std::uint64_t>(
                             cst.letter(v, 1 + static_cast<Pos>(rng.below(
                                               static_cast<std::uint64_t>(sd)))));
    } else {
      std::cerr << "unknown op: " << op << "\n";
      return 1;
    }
    const auto t1 = std::chrono::steady_clock::now();
    digest.mix(result);
    micros.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
  }

  double mean = 0;
  for (double m : micros) mean += m;
  if (!micros.empty()) mean /= static_cast<double>(micros.size());
  std::sort(micros.begin(), micros.end());
  auto pct = [&](double p) {
    if (micros.empty()) return 0.0;
    return micros[std::min(micros.size() - 1,
                           static_cast<std::size_t>(p * static_cast<double>(micros.size())))];
  };
  std::printf("op=%s count=%lld seed=%llu\n", op.c_str(), count,
              static_cast<unsigned long long>(seed));
  std::printf("digest=%016llx\n", static_cast<unsigned long long>(digest.h));
  std::printf("mean_us=%.3f p50_us=%.3f p99_us=%.3f\n", mean, pct(0.50), pct(0.99));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-Tree compressed suffix tree"};
  app.require_subcommand(1);

  std::string input, output, index_path, op = "parent", query_file;
  int r = 2;
  long long mll = 128, sa_sample = 32, psi_sample = 128;
  long long count = 1000, size = 1024;
  int copies = 4;
  double rate = 0.005;
  std::uint64_t seed = 1;

  auto* build = app.add_subcommand("build", "build an index from a byte file");
  build->add_option("input", input)->required();
  build->add_option("-r", r, "block tree arity");
  build->add_option("-m", mll, "max leaf length");
  build->add_option("--sa-sample", sa_sample, "suffix array sampling rate");
  build->add_option("--psi-sample", psi_sample, "text position sampling rate");
  build->add_option("-o", output, "output index path")->required();

  auto* query = app.add_subcommand("query", "run random queries against an index");
  query->add_option("index", index_path)->required();
  query->add_option("--op", op, "operation name");
  query->add_option("--count", count, "number of queries");
  query->add_option("--seed", seed, "random seed");

  auto* space = app.add_subcommand("space", "print the space report");
  space->add_option("index", index_path)->required();

  auto* maxsub = app.add_subcommand("maxsub", "maximal substrings of a query file");
  maxsub->add_option("index", index_path)->required();
  maxsub->add_option("--query-file", query_file)->required();

  auto* gen = app.add_subcommand("gen", "generate a repetitive corpus");
  gen->add_option("--size", size, "base copy size");
  gen->add_option("--copies", copies, "number of copies");
  gen->add_option("--rate", rate, "per-position mutation rate");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("-o", output, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      if (mll < 1 || r < 2 || sa_sample < 1 || psi_sample < 1) {
        std::cerr << "invalid parameters\n";
        return 1;
      }
      const Text text = Text::from_bytes(read_file(input));
      const BtCst cst = build_cst(text, r, mll, sa_sample, psi_sample);
      save_index(cst, output);
      std::printf("n=%lld sigma=%d nodes=%lld\n", static_cast<long long>(cst.n()), cst.sigma(),
                  static_cast<long long>(cst.topology().node_count()));
    } else if (query->parsed()) {
      return run_query(index_path, op, count, seed);
    } else if (space->parsed()) {
      const BtCst cst = load_index(index_path);
      const SpaceReport rep = measure_space(cst);
      std::printf("n=%lld nodes=%lld\n", static_cast<long long>(rep.n),
                  static_cast<long long>(rep.node_count));
      std::printf("topology_bits=%lld pct=%.1f bpn=%.3f\n",
                  static_cast<long long>(rep.topology_bits), rep.pct(rep.topology_bits),
                  rep.topology_bpn());
      std::printf("csa_bits=%lld pct=%.1f\n", static_cast<long long>(rep.csa_bits),
                  rep.pct(rep.csa_bits));
      std::printf("h_bits=%lld pct=%.1f\n", static_cast<long long>(rep.h_bits),
                  rep.pct(rep.h_bits));
      std::printf("total_bits=%lld bps=%.3f\n", static_cast<long long>(rep.total_bits()),
                  rep.bits_per_symbol());
    } else if (maxsub->parsed()) {
      const BtCst cst = load_index(index_path);
      const std::vector<std::uint8_t> q = read_file(query_file);
      for (const MaximalMatch& m : maximal_substrings(cst, q)) {
        std::printf("%lld %lld %lld\n", static_cast<long long>(m.start),
                    static_cast<long long>(m.end), static_cast<long long>(m.occ));
      }
    } else if (gen->parsed()) {
      const std::vector<std::uint8_t> bytes = gen_corpus_bytes(size, copies, rate, seed);
      std::ofstream out(output, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open: " + output);
      out.write(reinterpret_cast<const char*>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
      std::printf("wrote %zu bytes\n", bytes.size());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
