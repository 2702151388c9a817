#include "btcst/matching.hpp"

namespace btcst {

std::vector<MaximalMatch> maximal_substrings(const BtCst& cst, std::span<const std::uint8_t> query) {
  const Pos m = static_cast<Pos>(query.size());
  std::vector<Pos> ms(static_cast<std::size_t>(m) + 1, 0);
  std::vector<Pos> occ(static_cast<std::size_t>(m) + 1, 0);

  StNode v = cst.root();
  Pos ell = 0;  // the current match S[a, a+ell-1] is a prefix of str(v)
  for (Pos a = 1; a <= m; ++a) {
    while (a + ell <= m) {
      const std::uint8_t b = query[static_cast<std::size_t>(a + ell - 1)];
      if (!cst.has_byte(b)) break;
      const Sym c = cst.byte_to_sym(b);
      if (ell < cst.string_depth(v)) {
        if (cst.letter(v, ell + 1) != c) break;
        ++ell;
      } else {
        const std::optional<StNode> u = cst.child_binary(v, c);
        if (!u) break;
        v = *u;
        ++ell;
      }
    }
    ms[static_cast<std::size_t>(a)] = ell;
    if (ell >= 1) {
      occ[static_cast<std::size_t>(a)] = cst.leaf_sa(cst.leaf_interval(v).first);
    }
    if (ell > 0) {
      v = cst.string_ancestor(cst.suffix_link(v), ell - 1);
      --ell;
    }
  }

  std::vector<MaximalMatch> out;
  for (Pos a = 1; a <= m; ++a) {
    const Pos len = ms[static_cast<std::size_t>(a)];
    if (len >= 1 && (a == 1 || ms[static_cast<std::size_t>(a - 1)] <= len)) {
      out.push_back({a, a + len - 1, occ[static_cast<std::size_t>(a)]});
    }
  }
  return out;
}

std::vector<MaximalMatch> maximal_substrings(const BtCst& cst, std::string_view query) {
  return maximal_substrings(cst, std::span<const std::uint8_t>(
                                     reinterpret_cast<const std::uint8_t*>(query.data()),
                                     query.size()));
}

}  // namespace btcst
