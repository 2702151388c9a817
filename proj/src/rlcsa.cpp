#include "btcst/rlcsa.hpp"

#include <algorithm>
#include <stdexcept>

namespace btcst {

CsaIndex CsaIndex::build(const Text& text, const std::vector<Pos>& sa, Pos sa_rate,
                         Pos text_rate) {
  if (sa_rate < 1 || text_rate < 1) {
    throw std::invalid_argument("CsaIndex::build: sampling rates must be >= 1");
  }
  const Pos n = text.n();
  CsaIndex csa;
  csa.n_ = n;
  csa.sigma_ = text.sigma;
  csa.sa_rate_ = sa_rate;
  csa.text_rate_ = text_rate;

  std::vector<Pos> inv(static_cast<std::size_t>(n) + 1);
  for (Pos i = 1; i <= n; ++i) inv[static_cast<std::size_t>(sa[static_cast<std::size_t>(i - 1)])] = i;

  // Character bucket bounds: suffixes starting with c occupy (bounds[c], bounds[c+1]].
  csa.bounds_.assign(static_cast<std::size_t>(text.sigma) + 2, 0);
  for (Sym s : text.symbols) csa.bounds_[static_cast<std::size_t>(s) + 1] += 1;
  for (std::size_t c = 1; c < csa.bounds_.size(); ++c) csa.bounds_[c] += csa.bounds_[c - 1];

  // Psi, run-length encoded per bucket: maximal runs of +1 increments.
  csa.runs_.assign(static_cast<std::size_t>(text.sigma) + 1, {});
  auto psi_at = [&](Pos i) {
    const Pos a = sa[static_cast<std::size_t>(i - 1)];
    return inv[static_cast<std::size_t>(a % n + 1)];
  };
  for (int c = 0; c <= text.sigma; ++c) {
    const Pos lo = csa.bounds_[static_cast<std::size_t>(c)] + 1;
    const Pos hi = csa.bounds_[static_cast<std::size_t>(c) + 1];
    auto& bucket = csa.runs_[static_cast<std::size_t>(c)];
    for (Pos i = lo; i <= hi; ++i) {
      const Pos v = psi_at(i);
      if (!bucket.empty() && bucket.back().rank0 + bucket.back().len == i &&
          bucket.back().value0 + bucket.back().len == v) {
        bucket.back().len += 1;
      } else {
        bucket.push_back({i, v, 1});
      }
    }
  }

  // Rank samples: mark ranks whose suffix starts at a position == 1 (mod rate),
  // plus the rank of the terminator suffix so Psi walks never wrap.
  std::vector<bool> marked(static_cast<std::size_t>(n), false);
  for (Pos i = 1; i <= n; ++i) {
    const Pos a = sa[static_cast<std::size_t>(i - 1)];
    if (a % sa_rate == 1 % sa_rate || a == n) marked[static_cast<std::size_t>(i - 1)] = true;
  }
  csa.sampled_ranks_ = BitVector(marked);
  for (Pos i = 1; i <= n; ++i) {
    if (marked[static_cast<std::size_t>(i - 1)]) {
      csa.sa_samples_.push_back(sa[static_cast<std::size_t>(i - 1)]);
    }
  }
  for (Pos j = 1; j <= n; j += text_rate) {
    csa.isa_samples_.push_back(inv[static_cast<std::size_t>(j)]);
  }
  return csa;
}

Pos CsaIndex::psi(Pos i) const {
  if (i < 1 || i > n_) throw std::out_of_range("CsaIndex::psi: rank out of range");
  const Sym c = first_char(i);
  const auto& bucket = runs_[static_cast<std::size_t>(c)];
  // Last run with rank0 <= i.
  auto it = std::upper_bound(bucket.begin(), bucket.end(), i,
                             [](Pos v, const PsiRun& r) { return v < r.rank0; });
  const PsiRun& run = *(it - 1);
  return run.value0 + (i - run.rank0);
}

Sym CsaIndex::first_char(Pos i) const {
  if (i < 1 || i > n_) throw std::out_of_range("CsaIndex::first_char: rank out of range");
  auto it = std::upper_bound(bounds_.begin(), bounds_.end(), i - 1);
  return static_cast<Sym>(it - bounds_.begin() - 1);
}

Pos CsaIndex::sa_access(Pos i) const {
  if (i < 1 || i > n_) throw std::out_of_range("CsaIndex::sa_access: rank out of range");
  Pos steps = 0;
  while (!sampled_ranks_.get(i)) {
    i = psi(i);
    ++steps;
  }
  return sa_samples_[static_cast<std::size_t>(sampled_ranks_.rank(true, i) - 1)] - steps;
}

Pos CsaIndex::isa_access(Pos j) const {
  if (j < 1 || j > n_) throw std::out_of_range("CsaIndex::isa_access: position out of range");
  const Pos slot = (j - 1) / text_rate_;
  Pos i = isa_samples_[static_cast<std::size_t>(slot)];
  for (Pos k = slot * text_rate_ + 1; k < j; ++k) i = psi(i);
  return i;
}

std::vector<Sym> CsaIndex::extract(Pos i, Pos j) const {
  if (i < 1 || j > n_ || i > j) throw std::out_of_range("CsaIndex::extract: bad range");
  std::vector<Sym> out;
  out.reserve(static_cast<std::size_t>(j - i + 1));
  Pos r = isa_access(i);
  for (Pos k = i; k <= j; ++k) {
    out.push_back(first_char(r));
    r = psi(r);
  }
  return out;
}

Pos CsaIndex::total_psi_runs() const {
  Pos total = 0;
  for (const auto& bucket : runs_) total += static_cast<Pos>(bucket.size());
  return total;
}

CsaIndex CsaIndex::from_parts(Pos n, int sigma, Pos sa_rate, Pos text_rate,
                              std::vector<Pos> bounds, std::vector<std::vector<PsiRun>> runs,
                              BitVector sampled_ranks, std::vector<Pos> sa_samples,
                              std::vector<Pos> isa_samples) {
  CsaIndex csa;
  csa.n_ = n;
  csa.sigma_ = sigma;
  csa.sa_rate_ = sa_rate;
  csa.text_rate_ = text_rate;
  csa.bounds_ = std::move(bounds);
  csa.runs_ = std::move(runs);
  csa.sampled_ranks_ = std::move(sampled_ranks);
  csa.sa_samples_ = std::move(sa_samples);
  csa.isa_samples_ = std::move(isa_samples);
  return csa;
}

}  // namespace btcst
