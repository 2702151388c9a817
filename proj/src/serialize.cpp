#include "btcst/serialize.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace btcst {

namespace {

constexpr char kMagic[7] = {'B', 'T', 'C', 'S', 'T', '0', '1'};

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int b = 0; b < 4; ++b) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
  }
  void u64(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void bytes(const std::uint8_t* p, std::size_t count) { buf_.insert(buf_.end(), p, p + count); }

  std::vector<std::uint8_t> take() { return std::move(buf_); }
  std::size_t size() const { return buf_.size(); }

 private:
  std::vector<std::uint8_t> buf_;
};

class Reader {
 public:
  Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * b);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * b);
    return v;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  std::span<const std::uint8_t> bytes(std::size_t count) {
    need(count);
    auto s = data_.subspan(pos_, count);
    pos_ += count;
    return s;
  }
  std::size_t pos() const { return pos_; }

 private:
  void need(std::size_t count) const {
    if (pos_ + count > data_.size()) {
      throw std::runtime_error("index file: truncated section");
    }
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

void write_packed_bits(Writer& w, const std::vector<bool>& bits) {
  w.u64(bits.size());
  std::uint8_t acc = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) acc |= static_cast<std::uint8_t>(1u << (i % 8));
    if (i % 8 == 7) {
      w.u8(acc);
      acc = 0;
    }
  }
  if (bits.size() % 8 != 0) w.u8(acc);
}

std::vector<bool> read_packed_bits(Reader& r) {
  const std::uint64_t count = r.u64();
  auto raw = r.bytes((count + 7) / 8);
  std::vector<bool> bits(count);
  for (std::uint64_t i = 0; i < count; ++i) bits[i] = (raw[i / 8] >> (i % 8)) & 1;
  return bits;
}

std::vector<std::uint8_t> write_topology(const Btct& topo) {
  Writer w;
  const BlockTree& tree = topo.tree();
  w.u64(static_cast<std::uint64_t>(tree.size()));
  w.u32(static_cast<std::uint32_t>(tree.arity()));
  w.u64(static_cast<std::uint64_t>(tree.max_leaf_len()));
  w.u32(static_cast<std::uint32_t>(tree.levels().size()));
  std::vector<bool> leaf_bits;
  for (std::size_t l = 0; l < tree.levels().size(); ++l) {
    const BtLevel& level = tree.levels()[l];
    w.u64(static_cast<std::uint64_t>(level.block_size));
    w.u64(level.nodes.size());
    for (std::size_t k = 0; k < level.nodes.size(); ++k) {
      const BtNode& v = level.nodes[k];
      const BtctExtra& x = topo.extras()[l][k];
      w.u8(static_cast<std::uint8_t>(v.kind));
      w.u64(v.counts[1]);
      w.u64(static_cast<std::uint64_t>(x.lrank));
      w.i64(x.mexcess);
      w.u8(x.lbreaker ? 1 : 0);
      if (v.kind == BlockKind::Back) {
        w.u64(static_cast<std::uint64_t>(v.target));
        w.u64(static_cast<std::uint64_t>(v.offset));
        w.u64(v.pre_counts[1]);
        w.u64(static_cast<std::uint64_t>(x.fb_lrank));
        w.i64(x.fb_mexcess);
        w.i64(x.sb_mexcess);
        w.u8(x.fb_lbreaker ? 1 : 0);
        w.u8(x.m_fb ? 1 : 0);
      } else if (v.kind == BlockKind::Leaf) {
        for (Sym s : tree.leaf_data(v)) leaf_bits.push_back(s != 0);
      }
    }
  }
  write_packed_bits(w, leaf_bits);
  return w.take();
}

Btct read_topology(Reader& r) {
  const Pos p = static_cast<Pos>(r.u64());
  const int arity = static_cast<int>(r.u32());
  const Pos mll = static_cast<Pos>(r.u64());
  const std::uint32_t n_levels = r.u32();
  if (p <= 0 || arity < 2 || mll < 1 || n_levels == 0) {
    throw std::runtime_error("index file: bad topology header");
  }
  std::vector<BtLevel> levels(n_levels);
  std::vector<std::vector<BtctExtra>> extras(n_levels);
  for (std::uint32_t l = 0; l < n_levels; ++l) {
    levels[l].block_size = static_cast<Pos>(r.u64());
    const std::uint64_t count = r.u64();
    levels[l].nodes.resize(count);
    extras[l].resize(count);
    for (std::uint64_t k = 0; k < count; ++k) {
      BtNode& v = levels[l].nodes[k];
      BtctExtra& x = extras[l][k];
      const std::uint8_t kind = r.u8();
      if (kind > 2) throw std::runtime_error("index file: bad block kind");
      v.kind = static_cast<BlockKind>(kind);
      v.counts.assign(2, 0);
      v.counts[1] = static_cast<std::uint32_t>(r.u64());
      x.lrank = static_cast<Pos>(r.u64());
      x.mexcess = r.i64();
      x.lbreaker = r.u8() != 0;
      if (v.kind == BlockKind::Back) {
        v.target = static_cast<Pos>(r.u64());
        v.offset = static_cast<Pos>(r.u64());
        v.pre_counts.assign(2, 0);
        v.pre_counts[1] = static_cast<std::uint32_t>(r.u64());
        x.fb_lrank = static_cast<Pos>(r.u64());
        x.fb_mexcess = r.i64();
        x.sb_mexcess = r.i64();
        x.fb_lbreaker = r.u8() != 0;
        x.m_fb = r.u8() != 0;
        if (v.target < 0 || static_cast<std::uint64_t>(v.target) >= count ||
            v.offset < 0 || v.offset >= levels[l].block_size) {
          throw std::runtime_error("index file: back reference out of range");
        }
      }
    }
  }

  // Starts, extents and child links are structural: top blocks tile [1, p],
  // each InternalBlock's children are the next consecutive run one level down.
  const Pos b0 = levels[0].block_size;
  if (b0 < 1 || levels[0].nodes.size() != static_cast<std::size_t>((p + b0 - 1) / b0)) {
    throw std::runtime_error("index file: top level does not tile the sequence");
  }
  for (std::size_t t = 0; t < levels[0].nodes.size(); ++t) {
    levels[0].nodes[t].start = 1 + static_cast<Pos>(t) * b0;
    levels[0].nodes[t].extent = std::min<Pos>(b0, p - levels[0].nodes[t].start + 1);
  }
  for (std::uint32_t l = 0; l < n_levels; ++l) {
    if (l + 1 < n_levels) {
      const Pos bc = levels[l + 1].block_size;
      std::size_t running = 0;
      for (BtNode& v : levels[l].nodes) {
        if (v.kind != BlockKind::Internal) continue;
        v.child0 = static_cast<Pos>(running);
        v.children = (v.extent + bc - 1) / bc;
        for (Pos j = 0; j < v.children; ++j) {
          if (running >= levels[l + 1].nodes.size()) {
            throw std::runtime_error("index file: child structure inconsistent");
          }
          BtNode& child = levels[l + 1].nodes[running++];
          child.start = v.start + j * bc;
          child.extent = std::min(bc, v.start + v.extent - child.start);
        }
      }
      if (running != levels[l + 1].nodes.size()) {
        throw std::runtime_error("index file: child structure inconsistent");
      }
    }
    for (BtNode& v : levels[l].nodes) v.counts[0] = static_cast<std::uint32_t>(v.extent) - v.counts[1];
    for (BtNode& v : levels[l].nodes) {
      if (v.kind == BlockKind::Back) {
        v.pre_counts[0] = static_cast<std::uint32_t>(v.offset) - v.pre_counts[1];
      }
    }
  }

  const std::vector<bool> leaf_bits = read_packed_bits(r);
  std::vector<Sym> leaf_symbols(leaf_bits.size());
  std::size_t off = 0;
  for (auto& level : levels) {
    for (BtNode& v : level.nodes) {
      if (v.kind != BlockKind::Leaf) continue;
      v.leaf_off = static_cast<Pos>(off);
      off += static_cast<std::size_t>(v.extent);
    }
  }
  if (off != leaf_bits.size()) throw std::runtime_error("index file: leaf payload size mismatch");
  for (std::size_t i = 0; i < leaf_bits.size(); ++i) leaf_symbols[i] = leaf_bits[i] ? 1 : 0;

  return Btct::from_parts(
      BlockTree::from_parts(p, arity, mll, 1, std::move(levels), std::move(leaf_symbols)),
      std::move(extras));
}

std::vector<std::uint8_t> write_csa(const CsaIndex& csa) {
  Writer w;
  w.u64(static_cast<std::uint64_t>(csa.n()));
  w.u32(static_cast<std::uint32_t>(csa.sigma()));
  w.u64(static_cast<std::uint64_t>(csa.sa_rate()));
  w.u64(static_cast<std::uint64_t>(csa.text_rate()));
  for (Pos b : csa.first_char_bounds()) w.u64(static_cast<std::uint64_t>(b));
  for (const auto& bucket : csa.psi_runs()) {
    w.u64(bucket.size());
    for (const auto& run : bucket) {
      w.u64(static_cast<std::uint64_t>(run.value0));
      w.u64(static_cast<std::uint64_t>(run.len));
    }
  }
  std::vector<bool> marks(static_cast<std::size_t>(csa.n()));
  for (Pos i = 1; i <= csa.n(); ++i) marks[static_cast<std::size_t>(i - 1)] = csa.sampled_ranks().get(i);
  write_packed_bits(w, marks);
  w.u64(csa.sa_samples().size());
  for (Pos v : csa.sa_samples()) w.u64(static_cast<std::uint64_t>(v));
  w.u64(csa.isa_samples().size());
  for (Pos v : csa.isa_samples()) w.u64(static_cast<std::uint64_t>(v));
  return w.take();
}

CsaIndex read_csa(Reader& r) {
  const Pos n = static_cast<Pos>(r.u64());
  const int sigma = static_cast<int>(r.u32());
  const Pos sa_rate = static_cast<Pos>(r.u64());
  const Pos text_rate = static_cast<Pos>(r.u64());
  std::vector<Pos> bounds(static_cast<std::size_t>(sigma) + 2);
  for (auto& b : bounds) b = static_cast<Pos>(r.u64());
  std::vector<std::vector<CsaIndex::PsiRun>> runs(static_cast<std::size_t>(sigma) + 1);
  for (int c = 0; c <= sigma; ++c) {
    const std::uint64_t count = r.u64();
    auto& bucket = runs[static_cast<std::size_t>(c)];
    bucket.resize(count);
    Pos rank0 = bounds[static_cast<std::size_t>(c)] + 1;
    for (auto& run : bucket) {
      run.rank0 = rank0;
      run.value0 = static_cast<Pos>(r.u64());
      run.len = static_cast<Pos>(r.u64());
      rank0 += run.len;
    }
    if (!bucket.empty() && rank0 != bounds[static_cast<std::size_t>(c) + 1] + 1) {
      throw std::runtime_error("index file: Psi runs do not cover their bucket");
    }
  }
  const std::vector<bool> marks = read_packed_bits(r);
  if (static_cast<Pos>(marks.size()) != n) throw std::runtime_error("index file: bad mark count");
  std::vector<Pos> sa_samples(r.u64());
  for (auto& v : sa_samples) v = static_cast<Pos>(r.u64());
  std::vector<Pos> isa_samples(r.u64());
  for (auto& v : isa_samples) v = static_cast<Pos>(r.u64());
  return CsaIndex::from_parts(n, sigma, sa_rate, text_rate, std::move(bounds), std::move(runs),
                              BitVector(marks), std::move(sa_samples), std::move(isa_samples));
}

}  // namespace

std::vector<std::uint8_t> serialize_index(const BtCst& cst) {
  std::vector<std::vector<std::uint8_t>> sections;
  {
    Writer w;
    w.u32(static_cast<std::uint32_t>(cst.sym_to_byte().size()));
    w.bytes(cst.sym_to_byte().data(), cst.sym_to_byte().size());
    sections.push_back(w.take());
  }
  sections.push_back(write_topology(cst.topology()));
  sections.push_back(write_csa(cst.csa()));
  {
    Writer w;
    w.u64(cst.h().runs().size());
    for (const auto& run : cst.h().runs()) {
      w.u64(static_cast<std::uint64_t>(run.zeros));
      w.u64(static_cast<std::uint64_t>(run.ones));
    }
    sections.push_back(w.take());
  }

  Writer out;
  out.bytes(reinterpret_cast<const std::uint8_t*>(kMagic), sizeof(kMagic));
  out.u64(static_cast<std::uint64_t>(cst.n()));
  out.u32(static_cast<std::uint32_t>(cst.sigma()));
  out.u32(static_cast<std::uint32_t>(cst.arity()));
  out.u64(static_cast<std::uint64_t>(cst.max_leaf_len()));
  out.u64(static_cast<std::uint64_t>(cst.csa().sa_rate()));
  out.u64(static_cast<std::uint64_t>(cst.csa().text_rate()));
  std::uint64_t offset = out.size() + 16 * sections.size();
  for (const auto& s : sections) {
    out.u64(offset);
    out.u64(s.size());
    offset += s.size();
  }
  for (const auto& s : sections) out.bytes(s.data(), s.size());
  return out.take();
}

BtCst deserialize_index(std::span<const std::uint8_t> data) {
  Reader head(data);
  const auto magic = head.bytes(sizeof(kMagic));
  if (std::memcmp(magic.data(), kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("index file: bad magic");
  }
  const Pos n = static_cast<Pos>(head.u64());
  const int sigma = static_cast<int>(head.u32());
  const int arity = static_cast<int>(head.u32());
  const Pos mll = static_cast<Pos>(head.u64());
  head.u64();  // sa_rate, repeated inside the CSA section
  head.u64();  // text_rate
  struct Section {
    std::uint64_t offset, length;
  };
  Section table[4];
  for (auto& s : table) {
    s.offset = head.u64();
    s.length = head.u64();
    if (s.offset < head.pos() || s.offset + s.length > data.size()) {
      throw std::runtime_error("index file: section out of bounds");
    }
  }

  Reader alpha(data.subspan(table[0].offset, table[0].length));
  std::vector<std::uint8_t> sym_to_byte(alpha.u32());
  const auto raw = alpha.bytes(sym_to_byte.size());
  std::copy(raw.begin(), raw.end(), sym_to_byte.begin());
  if (static_cast<int>(sym_to_byte.size()) != sigma + 1) {
    throw std::runtime_error("index file: alphabet size mismatch");
  }

  Reader topo_r(data.subspan(table[1].offset, table[1].length));
  Btct topo = read_topology(topo_r);
  Reader csa_r(data.subspan(table[2].offset, table[2].length));
  CsaIndex csa = read_csa(csa_r);
  Reader h_r(data.subspan(table[3].offset, table[3].length));
  std::vector<HBitvector::Run> h_runs(h_r.u64());
  for (auto& run : h_runs) {
    run.zeros = static_cast<Pos>(h_r.u64());
    run.ones = static_cast<Pos>(h_r.u64());
  }

  BtCst cst = BtCst::assemble(n, sigma, arity, mll, std::move(sym_to_byte), std::move(topo),
                              std::move(csa), HBitvector::from_runs(std::move(h_runs)));
  if (cst.csa().n() != n || cst.h().n() != n || cst.topology().leaf_rank(cst.topology().length()) != n) {
    throw std::runtime_error("index file: component sizes disagree");
  }
  return cst;
}

void save_index(const BtCst& cst, const std::string& path) {
  const std::vector<std::uint8_t> data = serialize_index(cst);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

BtCst load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  return deserialize_index(data);
}

}  // namespace btcst
