#include "txreach/discrete_oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "txreach/reference.hpp"

namespace txreach {

ChainIndexTable::ChainIndexTable(std::size_t points, std::size_t chains)
    : n_(points), chains_(chains), i_(points * chains, 0), j_(points * chains, 0) {}

bool ChainIndexTable::linked(PointId p, PointId q) const {
  const Index* ip = i_.data() + p * chains_;
  const Index* jq = j_.data() + q * chains_;
  for (std::size_t c = 0; c < chains_; ++c) {
    if (jq[c] <= ip[c]) return true;
  }
  return false;
}

void ChainIndexTable::save(BinaryWriter& w) const {
  w.put<std::uint64_t>(n_);
  w.put<std::uint64_t>(chains_);
  w.put_vector(i_);
  w.put_vector(j_);
}

ChainIndexTable ChainIndexTable::load(BinaryReader& r) {
  ChainIndexTable t;
  t.n_ = r.get<std::uint64_t>();
  t.chains_ = r.get<std::uint64_t>();
  t.i_ = r.get_vector<Index>();
  t.j_ = r.get_vector<Index>();
  if (t.i_.size() != t.j_.size() || (t.chains_ != 0 && t.i_.size() / t.chains_ != t.n_) ||
      t.i_.size() != t.n_ * t.chains_) {
    throw FormatError("chain index table size mismatch");
  }
  return t;
}

namespace {

constexpr std::size_t kMaxChainLength = std::numeric_limits<ChainIndexTable::Index>::max() - 1;

// One deletion sweep: starts in the given order, each claiming the
// still-unmarked vertices it reaches along `next`.
template <class Next, class Assign>
void sweep(std::span<const PointId> starts, std::vector<std::uint32_t>& mark, std::uint32_t stamp,
           std::vector<PointId>& stack, Next next, Assign assign) {
  for (std::size_t s = 0; s < starts.size(); ++s) {
    const PointId v0 = starts[s];
    if (mark[v0] == stamp) continue;  // everything it reaches is claimed already
    mark[v0] = stamp;
    stack.assign(1, v0);
    while (!stack.empty()) {
      const PointId v = stack.back();
      stack.pop_back();
      assign(v, s);
      for (PointId w : next(v)) {
        if (mark[w] != stamp) {
          mark[w] = stamp;
          stack.push_back(w);
        }
      }
    }
  }
}

}  // namespace

ChainIndexTable build_chain_indices(const SpannerGraph& h, std::span<const Chain> chains) {
  const std::size_t n = h.vertex_count();
  ChainIndexTable t(n, chains.size());
  std::vector<std::uint32_t> mark(n, 0);
  std::vector<PointId> stack;
  std::vector<PointId> reversed;
  std::uint32_t stamp = 0;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const Chain& ch = chains[c];
    if (ch.empty() || ch.size() > kMaxChainLength) throw std::invalid_argument("build_chain_indices: bad chain length");
    const auto len = static_cast<ChainIndexTable::Index>(ch.size());
    for (PointId q = 0; q < n; ++q) {
      t.set_i(c, q, 0);
      t.set_j(c, q, static_cast<ChainIndexTable::Index>(len + 1));
    }
    ++stamp;
    sweep(ch, mark, stamp, stack, [&](PointId v) { return h.out(v); },
          [&](PointId v, std::size_t s) { t.set_j(c, v, static_cast<ChainIndexTable::Index>(s + 1)); });
    reversed.assign(ch.rbegin(), ch.rend());
    ++stamp;
    sweep(reversed, mark, stamp, stack, [&](PointId v) { return h.in(v); },
          [&](PointId v, std::size_t s) { t.set_i(c, v, static_cast<ChainIndexTable::Index>(len - s)); });
  }
  return t;
}

ChainIndexTable chain_indices_by_closure(const TransmissionInstance& inst, std::span<const Chain> chains) {
  const auto cl = reference::closure(inst);
  const std::size_t n = inst.size();
  ChainIndexTable t(n, chains.size());
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const Chain& ch = chains[c];
    for (PointId q = 0; q < n; ++q) {
      ChainIndexTable::Index i = 0;
      auto j = static_cast<ChainIndexTable::Index>(ch.size() + 1);
      for (std::size_t m = 0; m < ch.size(); ++m) {
        const auto pos = static_cast<ChainIndexTable::Index>(m + 1);
        if (cl.reaches(q, ch[m])) i = std::max(i, pos);
        if (cl.reaches(ch[m], q)) j = std::min(j, pos);
      }
      t.set_i(c, q, i);
      t.set_j(c, q, j);
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// DiscreteOracle

namespace {

std::vector<Disk> disks_of(const TransmissionInstance& inst) {
  std::vector<Disk> d(inst.size());
  for (PointId p = 0; p < inst.size(); ++p) d[p] = {inst.pos(p), inst.radius(p)};
  return d;
}

}  // namespace

DiscreteOracle::DiscreteOracle(TransmissionInstance inst, int k) : inst_(std::move(inst)) {
  if (k <= 8) throw std::domain_error("DiscreteOracle: cone count must exceed 8");
  chains_ = extract_chains(inst_);
  if (!chains_.chains.empty()) {
    const SpannerGraph h = build_spanner(inst_, k);
    table_ = build_chain_indices(h, chains_.chains);
  } else {
    table_ = ChainIndexTable(inst_.size(), 0);
  }
  const auto disks = disks_of(inst_);
  const SpannerReachability provider(inst_, [k](const TransmissionInstance& sub) {
    return sub.size() <= 64 ? build_spanner_naive(sub, k) : build_spanner_local(sub, k);
  });
  tree_ = SeparationTree(disks, chains_.remaining, provider);
}

bool DiscreteOracle::query(PointId p, PointId q) const {
  inst_.check_id(p);
  inst_.check_id(q);
  if (p == q) return true;
  if (table_.linked(p, q)) return true;
  return chains_.in_remaining(p) && chains_.in_remaining(q) && tree_.query(p, q);
}

std::size_t DiscreteOracle::memory_bytes() const {
  std::size_t chain_bytes = (chains_.remaining.capacity() + chains_.chain_of.capacity() +
                             chains_.position.capacity()) * sizeof(std::uint32_t);
  for (const Chain& c : chains_.chains) chain_bytes += c.capacity() * sizeof(PointId);
  return chain_bytes + table_.memory_bytes() + tree_.memory_bytes();
}

void save_chains(BinaryWriter& w, const ChainDecomposition& d) {
  w.put<std::uint64_t>(d.threshold);
  w.put<std::uint64_t>(d.chains.size());
  for (const Chain& c : d.chains) w.put_vector(c);
  w.put_vector(d.remaining);
}

ChainDecomposition load_chains(BinaryReader& r, std::size_t n) {
  ChainDecomposition d;
  d.threshold = r.get<std::uint64_t>();
  const auto count = r.get<std::uint64_t>();
  if (count > n) throw FormatError("more chains than points");
  d.chains.resize(count);
  for (auto& c : d.chains) c = r.get_vector<PointId>();
  d.remaining = r.get_vector<PointId>();
  std::vector<std::uint8_t> seen(n, 0);
  auto claim = [&](PointId p) {
    if (p >= n || seen[p]) throw FormatError("chains and remaining set do not partition the points");
    seen[p] = 1;
  };
  for (const Chain& c : d.chains) {
    if (c.empty()) throw FormatError("empty chain");
    for (PointId p : c) claim(p);
  }
  for (PointId p : d.remaining) claim(p);
  if (std::count(seen.begin(), seen.end(), 1) != static_cast<std::ptrdiff_t>(n)) {
    throw FormatError("chains and remaining set do not cover the points");
  }
  d.index(n);
  return d;
}

void DiscreteOracle::save(BinaryWriter& w) const {
  save_chains(w, chains_);
  table_.save(w);
  tree_.save(w);
}

DiscreteOracle DiscreteOracle::load(BinaryReader& r, TransmissionInstance inst) {
  const std::size_t n = inst.size();
  auto chains = load_chains(r, n);
  auto table = ChainIndexTable::load(r);
  auto tree = SeparationTree::load(r);
  return assemble(std::move(inst), std::move(chains), std::move(table), std::move(tree));
}

DiscreteOracle DiscreteOracle::assemble(TransmissionInstance inst, ChainDecomposition chains, ChainIndexTable table,
                                        SeparationTree tree) {
  DiscreteOracle o;
  o.inst_ = std::move(inst);
  o.chains_ = std::move(chains);
  o.table_ = std::move(table);
  o.tree_ = std::move(tree);
  const std::size_t n = o.inst_.size();
  if (o.chains_.chain_of.size() != n) throw FormatError("chain decomposition does not match the instance");
  if (o.table_.point_count() != n || o.table_.chain_count() != o.chains_.chains.size()) {
    throw FormatError("chain index table does not match the chains");
  }
  if (o.tree_.size() != o.chains_.remaining.size()) throw FormatError("septree does not index the remaining set");
  for (PointId p : o.chains_.remaining) {
    if (!o.tree_.contains(p)) throw FormatError("septree does not index the remaining set");
  }
  return o;
}

}  // namespace txreach
