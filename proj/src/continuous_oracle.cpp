#include "txreach/continuous_oracle.hpp"

#include <algorithm>
#include <limits>

namespace txreach {

std::vector<PointId> select_representatives(const TransmissionInstance& inst, std::span<const PointId> rt, Vec2 t) {
  std::vector<PointId> out;
  PointId at_t = std::numeric_limits<PointId>::max();
  for (PointId p : rt) {
    if (inst.pos(p) == t) at_t = std::min(at_t, p);
  }
  if (at_t != std::numeric_limits<PointId>::max()) return {at_t};

  static const ConeFamily six(6);
  std::int64_t best[6] = {-1, -1, -1, -1, -1, -1};
  double best_key[6] = {};
  for (PointId p : rt) {
    const int c = six.cone_of(t, inst.pos(p));
    const double key = six.order_key(c, inst.pos(p));
    if (best[c] < 0 || key < best_key[c] || (key == best_key[c] && p < best[c])) {
      best[c] = p;
      best_key[c] = key;
    }
  }
  for (std::int64_t b : best) {
    if (b >= 0) out.push_back(static_cast<PointId>(b));
  }
  return out;
}

ContinuousOracle::ContinuousOracle(TransmissionInstance inst, int k) : discrete_(std::move(inst), k) { build_reporting(); }

ContinuousOracle::ContinuousOracle(DiscreteOracle discrete) : discrete_(std::move(discrete)) { build_reporting(); }

void ContinuousOracle::build_reporting() {
  const TransmissionInstance& inst = discrete_.instance();
  const ChainDecomposition& d = discrete_.chains();
  std::vector<Disk> disks;
  for (PointId p : d.remaining) disks.push_back({inst.pos(p), inst.radius(p)});
  remaining_disks_ = OrderedMembershipTree(disks);
  chain_disks_.clear();
  chain_disks_.reserve(d.chains.size());
  for (const Chain& c : d.chains) {
    disks.clear();
    for (PointId p : c) disks.push_back({inst.pos(p), inst.radius(p)});
    chain_disks_.emplace_back(disks);
  }
}

std::vector<PointId> ContinuousOracle::report_containing(Vec2 t) const {
  const auto& remaining = discrete_.chains().remaining;
  std::vector<PointId> out;
  for (std::size_t pos : remaining_disks_.report_containing(t)) out.push_back(remaining[pos]);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> ContinuousOracle::chain_first_containing(std::size_t c, Vec2 t) const {
  const auto pos = chain_disks_.at(c).first_containing(t);
  if (!pos) return std::nullopt;
  return *pos + 1;
}

bool ContinuousOracle::query(PointId s, Vec2 t) const {
  instance().check_id(s);
  // Last hop in R: a representative inside that disk is reachable too.
  const auto rt = report_containing(t);
  for (PointId q : select_representatives(instance(), rt, t)) {
    if (discrete_.query(s, q)) return true;
  }
  // Last hop on a chain: its first disk containing t is reachable iff it is
  // no later than the last chain position s reaches.
  const ChainIndexTable& table = discrete_.indices();
  for (std::size_t c = 0; c < chain_disks_.size(); ++c) {
    const auto reach = table.i(c, s);
    if (reach == 0) continue;
    const auto j = chain_first_containing(c, t);
    if (j && *j <= reach) return true;
  }
  return false;
}

std::size_t ContinuousOracle::memory_bytes() const {
  std::size_t b = discrete_.memory_bytes() + remaining_disks_.memory_bytes();
  for (const auto& t : chain_disks_) b += t.memory_bytes();
  return b;
}

void ContinuousOracle::save(BinaryWriter& w) const { discrete_.save(w); }

ContinuousOracle ContinuousOracle::load(BinaryReader& r, TransmissionInstance inst) {
  ContinuousOracle o;
  o.discrete_ = DiscreteOracle::load(r, std::move(inst));
  o.build_reporting();
  return o;
}

}  // namespace txreach
