#include "txreach/chains.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "txreach/membership.hpp"

namespace txreach {

void ChainDecomposition::index(std::size_t n) {
  chain_of.assign(n, kInRemaining);
  position.assign(n, 0);
  for (std::size_t c = 0; c < chains.size(); ++c) {
    for (std::size_t i = 0; i < chains[c].size(); ++i) {
      chain_of[chains[c][i]] = static_cast<std::int32_t>(c);
      position[chains[c][i]] = static_cast<std::uint32_t>(i + 1);
    }
  }
}

ChainDecomposition extract_chains(const TransmissionInstance& inst) {
  const std::size_t n = inst.size();
  ChainDecomposition out;
  out.threshold = ceil_cbrt(n);
  const std::size_t L = out.threshold;

  std::vector<PointId> order(n);
  std::iota(order.begin(), order.end(), 0U);
  auto by_radius = [&](PointId a, PointId b) {
    return inst.radius(a) < inst.radius(b) || (inst.radius(a) == inst.radius(b) && a < b);
  };
  std::sort(order.begin(), order.end(), by_radius);

  DynamicMembershipIndex live;
  for (PointId p = 0; p < n; ++p) live.insert(p, {inst.pos(p), inst.radius(p)});

  const ConeFamily six(6);
  std::vector<PointId> found;
  std::vector<Chain> cones(6);
  for (PointId p : order) {
    if (!live.contains_id(p)) continue;  // already placed in a chain
    live.erase(p);
    found.clear();
    while (found.size() < L) {
      const auto q = live.query(inst.pos(p));
      if (!q) break;
      found.push_back(*q);
      live.erase(*q);
    }
    if (L == 0 || found.size() < L) {
      for (PointId q : found) live.insert(q, {inst.pos(q), inst.radius(q)});
      out.remaining.push_back(p);
      continue;
    }
    for (auto& c : cones) c.clear();
    for (PointId q : found) cones[static_cast<std::size_t>(six.cone_of(inst.pos(p), inst.pos(q)))].push_back(q);
    bool head_placed = false;
    for (auto& c : cones) {
      if (c.empty()) continue;
      std::sort(c.begin(), c.end(), by_radius);
      if (!head_placed) {
        c.insert(c.begin(), p);
        head_placed = true;
      }
      out.chains.push_back(c);
    }
  }
  std::sort(out.remaining.begin(), out.remaining.end());
  out.index(n);
  return out;
}

bool is_chain(const TransmissionInstance& inst, std::span<const PointId> seq) {
  for (PointId p : seq) inst.check_id(p);
  for (std::size_t j = 0; j < seq.size(); ++j) {
    if (j > 0 && inst.radius(seq[j]) < inst.radius(seq[j - 1])) return false;
    for (std::size_t i = 0; i < j; ++i) {
      if (seq[i] == seq[j] || !inst.reaches_directly(seq[j], seq[i])) return false;
    }
  }
  return true;
}

std::size_t thickness_at(const TransmissionInstance& inst, std::span<const PointId> s, Vec2 x) {
  std::size_t count = 0;
  for (PointId p : s) count += in_disk(inst.pos(p), inst.radius_sq(p), x);
  return count;
}

}  // namespace txreach
