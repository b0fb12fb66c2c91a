#include "txreach/traversal.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "txreach/membership.hpp"

namespace txreach {

BfsResult bfs_levels(const SpannerGraph& h, const TransmissionInstance& inst, PointId s) {
  inst.check_id(s);
  if (h.vertex_count() != inst.size()) {
    throw std::invalid_argument("bfs_levels: spanner and instance sizes differ");
  }
  const std::size_t n = inst.size();
  BfsResult res;
  res.source = s;
  res.depth.assign(n, -1);
  res.parent.assign(n, BfsResult::kNoParent);
  res.depth[s] = 0;

  // tested[v] == level + 1 once v was found outside every disk of that level.
  std::vector<std::int32_t> tested(n, 0);
  std::vector<PointId> level{s};
  std::vector<PointId> next;
  std::vector<PointId> queue;
  std::vector<Disk> disks;
  for (std::int32_t i = 0; !level.empty(); ++i) {
    disks.clear();
    for (PointId u : level) disks.push_back({inst.pos(u), inst.radius(u)});
    const StaticMembershipIndex index(disks, level);
    next.clear();
    queue.assign(level.begin(), level.end());
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (PointId w : h.out(queue[head])) {
        if (res.depth[w] >= 0 || tested[w] == i + 1) continue;
        const auto hit = index.min_power_disk(inst.pos(w));
        if (hit && hit->power <= 0.0) {
          res.depth[w] = i + 1;
          res.parent[w] = hit->disk;
          next.push_back(w);
          queue.push_back(w);
        } else {
          tested[w] = i + 1;
        }
      }
    }
    level.swap(next);
  }
  return res;
}

std::vector<PointId> reachable_set(const SpannerGraph& h, PointId s) {
  if (s >= h.vertex_count()) {
    throw std::domain_error("reachable_set: source " + std::to_string(s) + " out of range");
  }
  std::vector<std::uint8_t> seen(h.vertex_count(), 0);
  std::vector<PointId> order{s};
  seen[s] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (PointId w : h.out(order[head])) {
      if (!seen[w]) {
        seen[w] = 1;
        order.push_back(w);
      }
    }
  }
  std::sort(order.begin(), order.end());
  return order;
}

CsrView forward_view(const SpannerGraph& h) { return {h.out_offsets(), h.out_targets()}; }
CsrView reverse_view(const SpannerGraph& h) { return {h.in_offsets(), h.in_sources()}; }

BitMatrix multi_source_reach(const CsrView& g, std::span<const std::uint32_t> sources) {
  const std::size_t n = g.vertex_count();
  BitMatrix out(n, sources.size());
  std::vector<std::uint64_t> bits(n);
  std::vector<std::uint8_t> queued(n, 0);
  std::vector<std::uint32_t> work;
  for (std::size_t base = 0; base < sources.size(); base += 64) {
    const std::size_t chunk = std::min<std::size_t>(64, sources.size() - base);
    std::fill(bits.begin(), bits.end(), 0);
    work.clear();
    for (std::size_t i = 0; i < chunk; ++i) {
      const std::uint32_t s = sources[base + i];
      bits[s] |= std::uint64_t{1} << i;
      if (!queued[s]) {
        queued[s] = 1;
        work.push_back(s);
      }
    }
    // FIFO over a growing buffer; a vertex re-enters only when it gains bits.
    for (std::size_t head = 0; head < work.size(); ++head) {
      const std::uint32_t v = work[head];
      queued[v] = 0;
      const std::uint64_t b = bits[v];
      for (std::uint32_t w : g.neighbours(v)) {
        if (b & ~bits[w]) {
          bits[w] |= b;
          if (!queued[w]) {
            queued[w] = 1;
            work.push_back(w);
          }
        }
      }
    }
    const std::size_t word = base / 64;
    for (std::size_t v = 0; v < n; ++v) out.row(v)[word] = bits[v];
  }
  return out;
}

}  // namespace txreach
