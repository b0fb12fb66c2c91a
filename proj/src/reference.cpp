#include "txreach/reference.hpp"

#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace txreach::reference {

Adjacency explicit_graph(const TransmissionInstance& inst) {
  const auto n = static_cast<PointId>(inst.size());
  Adjacency adj(n);
  for (PointId p = 0; p < n; ++p) {
    for (PointId q = 0; q < n; ++q) {
      if (p != q && edge_exists(inst, p, q)) adj[p].push_back(q);
    }
  }
  return adj;
}

std::vector<int> bfs_depths(const Adjacency& adj, PointId s) {
  if (s >= adj.size()) throw std::domain_error("bfs_depths: source out of range");
  std::vector<int> depth(adj.size(), -1);
  std::deque<PointId> queue{s};
  depth[s] = 0;
  while (!queue.empty()) {
    const PointId u = queue.front();
    queue.pop_front();
    for (PointId v : adj[u]) {
      if (depth[v] < 0) {
        depth[v] = depth[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return depth;
}

std::vector<std::uint8_t> reachable_row(const Adjacency& adj, PointId s) {
  const auto d = bfs_depths(adj, s);
  std::vector<std::uint8_t> row(adj.size());
  for (std::size_t v = 0; v < adj.size(); ++v) row[v] = d[v] >= 0;
  return row;
}

ClosureMatrix closure(const Adjacency& adj) {
  ClosureMatrix m(adj.size());
  for (PointId s = 0; s < adj.size(); ++s) {
    const auto row = reachable_row(adj, s);
    for (PointId v = 0; v < adj.size(); ++v) {
      if (row[v]) m.set(s, v);
    }
  }
  return m;
}

ClosureMatrix closure(const TransmissionInstance& inst, std::size_t limit) {
  if (inst.size() > limit) {
    throw std::length_error("reference closure refused for n=" + std::to_string(inst.size()) +
                            " (limit " + std::to_string(limit) + ")");
  }
  return closure(explicit_graph(inst));
}

bool brute_continuous(const TransmissionInstance& inst, const ClosureMatrix& c, PointId s, Vec2 t) {
  inst.check_id(s);
  for (PointId p = 0; p < inst.size(); ++p) {
    if (c.reaches(s, p) && in_disk(inst.pos(p), inst.radius_sq(p), t)) return true;
  }
  return false;
}

bool brute_continuous(const TransmissionInstance& inst, std::span<const std::uint8_t> row_of_s,
                      Vec2 t) {
  for (PointId p = 0; p < inst.size(); ++p) {
    if (row_of_s[p] && in_disk(inst.pos(p), inst.radius_sq(p), t)) return true;
  }
  return false;
}

double brute_stretch(const TransmissionInstance& inst, std::span<const Edge> subgraph) {
  const std::size_t n = inst.size();
  std::vector<std::vector<std::pair<PointId, double>>> adj(n);
  for (const Edge& e : subgraph) {
    adj[e.src].push_back({e.dst, std::sqrt(sqdist(inst.pos(e.src), inst.pos(e.dst)))});
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  double worst = 1.0;
  std::vector<double> dist(n);
  using Item = std::pair<double, PointId>;
  for (PointId u = 0; u < n; ++u) {
    bool has_edge = false;
    for (PointId p = 0; p < n && !has_edge; ++p) has_edge = p != u && edge_exists(inst, u, p);
    if (!has_edge) continue;
    std::fill(dist.begin(), dist.end(), inf);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[u] = 0.0;
    heap.push({0.0, u});
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[v]) continue;
      for (const auto& [w, len] : adj[v]) {
        if (d + len < dist[w]) {
          dist[w] = d + len;
          heap.push({dist[w], w});
        }
      }
    }
    for (PointId p = 0; p < n; ++p) {
      if (p == u || !edge_exists(inst, u, p)) continue;
      const double direct = std::sqrt(sqdist(inst.pos(u), inst.pos(p)));
      worst = std::max(worst, dist[p] / direct);
    }
  }
  return worst;
}

}  // namespace txreach::reference
