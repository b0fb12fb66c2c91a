#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "txreach/geom.hpp"

/// Brute-force oracles. Nothing here uses the indexed structures; the only
/// shared code is the edge predicate.
namespace txreach::reference {

using Adjacency = std::vector<std::vector<PointId>>;

/// Out-adjacency of G from all n(n-1) predicate evaluations.
Adjacency explicit_graph(const TransmissionInstance& inst);

/// Hop distances from s (-1 when unreachable).
std::vector<int> bfs_depths(const Adjacency& adj, PointId s);

/// Reachability row of s over an explicit adjacency.
std::vector<std::uint8_t> reachable_row(const Adjacency& adj, PointId s);

inline constexpr std::size_t kDefaultClosureLimit = 3000;

class ClosureMatrix {
 public:
  ClosureMatrix() = default;
  explicit ClosureMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_) {}

  std::size_t size() const { return n_; }
  bool reaches(PointId p, PointId q) const { return (bits_[p * words_ + q / 64] >> (q % 64)) & 1U; }
  void set(PointId p, PointId q) { bits_[p * words_ + q / 64] |= std::uint64_t{1} << (q % 64); }

  friend bool operator==(const ClosureMatrix&, const ClosureMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// BFS from every vertex. Throws std::length_error above `limit` points.
ClosureMatrix closure(const TransmissionInstance& inst, std::size_t limit = kDefaultClosureLimit);
ClosureMatrix closure(const Adjacency& adj);

/// Some p reachable from s (s included) whose disk contains t.
bool brute_continuous(const TransmissionInstance& inst, const ClosureMatrix& c, PointId s, Vec2 t);
bool brute_continuous(const TransmissionInstance& inst, std::span<const std::uint8_t> row_of_s,
                      Vec2 t);

/// Max over G-edges u->p of the Euclidean shortest-path length from u to p
/// in the given subgraph, divided by |up|. Infinity if some edge is not
/// spanned; 1 when G has no edges.
double brute_stretch(const TransmissionInstance& inst, std::span<const Edge> subgraph);

}  // namespace txreach::reference
