#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "txreach/geom.hpp"
#include "txreach/membership.hpp"

namespace txreach {

/// Directed subgraph of G with forward and reverse CSR adjacency. Edges are
/// kept sorted by (src, dst) without duplicates.
class SpannerGraph {
 public:
  SpannerGraph() = default;
  SpannerGraph(std::size_t n, int k, std::vector<Edge> edges);

  int k() const { return k_; }
  /// tan(pi/4 + 2pi/k); 0 when k == 0 (a plain edge set).
  double stretch() const;
  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const PointId> out(PointId v) const {
    return {out_adj_.data() + out_off_[v], out_off_[v + 1] - out_off_[v]};
  }
  std::span<const PointId> in(PointId v) const {
    return {in_adj_.data() + in_off_[v], in_off_[v + 1] - in_off_[v]};
  }

  std::span<const std::uint32_t> out_offsets() const { return out_off_; }
  std::span<const PointId> out_targets() const { return out_adj_; }
  std::span<const std::uint32_t> in_offsets() const { return in_off_; }
  std::span<const PointId> in_sources() const { return in_adj_; }

  /// Debug dump: one "src dst" line per edge, lexicographic.
  std::string dump() const;
  std::size_t memory_bytes() const;

  friend bool operator==(const SpannerGraph& a, const SpannerGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  int k_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> out_off_{0};
  std::vector<PointId> out_adj_;
  std::vector<std::uint32_t> in_off_{0};
  std::vector<PointId> in_adj_;
};

/// Reference builder: for each p and cone, scan every q with q -> p.
SpannerGraph build_spanner_naive(const TransmissionInstance& inst, int k);

/// A cell of the query grid: first-level canonical node at `row`, the
/// second-level node `node` lying in canonical column `col`.
struct GridCell {
  int row = 0;
  int col = 0;
  std::uint32_t node = 0;

  int diagonal() const { return row - col; }
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

/// Three-level range tree for one cone. Coordinates are u = offset(c, q)
/// and w = -offset(c+1, q); F_p is {u >= u_p, w > w_p}. The first level is
/// a perfect tree over (u, id) ranks, second-level trees are contracted
/// copies of a perfect tree over (w, id) ranks, and every second-level node
/// keeps its points in (key, id) order inside an OrderedDiskForest.
class GridLikeRangeTree {
 public:
  GridLikeRangeTree(const TransmissionInstance& inst, const ConeFamily& cones, int cone);
  GridLikeRangeTree(const GridLikeRangeTree&) = delete;
  GridLikeRangeTree& operator=(const GridLikeRangeTree&) = delete;

  int cone() const { return cone_; }

  /// Cells whose union is exactly P ∩ F_p.
  std::vector<GridCell> candidate_cells(PointId p) const;
  /// Points of a cell in (key, id) order.
  std::span<const std::uint32_t> cell_points(const GridCell& cell) const;
  bool is_useful(const GridCell& cell, PointId p) const;
  /// Member q of the cell with q -> p minimising (key, id).
  std::optional<PointId> nn_in_cell(const GridCell& cell, PointId p) const;
  /// nn_F(p) over the whole cone.
  std::optional<PointId> nearest(PointId p) const;

  /// Deepest second-level tree (number of nodes on a root-leaf path).
  std::size_t max_second_level_depth() const;
  std::size_t third_level_points() const;
  std::size_t memory_bytes() const;

 private:
  struct SecondNode {
    std::uint32_t lo;  // first rank of the bottom node of the contracted chain
    std::uint8_t level;
    std::int32_t left = -1;
    std::int32_t right = -1;
    OrderedDiskForest::Tree tree;
  };

  std::int32_t build_second(std::span<const std::uint32_t> ranks, std::uint32_t* scratch,
                            std::uint32_t* tmp);
  bool key_less(std::uint32_t a, std::uint32_t b) const {
    return key_[a] < key_[b] || (key_[a] == key_[b] && a < b);
  }
  int column_of(std::uint32_t lo, std::uint32_t b0) const;

  const TransmissionInstance* inst_;
  int cone_;
  std::uint32_t n_ = 0;
  int h1_ = 0;
  int h2_ = 0;
  std::vector<double> u_sorted_;  // u values in rank order
  std::vector<double> w_sorted_;
  std::vector<double> u_;
  std::vector<double> w_;
  std::vector<double> key_;
  std::vector<std::uint32_t> by_w_;  // w-rank -> point
  std::vector<std::int32_t> root_of_;  // first-level heap index -> second-level root
  std::vector<SecondNode> nodes_;
  DiskTable disks_;
  OrderedDiskForest forest_;
};

/// Useful cells minimal in row along their diagonal.
std::vector<GridCell> extreme_cells(std::span<const GridCell> useful);

/// Theta-graph via per-cone range trees; edge set equals the naive builder.
SpannerGraph build_spanner(const TransmissionInstance& inst, int k);

/// Same edge set as the naive builder, found by listing each point's
/// in-neighbours through a disk kd-tree. Cost grows with |E(G)|, so this
/// suits thin instances.
SpannerGraph build_spanner_local(const TransmissionInstance& inst, int k);

}  // namespace txreach
