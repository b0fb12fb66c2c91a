#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "txreach/binary_io.hpp"
#include "txreach/geom.hpp"
#include "txreach/membership.hpp"
#include "txreach/septree.hpp"

namespace txreach {

struct CellKey {
  std::int32_t level = 0;
  std::int64_t ix = 0;
  std::int64_t iy = 0;

  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const noexcept;
};

/// Radius classes and origin-anchored square cells. A point of level i has
/// r_min * 2^i <= r < r_min * 2^(i+1) (the top class is closed), and its
/// cell at level i has diameter just under r_min * 2^i.
class HierarchicalGrid {
 public:
  HierarchicalGrid() = default;
  explicit HierarchicalGrid(const TransmissionInstance& inst);

  int levels() const { return top_ + 1; }
  int top_level() const { return top_; }
  double min_radius() const { return rmin_; }
  double side(int level) const { return sides_[static_cast<std::size_t>(level)]; }
  /// floor(log2(r / r_min)) clamped to the top level.
  int level_of_radius(double r) const;
  CellKey cell_at(int level, Vec2 x) const;
  Vec2 cell_center(const CellKey& k) const;

  std::size_t cell_count() const { return keys_.size(); }
  const CellKey& key(std::uint32_t cell) const { return keys_[cell]; }
  std::span<const PointId> members(std::uint32_t cell) const {
    return {members_.data() + member_off_[cell], member_off_[cell + 1] - member_off_[cell]};
  }
  std::uint32_t cell_of(PointId p) const { return point_cell_[p]; }
  /// Cell index for a key, or -1 for an empty cell.
  std::int64_t find(const CellKey& k) const;

  void save(BinaryWriter& w) const;
  /// Rebuilds the lookup from the stored point -> cell assignment.
  static HierarchicalGrid load(BinaryReader& r, const TransmissionInstance& inst);

 private:
  void index_cells(std::size_t n);

  int top_ = 0;
  double rmin_ = 1.0;
  std::vector<double> sides_;
  std::vector<CellKey> keys_;
  std::vector<std::uint32_t> point_cell_;
  std::vector<std::uint32_t> member_off_{0};
  std::vector<PointId> members_;
  std::unordered_map<CellKey, std::uint32_t, CellKeyHash> lookup_;
};

/// Nonempty cells and the directed pairs (a, b) with some G-edge from a
/// member of a to a member of b. Same-cell pairs are left implicit.
class CellGraph {
 public:
  static constexpr int kProbeRadius = 4;  // 9x9 block around p's cell

  CellGraph() = default;
  CellGraph(const TransmissionInstance& inst, const HierarchicalGrid& grid);

  std::size_t vertex_count() const { return off_.size() - 1; }
  std::size_t edge_count() const { return adj_.size(); }
  CsrView view() const { return {off_, adj_}; }
  std::span<const std::uint32_t> out(std::uint32_t c) const { return {adj_.data() + off_[c], off_[c + 1] - off_[c]}; }
  /// Associated disk: radius 3 * r_min * 2^level around the cell centre.
  Disk disk(std::uint32_t c) const { return disks_[c]; }
  std::span<const Disk> disks() const { return disks_; }

 private:
  std::vector<std::uint32_t> off_{0};
  std::vector<std::uint32_t> adj_;
  std::vector<Disk> disks_;
};

class GridOracle {
 public:
  GridOracle() = default;
  explicit GridOracle(TransmissionInstance inst);

  /// Throws std::domain_error on invalid ids.
  bool query(PointId p, PointId q) const;

  const TransmissionInstance& instance() const { return inst_; }
  const HierarchicalGrid& grid() const { return grid_; }
  const SeparationTree& tree() const { return tree_; }
  std::size_t cell_edge_count() const { return cell_edges_; }
  std::size_t memory_bytes() const;

  void save(BinaryWriter& w) const;
  static GridOracle load(BinaryReader& r, TransmissionInstance inst);
  /// Grid part and tree part separately (oracle files keep them in
  /// distinct sections).
  void save_grid(BinaryWriter& w) const;
  static GridOracle assemble(TransmissionInstance inst, BinaryReader& grid_part, SeparationTree tree);

 private:
  void check_tree() const;

  TransmissionInstance inst_;
  HierarchicalGrid grid_;
  SeparationTree tree_;
  std::size_t cell_edges_ = 0;
};

}  // namespace txreach
