#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "txreach/geom.hpp"

namespace txreach {

struct Disk {
  Vec2 center;
  double radius = 0.0;
};

struct PowerHit {
  std::uint32_t disk = 0;
  double power = 0.0;  // |x c|^2 - r^2; x is covered iff power <= 0

  friend bool operator==(const PowerHit&, const PowerHit&) = default;
};

/// Struct-of-arrays disk storage shared by forests of ordered trees.
struct DiskTable {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> radius_sq;

  DiskTable() = default;
  explicit DiskTable(std::span<const Disk> disks);
  static DiskTable from_instance(const TransmissionInstance& inst);

  std::size_t size() const { return x.size(); }
  bool covers(std::uint32_t id, Vec2 q) const { return in_disk({x[id], y[id]}, radius_sq[id], q); }
};

namespace detail {

struct Box {
  double lo_x, lo_y, hi_x, hi_y;
  double max_radius_sq;

  // Lower bound on |xq|^2 over centers q in the box. Rounding is monotone, so
  // the bound never exceeds sqdist(q, x) as computed by in_disk.
  double sqdist_lower(Vec2 p) const {
    double dx = 0.0;
    double dy = 0.0;
    if (p.x < lo_x) dx = lo_x - p.x; else if (p.x > hi_x) dx = p.x - hi_x;
    if (p.y < lo_y) dy = lo_y - p.y; else if (p.y > hi_y) dy = p.y - hi_y;
    return dx * dx + dy * dy;
  }
  bool may_cover(Vec2 p) const { return sqdist_lower(p) <= max_radius_sq; }
};

/// Kd-tree over disks answering minimum-power and live-containment queries;
/// supports lazy deletion through per-node live counters.
class DiskKdTree {
 public:
  struct Entry {
    double x, y, radius_sq;
    std::uint32_t id;
  };

  DiskKdTree() = default;
  explicit DiskKdTree(std::vector<Entry> entries);

  std::size_t size() const { return entries_.size(); }
  std::size_t live() const { return nodes_.empty() ? 0 : nodes_[0].live; }
  std::span<const Entry> entries() const { return entries_; }
  bool alive(std::uint32_t slot) const { return alive_[slot] != 0; }

  /// Disk minimising the power distance over all entries, ties by smaller id.
  std::optional<PowerHit> min_power(Vec2 x) const;
  std::optional<std::uint32_t> any_live_containing(Vec2 x) const;
  /// Appends the ids of all live disks containing x.
  void report_containing(Vec2 x, std::vector<std::uint32_t>& ids) const;
  void kill(std::uint32_t slot);

 private:
  struct Node {
    Box box;
    std::uint32_t begin, end;
    std::int32_t left = -1, right = -1, parent = -1;
    std::uint32_t live = 0;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end, std::int32_t parent);

  std::vector<Entry> entries_;
  std::vector<Node> nodes_;
  std::vector<std::int32_t> leaf_of_;
  std::vector<std::uint8_t> alive_;
};

}  // namespace detail

/// Minimum power-distance index over a static disk set.
class StaticMembershipIndex {
 public:
  StaticMembershipIndex() = default;
  /// Disk ids are positions in `disks`.
  explicit StaticMembershipIndex(std::span<const Disk> disks);
  /// Disk ids are taken from `ids` (parallel to `disks`).
  StaticMembershipIndex(std::span<const Disk> disks, std::span<const std::uint32_t> ids);

  std::size_t size() const { return tree_.size(); }
  std::optional<PowerHit> min_power_disk(Vec2 x) const { return tree_.min_power(x); }
  bool covers(Vec2 x) const {
    const auto hit = min_power_disk(x);
    return hit && hit->power <= 0.0;
  }
  /// Ids of all disks containing x, in no particular order.
  void report_containing(Vec2 x, std::vector<std::uint32_t>& ids) const { tree_.report_containing(x, ids); }

 private:
  detail::DiskKdTree tree_;
};

/// Linear-scan reference with the same query semantics.
class LinearMembershipIndex {
 public:
  LinearMembershipIndex() = default;
  explicit LinearMembershipIndex(std::span<const Disk> disks) : disks_(disks.begin(), disks.end()) {}

  std::size_t size() const { return disks_.size(); }
  std::optional<PowerHit> min_power_disk(Vec2 x) const;
  std::optional<std::size_t> first_containing(Vec2 x) const;

 private:
  std::vector<Disk> disks_;
};

/// A pool of balanced trees over disk sequences. Every node carries the
/// bounding box of its centers and the largest radius below it, which makes
/// the node's subtree its own containment index: a subtree covers x iff the
/// pruned search below it finds a disk. Leaves are buckets of `bucket` disks.
class OrderedDiskForest {
 public:
  using Box = detail::Box;

  struct Tree {
    std::uint32_t item_begin = 0;
    std::uint32_t size = 0;
    std::uint32_t box_begin = 0;
  };

  OrderedDiskForest(const DiskTable* table, std::uint32_t bucket);

  Tree add(std::span<const std::uint32_t> ids_in_order);
  void reserve(std::size_t items, std::size_t boxes);
  void shrink_to_fit();
  void rebind(const DiskTable* table) { table_ = table; }
  std::uint32_t bucket() const { return bucket_; }
  std::size_t box_count(std::uint32_t size) const {
    return size <= bucket_ ? 0 : 2 * std::size_t{bucket_count(size)} - 1;
  }

  std::uint32_t item(Tree t, std::uint32_t pos) const { return items_[t.item_begin + pos]; }
  std::span<const std::uint32_t> items(Tree t) const {
    return {items_.data() + t.item_begin, t.size};
  }

  bool contains_any(Tree t, Vec2 x) const;
  /// Smallest position whose disk covers x.
  std::optional<std::uint32_t> first_containing(Tree t, Vec2 x) const;
  void report(Tree t, Vec2 x, std::vector<std::uint32_t>& positions) const;

  /// Same queries restricted to the subtree covering positions [lo, hi);
  /// the range must be a node of the tree.
  std::optional<std::uint32_t> first_containing_in(Tree t, std::uint32_t lo, std::uint32_t hi,
                                                   Vec2 x) const;

  std::size_t memory_bytes() const;
  const std::vector<std::uint32_t>& raw_items() const { return items_; }
  const std::vector<Box>& raw_boxes() const { return boxes_; }
  /// Reinstates previously saved storage; trees handed out earlier stay valid.
  void restore(std::vector<std::uint32_t> items, std::vector<Box> boxes);

 private:
  struct Cursor {
    std::uint32_t node;  // box offset within the tree
    std::uint32_t blo, bhi;  // bucket range
  };

  Box build_boxes(Tree t, std::uint32_t node, std::uint32_t blo, std::uint32_t bhi);
  std::uint32_t bucket_count(std::uint32_t size) const { return (size + bucket_ - 1) / bucket_; }
  template <typename Visit>
  bool search(Tree t, Cursor start, Vec2 x, Visit&& visit) const;

  const DiskTable* table_;
  std::uint32_t bucket_;
  std::vector<std::uint32_t> items_;
  std::vector<Box> boxes_;
};

/// Balanced binary tree over a given disk sequence (leaves are single disks).
/// Positions are 0-based indexes into the input sequence.
class OrderedMembershipTree {
 public:
  OrderedMembershipTree();
  explicit OrderedMembershipTree(std::span<const Disk> ordered);
  OrderedMembershipTree(const OrderedMembershipTree&);
  OrderedMembershipTree& operator=(const OrderedMembershipTree&);
  OrderedMembershipTree(OrderedMembershipTree&&) noexcept;
  OrderedMembershipTree& operator=(OrderedMembershipTree&&) noexcept;
  ~OrderedMembershipTree();

  std::size_t size() const { return table_.size(); }
  std::size_t height() const;
  /// Child ranges of the node covering [lo, hi).
  static std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>
  children(std::size_t lo, std::size_t hi);

  std::optional<std::size_t> first_containing(Vec2 x) const;
  bool contains(Vec2 x) const;
  /// True iff some disk at positions [lo, hi) covers x; [lo, hi) must be a node.
  bool subtree_contains(std::size_t lo, std::size_t hi, Vec2 x) const;
  std::vector<std::size_t> report_containing(Vec2 x) const;
  const DiskTable& disks() const { return table_; }
  std::size_t memory_bytes() const { return 3 * table_.size() * sizeof(double) + forest_.memory_bytes(); }

 private:
  DiskTable table_;
  OrderedDiskForest forest_;
  OrderedDiskForest::Tree tree_;
};

/// Logarithmic-method containment index over a mutable disk set. query()
/// returns some live disk covering x, not necessarily the minimum-power one.
class DynamicMembershipIndex {
 public:
  void insert(std::uint32_t id, Disk disk);
  /// Throws std::domain_error when id is not live.
  void erase(std::uint32_t id);
  std::optional<std::uint32_t> query(Vec2 x) const;
  std::size_t size() const { return where_.size(); }
  bool contains_id(std::uint32_t id) const { return where_.count(id) != 0; }
  std::size_t block_count() const;

 private:
  struct Block {
    detail::DiskKdTree tree;
    std::size_t dead = 0;
  };

  void place(std::size_t level, std::vector<detail::DiskKdTree::Entry> entries);
  std::vector<detail::DiskKdTree::Entry> live_entries(const Block& b) const;

  std::vector<std::optional<Block>> levels_;
  std::unordered_map<std::uint32_t, std::pair<std::uint32_t, std::uint32_t>> where_;
};

}  // namespace txreach
