#include "txreach/membership.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace txreach {

namespace {

constexpr std::uint32_t kKdLeaf = 8;

detail::Box empty_box() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {inf, inf, -inf, -inf, -inf};
}

void extend(detail::Box& b, double x, double y, double r2) {
  b.lo_x = std::min(b.lo_x, x);
  b.lo_y = std::min(b.lo_y, y);
  b.hi_x = std::max(b.hi_x, x);
  b.hi_y = std::max(b.hi_y, y);
  b.max_radius_sq = std::max(b.max_radius_sq, r2);
}

void merge(detail::Box& b, const detail::Box& o) {
  b.lo_x = std::min(b.lo_x, o.lo_x);
  b.lo_y = std::min(b.lo_y, o.lo_y);
  b.hi_x = std::max(b.hi_x, o.hi_x);
  b.hi_y = std::max(b.hi_y, o.hi_y);
  b.max_radius_sq = std::max(b.max_radius_sq, o.max_radius_sq);
}

bool better(const PowerHit& a, const PowerHit& b) {
  return a.power < b.power || (a.power == b.power && a.disk < b.disk);
}

}  // namespace

DiskTable::DiskTable(std::span<const Disk> disks) {
  x.reserve(disks.size());
  y.reserve(disks.size());
  radius_sq.reserve(disks.size());
  for (const Disk& d : disks) {
    x.push_back(d.center.x);
    y.push_back(d.center.y);
    radius_sq.push_back(d.radius * d.radius);
  }
}

DiskTable DiskTable::from_instance(const TransmissionInstance& inst) {
  DiskTable t;
  t.x.reserve(inst.size());
  t.y.reserve(inst.size());
  t.radius_sq.reserve(inst.size());
  for (PointId i = 0; i < inst.size(); ++i) {
    t.x.push_back(inst.point(i).x);
    t.y.push_back(inst.point(i).y);
    t.radius_sq.push_back(inst.radius_sq(i));
  }
  return t;
}

// ---------------------------------------------------------------------------
// DiskKdTree

namespace detail {

DiskKdTree::DiskKdTree(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) return;
  nodes_.reserve(2 * (entries_.size() / kKdLeaf + 1));
  leaf_of_.assign(entries_.size(), -1);
  alive_.assign(entries_.size(), 1);
  build(0, static_cast<std::uint32_t>(entries_.size()), -1);
}

std::int32_t DiskKdTree::build(std::uint32_t begin, std::uint32_t end, std::int32_t parent) {
  const auto idx = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back({});
  Box box = empty_box();
  for (std::uint32_t i = begin; i < end; ++i) {
    extend(box, entries_[i].x, entries_[i].y, entries_[i].radius_sq);
  }
  {
    Node& n = nodes_[static_cast<std::size_t>(idx)];
    n.box = box;
    n.begin = begin;
    n.end = end;
    n.parent = parent;
    n.live = end - begin;
  }
  if (end - begin <= kKdLeaf) {
    for (std::uint32_t i = begin; i < end; ++i) leaf_of_[i] = idx;
    return idx;
  }
  const bool split_x = (box.hi_x - box.lo_x) >= (box.hi_y - box.lo_y);
  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(entries_.begin() + begin, entries_.begin() + mid, entries_.begin() + end,
                   [split_x](const Entry& a, const Entry& b) {
                     const double ka = split_x ? a.x : a.y;
                     const double kb = split_x ? b.x : b.y;
                     return ka < kb || (ka == kb && a.id < b.id);
                   });
  const std::int32_t left = build(begin, mid, idx);
  const std::int32_t right = build(mid, end, idx);
  nodes_[static_cast<std::size_t>(idx)].left = left;
  nodes_[static_cast<std::size_t>(idx)].right = right;
  return idx;
}

std::optional<PowerHit> DiskKdTree::min_power(Vec2 x) const {
  if (nodes_.empty()) return std::nullopt;
  PowerHit best{std::numeric_limits<std::uint32_t>::max(),
                std::numeric_limits<double>::infinity()};
  // Descend toward the nearer child first; prune only on a strictly larger
  // bound so equal-power disks with smaller ids are still visited.
  struct Item {
    std::int32_t node;
    double bound;
  };
  Item stack[128];
  int top = 0;
  auto bound_of = [&](std::int32_t n) {
    const Box& b = nodes_[static_cast<std::size_t>(n)].box;
    return b.sqdist_lower(x) - b.max_radius_sq;
  };
  stack[top++] = {0, bound_of(0)};
  while (top > 0) {
    const Item it = stack[--top];
    if (it.bound > best.power) continue;
    const Node& n = nodes_[static_cast<std::size_t>(it.node)];
    if (n.left < 0) {
      for (std::uint32_t i = n.begin; i < n.end; ++i) {
        const Entry& e = entries_[i];
        const PowerHit h{e.id, sqdist({e.x, e.y}, x) - e.radius_sq};
        if (better(h, best)) best = h;
      }
      continue;
    }
    const double bl = bound_of(n.left);
    const double br = bound_of(n.right);
    if (bl <= br) {
      stack[top++] = {n.right, br};
      stack[top++] = {n.left, bl};
    } else {
      stack[top++] = {n.left, bl};
      stack[top++] = {n.right, br};
    }
  }
  return best;
}

std::optional<std::uint32_t> DiskKdTree::any_live_containing(Vec2 x) const {
  if (nodes_.empty() || nodes_[0].live == 0) return std::nullopt;
  std::int32_t stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& n = nodes_[static_cast<std::size_t>(stack[--top])];
    if (n.live == 0 || !n.box.may_cover(x)) continue;
    if (n.left < 0) {
      for (std::uint32_t i = n.begin; i < n.end; ++i) {
        const Entry& e = entries_[i];
        if (alive_[i] && in_disk({e.x, e.y}, e.radius_sq, x)) return i;
      }
      continue;
    }
    stack[top++] = n.right;
    stack[top++] = n.left;
  }
  return std::nullopt;
}

void DiskKdTree::report_containing(Vec2 x, std::vector<std::uint32_t>& ids) const {
  if (nodes_.empty() || nodes_[0].live == 0) return;
  std::int32_t stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& n = nodes_[static_cast<std::size_t>(stack[--top])];
    if (n.live == 0 || !n.box.may_cover(x)) continue;
    if (n.left < 0) {
      for (std::uint32_t i = n.begin; i < n.end; ++i) {
        const Entry& e = entries_[i];
        if (alive_[i] && in_disk({e.x, e.y}, e.radius_sq, x)) ids.push_back(e.id);
      }
      continue;
    }
    stack[top++] = n.right;
    stack[top++] = n.left;
  }
}

void DiskKdTree::kill(std::uint32_t slot) {
  if (!alive_[slot]) return;
  alive_[slot] = 0;
  for (std::int32_t n = leaf_of_[slot]; n >= 0; n = nodes_[static_cast<std::size_t>(n)].parent) {
    --nodes_[static_cast<std::size_t>(n)].live;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Static / linear indexes

StaticMembershipIndex::StaticMembershipIndex(std::span<const Disk> disks) {
  std::vector<detail::DiskKdTree::Entry> entries;
  entries.reserve(disks.size());
  for (std::size_t i = 0; i < disks.size(); ++i) {
    const Disk& d = disks[i];
    entries.push_back({d.center.x, d.center.y, d.radius * d.radius, static_cast<std::uint32_t>(i)});
  }
  tree_ = detail::DiskKdTree(std::move(entries));
}

StaticMembershipIndex::StaticMembershipIndex(std::span<const Disk> disks,
                                             std::span<const std::uint32_t> ids) {
  if (ids.size() != disks.size()) {
    throw std::invalid_argument("StaticMembershipIndex: ids and disks differ in length");
  }
  std::vector<detail::DiskKdTree::Entry> entries;
  entries.reserve(disks.size());
  for (std::size_t i = 0; i < disks.size(); ++i) {
    const Disk& d = disks[i];
    entries.push_back({d.center.x, d.center.y, d.radius * d.radius, ids[i]});
  }
  tree_ = detail::DiskKdTree(std::move(entries));
}

std::optional<PowerHit> LinearMembershipIndex::min_power_disk(Vec2 x) const {
  std::optional<PowerHit> best;
  for (std::size_t i = 0; i < disks_.size(); ++i) {
    const Disk& d = disks_[i];
    const PowerHit h{static_cast<std::uint32_t>(i), sqdist(d.center, x) - d.radius * d.radius};
    if (!best || better(h, *best)) best = h;
  }
  return best;
}

std::optional<std::size_t> LinearMembershipIndex::first_containing(Vec2 x) const {
  for (std::size_t i = 0; i < disks_.size(); ++i) {
    if (in_disk(disks_[i].center, disks_[i].radius * disks_[i].radius, x)) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// OrderedDiskForest

OrderedDiskForest::OrderedDiskForest(const DiskTable* table, std::uint32_t bucket)
    : table_(table), bucket_(bucket) {
  if (bucket == 0) throw std::invalid_argument("OrderedDiskForest: bucket must be positive");
}

void OrderedDiskForest::reserve(std::size_t items, std::size_t boxes) {
  items_.reserve(items);
  boxes_.reserve(boxes);
}

void OrderedDiskForest::shrink_to_fit() {
  items_.shrink_to_fit();
  boxes_.shrink_to_fit();
}

void OrderedDiskForest::restore(std::vector<std::uint32_t> items, std::vector<Box> boxes) {
  items_ = std::move(items);
  boxes_ = std::move(boxes);
}

OrderedDiskForest::Tree OrderedDiskForest::add(std::span<const std::uint32_t> ids_in_order) {
  Tree t;
  t.item_begin = static_cast<std::uint32_t>(items_.size());
  t.size = static_cast<std::uint32_t>(ids_in_order.size());
  t.box_begin = static_cast<std::uint32_t>(boxes_.size());
  items_.insert(items_.end(), ids_in_order.begin(), ids_in_order.end());
  if (items_.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("OrderedDiskForest: item pool exceeds 32-bit addressing");
  }
  if (t.size > bucket_) {
    boxes_.resize(boxes_.size() + box_count(t.size));
    build_boxes(t, 0, 0, bucket_count(t.size));
  }
  return t;
}

detail::Box OrderedDiskForest::build_boxes(Tree t, std::uint32_t node, std::uint32_t blo,
                                   std::uint32_t bhi) {
  Box box = empty_box();
  if (bhi - blo == 1) {
    const std::uint32_t lo = blo * bucket_;
    const std::uint32_t hi = std::min(t.size, lo + bucket_);
    for (std::uint32_t p = lo; p < hi; ++p) {
      const std::uint32_t id = items_[t.item_begin + p];
      extend(box, table_->x[id], table_->y[id], table_->radius_sq[id]);
    }
  } else {
    const std::uint32_t mid = blo + (bhi - blo) / 2;
    box = build_boxes(t, node + 1, blo, mid);
    merge(box, build_boxes(t, node + 2 * (mid - blo), mid, bhi));
  }
  boxes_[t.box_begin + node] = box;
  return box;
}

template <typename Visit>
bool OrderedDiskForest::search(Tree t, Cursor start, Vec2 x, Visit&& visit) const {
  if (t.size == 0) return false;
  auto scan = [&](std::uint32_t lo, std::uint32_t hi) {
    for (std::uint32_t p = lo; p < hi; ++p) {
      if (table_->covers(items_[t.item_begin + p], x) && visit(p)) return true;
    }
    return false;
  };
  if (t.size <= bucket_) return scan(0, t.size);
  Cursor stack[80];
  int top = 0;
  stack[top++] = start;
  const Box* boxes = boxes_.data() + t.box_begin;
  while (top > 0) {
    const Cursor c = stack[--top];
    if (!boxes[c.node].may_cover(x)) continue;
    if (c.bhi - c.blo == 1) {
      const std::uint32_t lo = c.blo * bucket_;
      if (scan(lo, std::min(t.size, lo + bucket_))) return true;
      continue;
    }
    const std::uint32_t mid = c.blo + (c.bhi - c.blo) / 2;
    stack[top++] = {c.node + 2 * (mid - c.blo), mid, c.bhi};
    stack[top++] = {c.node + 1, c.blo, mid};
  }
  return false;
}

bool OrderedDiskForest::contains_any(Tree t, Vec2 x) const {
  return search(t, {0, 0, bucket_count(t.size)}, x, [](std::uint32_t) { return true; });
}

std::optional<std::uint32_t> OrderedDiskForest::first_containing(Tree t, Vec2 x) const {
  std::optional<std::uint32_t> found;
  search(t, {0, 0, bucket_count(t.size)}, x, [&](std::uint32_t p) {
    found = p;
    return true;
  });
  return found;
}

void OrderedDiskForest::report(Tree t, Vec2 x, std::vector<std::uint32_t>& positions) const {
  search(t, {0, 0, bucket_count(t.size)}, x, [&](std::uint32_t p) {
    positions.push_back(p);
    return false;
  });
}

std::optional<std::uint32_t> OrderedDiskForest::first_containing_in(Tree t, std::uint32_t lo,
                                                                    std::uint32_t hi,
                                                                    Vec2 x) const {
  if (lo >= hi || hi > t.size) return std::nullopt;
  std::optional<std::uint32_t> found;
  auto take = [&](std::uint32_t p) {
    if (p < lo || p >= hi) return false;
    found = p;
    return true;
  };
  if (t.size <= bucket_) {
    search(t, {0, 0, 1}, x, take);
    return found;
  }
  const std::uint32_t blo = lo / bucket_;
  const std::uint32_t bhi = (hi + bucket_ - 1) / bucket_;
  Cursor c{0, 0, bucket_count(t.size)};
  while (c.blo != blo || c.bhi != bhi) {
    if (c.bhi - c.blo == 1) throw std::invalid_argument("first_containing_in: range is not a node");
    const std::uint32_t mid = c.blo + (c.bhi - c.blo) / 2;
    if (bhi <= mid) {
      c = {c.node + 1, c.blo, mid};
    } else if (blo >= mid) {
      c = {c.node + 2 * (mid - c.blo), mid, c.bhi};
    } else {
      throw std::invalid_argument("first_containing_in: range is not a node");
    }
  }
  search(t, c, x, take);
  return found;
}

std::size_t OrderedDiskForest::memory_bytes() const {
  return items_.capacity() * sizeof(std::uint32_t) + boxes_.capacity() * sizeof(Box);
}

// ---------------------------------------------------------------------------
// OrderedMembershipTree

namespace {

std::vector<std::uint32_t> iota_ids(std::size_t n) {
  std::vector<std::uint32_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0U);
  return ids;
}

}  // namespace

OrderedMembershipTree::OrderedMembershipTree() : forest_(&table_, 1) {}

OrderedMembershipTree::OrderedMembershipTree(std::span<const Disk> ordered)
    : table_(ordered), forest_(&table_, 1) {
  const auto ids = iota_ids(table_.size());
  tree_ = forest_.add(ids);
}

OrderedMembershipTree::OrderedMembershipTree(const OrderedMembershipTree& o)
    : table_(o.table_), forest_(o.forest_), tree_(o.tree_) {
  forest_.rebind(&table_);
}

OrderedMembershipTree& OrderedMembershipTree::operator=(const OrderedMembershipTree& o) {
  if (this != &o) {
    table_ = o.table_;
    forest_ = o.forest_;
    tree_ = o.tree_;
    forest_.rebind(&table_);
  }
  return *this;
}

OrderedMembershipTree::OrderedMembershipTree(OrderedMembershipTree&& o) noexcept
    : table_(std::move(o.table_)), forest_(std::move(o.forest_)), tree_(o.tree_) {
  forest_.rebind(&table_);
}

OrderedMembershipTree& OrderedMembershipTree::operator=(OrderedMembershipTree&& o) noexcept {
  table_ = std::move(o.table_);
  forest_ = std::move(o.forest_);
  tree_ = o.tree_;
  forest_.rebind(&table_);
  return *this;
}

OrderedMembershipTree::~OrderedMembershipTree() = default;

std::size_t OrderedMembershipTree::height() const {
  std::size_t h = 0;
  std::size_t lo = 0;
  std::size_t hi = size();
  if (hi == 0) return 0;
  // The left child is never larger than the right one, so follow the right.
  while (true) {
    ++h;
    if (hi - lo == 1) return h;
    lo = children(lo, hi).second.first;
  }
}

std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>
OrderedMembershipTree::children(std::size_t lo, std::size_t hi) {
  const std::size_t mid = lo + (hi - lo) / 2;
  return {{lo, mid}, {mid, hi}};
}

std::optional<std::size_t> OrderedMembershipTree::first_containing(Vec2 x) const {
  const auto p = forest_.first_containing(tree_, x);
  if (!p) return std::nullopt;
  return *p;
}

bool OrderedMembershipTree::contains(Vec2 x) const { return forest_.contains_any(tree_, x); }

bool OrderedMembershipTree::subtree_contains(std::size_t lo, std::size_t hi, Vec2 x) const {
  return forest_
      .first_containing_in(tree_, static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi), x)
      .has_value();
}

std::vector<std::size_t> OrderedMembershipTree::report_containing(Vec2 x) const {
  std::vector<std::uint32_t> pos;
  forest_.report(tree_, x, pos);
  return {pos.begin(), pos.end()};
}

// ---------------------------------------------------------------------------
// DynamicMembershipIndex

std::vector<detail::DiskKdTree::Entry> DynamicMembershipIndex::live_entries(const Block& b) const {
  std::vector<detail::DiskKdTree::Entry> out;
  out.reserve(b.tree.live());
  const auto es = b.tree.entries();
  for (std::uint32_t s = 0; s < es.size(); ++s) {
    if (b.tree.alive(s)) out.push_back(es[s]);
  }
  return out;
}

void DynamicMembershipIndex::place(std::size_t level,
                                   std::vector<detail::DiskKdTree::Entry> entries) {
  if (levels_.size() <= level) levels_.resize(level + 1);
  if (entries.empty()) {
    levels_[level].reset();
    return;
  }
  Block b{detail::DiskKdTree(std::move(entries)), 0};
  const auto es = b.tree.entries();
  for (std::uint32_t s = 0; s < es.size(); ++s) {
    where_[es[s].id] = {static_cast<std::uint32_t>(level), s};
  }
  levels_[level] = std::move(b);
}

void DynamicMembershipIndex::insert(std::uint32_t id, Disk disk) {
  if (where_.count(id)) {
    throw std::domain_error("dyn_insert: disk id " + std::to_string(id) + " is already live");
  }
  std::vector<detail::DiskKdTree::Entry> carry{
      {disk.center.x, disk.center.y, disk.radius * disk.radius, id}};
  std::size_t level = 0;
  while (level < levels_.size() && levels_[level]) {
    auto more = live_entries(*levels_[level]);
    carry.insert(carry.end(), more.begin(), more.end());
    levels_[level].reset();
    ++level;
  }
  place(level, std::move(carry));
}

void DynamicMembershipIndex::erase(std::uint32_t id) {
  const auto it = where_.find(id);
  if (it == where_.end()) {
    throw std::domain_error("dyn_delete: disk id " + std::to_string(id) + " is not live");
  }
  const auto [level, slot] = it->second;
  where_.erase(it);
  Block& b = *levels_[level];
  b.tree.kill(slot);
  ++b.dead;
  if (2 * b.dead >= b.tree.size()) place(level, live_entries(b));
}

std::optional<std::uint32_t> DynamicMembershipIndex::query(Vec2 x) const {
  for (const auto& b : levels_) {
    if (!b) continue;
    if (const auto slot = b->tree.any_live_containing(x)) return b->tree.entries()[*slot].id;
  }
  return std::nullopt;
}

std::size_t DynamicMembershipIndex::block_count() const {
  return static_cast<std::size_t>(
      std::count_if(levels_.begin(), levels_.end(), [](const auto& b) { return b.has_value(); }));
}

}  // namespace txreach
