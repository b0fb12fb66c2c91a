#include "txreach/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace txreach {

std::size_t CellKeyHash::operator()(const CellKey& k) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(k.level + 1);
  h ^= static_cast<std::uint64_t>(k.ix) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::uint64_t>(k.iy) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// HierarchicalGrid

namespace {

// Sides shrink by 2^-40 so the computed diameter stays strictly below the
// class radius despite rounding.
constexpr double kSideShrink = 1.0 - 0x1p-40;

}  // namespace

HierarchicalGrid::HierarchicalGrid(const TransmissionInstance& inst) {
  const std::size_t n = inst.size();
  if (n > 0) {
    rmin_ = inst.min_radius();
    const double rmax = inst.max_radius();
    while (std::ldexp(rmin_, top_) < rmax) ++top_;
  }
  for (int i = 0; i <= top_; ++i) sides_.push_back(std::ldexp(rmin_, i) / std::sqrt(2.0) * kSideShrink);

  point_cell_.resize(n);
  for (PointId p = 0; p < n; ++p) {
    const CellKey k = cell_at(level_of_radius(inst.radius(p)), inst.pos(p));
    const auto [it, fresh] = lookup_.try_emplace(k, static_cast<std::uint32_t>(keys_.size()));
    if (fresh) keys_.push_back(k);
    point_cell_[p] = it->second;
  }
  index_cells(n);
}

void HierarchicalGrid::index_cells(std::size_t n) {
  member_off_.assign(keys_.size() + 1, 0);
  for (std::uint32_t c : point_cell_) ++member_off_[c + 1];
  for (std::size_t c = 0; c < keys_.size(); ++c) member_off_[c + 1] += member_off_[c];
  members_.resize(n);
  std::vector<std::uint32_t> fill(member_off_.begin(), member_off_.end() - 1);
  for (PointId p = 0; p < n; ++p) members_[fill[point_cell_[p]]++] = p;
  lookup_.clear();
  lookup_.reserve(keys_.size());
  for (std::uint32_t c = 0; c < keys_.size(); ++c) lookup_.emplace(keys_[c], c);
}

int HierarchicalGrid::level_of_radius(double r) const {
  int i = 0;
  while (i < top_ && std::ldexp(rmin_, i + 1) <= r) ++i;
  return i;
}

CellKey HierarchicalGrid::cell_at(int level, Vec2 x) const {
  const double s = side(level);
  return {level, static_cast<std::int64_t>(std::floor(x.x / s)), static_cast<std::int64_t>(std::floor(x.y / s))};
}

Vec2 HierarchicalGrid::cell_center(const CellKey& k) const {
  const double s = side(k.level);
  return {(static_cast<double>(k.ix) + 0.5) * s, (static_cast<double>(k.iy) + 0.5) * s};
}

std::int64_t HierarchicalGrid::find(const CellKey& k) const {
  const auto it = lookup_.find(k);
  return it == lookup_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

void HierarchicalGrid::save(BinaryWriter& w) const {
  w.put<std::int32_t>(top_);
  w.put(rmin_);
  w.put<std::uint64_t>(keys_.size());
  for (const CellKey& k : keys_) {
    w.put(k.level);
    w.put(k.ix);
    w.put(k.iy);
  }
  w.put_vector(point_cell_);
}

HierarchicalGrid HierarchicalGrid::load(BinaryReader& r, const TransmissionInstance& inst) {
  HierarchicalGrid g;
  g.top_ = r.get<std::int32_t>();
  g.rmin_ = r.get<double>();
  const auto cells = r.get<std::uint64_t>();
  if (cells > inst.size()) throw FormatError("more cells than points");
  g.keys_.resize(cells);
  for (CellKey& k : g.keys_) {
    k.level = r.get<std::int32_t>();
    k.ix = r.get<std::int64_t>();
    k.iy = r.get<std::int64_t>();
  }
  g.point_cell_ = r.get_vector<std::uint32_t>();
  // The grid is a function of the instance; a stored copy must agree.
  const HierarchicalGrid fresh(inst);
  if (fresh.top_ != g.top_ || fresh.rmin_ != g.rmin_ || fresh.keys_ != g.keys_ || fresh.point_cell_ != g.point_cell_) {
    throw FormatError("stored grid does not match the instance");
  }
  return fresh;
}

// ---------------------------------------------------------------------------
// CellGraph

CellGraph::CellGraph(const TransmissionInstance& inst, const HierarchicalGrid& grid) {
  const std::size_t cells = grid.cell_count();
  std::vector<StaticMembershipIndex> index(cells);
  std::vector<Disk> member_disks;
  disks_.resize(cells);
  for (std::uint32_t c = 0; c < cells; ++c) {
    member_disks.clear();
    for (PointId p : grid.members(c)) member_disks.push_back({inst.pos(p), inst.radius(p)});
    index[c] = StaticMembershipIndex(member_disks);
    const CellKey& k = grid.key(c);
    disks_[c] = {grid.cell_center(k), 3.0 * std::ldexp(grid.min_radius(), k.level)};
  }

  // Incoming probes only: every G-edge q -> p is found from p's side.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (PointId p = 0; p < inst.size(); ++p) {
    const std::uint32_t home = grid.cell_of(p);
    const Vec2 x = inst.pos(p);
    for (int j = 0; j < grid.levels(); ++j) {
      const CellKey base = grid.cell_at(j, x);
      for (int dx = -kProbeRadius; dx <= kProbeRadius; ++dx) {
        for (int dy = -kProbeRadius; dy <= kProbeRadius; ++dy) {
          const std::int64_t c = grid.find({j, base.ix + dx, base.iy + dy});
          if (c < 0 || static_cast<std::uint32_t>(c) == home) continue;
          if (index[static_cast<std::size_t>(c)].covers(x)) edges.emplace_back(static_cast<std::uint32_t>(c), home);
        }
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  off_.assign(cells + 1, 0);
  for (const auto& e : edges) ++off_[e.first + 1];
  for (std::size_t c = 0; c < cells; ++c) off_[c + 1] += off_[c];
  adj_.resize(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) adj_[i] = edges[i].second;
}

// ---------------------------------------------------------------------------
// GridOracle

GridOracle::GridOracle(TransmissionInstance inst) : inst_(std::move(inst)), grid_(inst_) {
  const CellGraph cg(inst_, grid_);
  cell_edges_ = cg.edge_count();
  std::vector<std::uint32_t> ids(cg.vertex_count());
  std::iota(ids.begin(), ids.end(), 0U);
  const GraphReachability provider(cg.view());
  tree_ = SeparationTree(cg.disks(), ids, provider);
}

bool GridOracle::query(PointId p, PointId q) const {
  inst_.check_id(p);
  inst_.check_id(q);
  const std::uint32_t a = grid_.cell_of(p);
  const std::uint32_t b = grid_.cell_of(q);
  if (a == b) return true;  // cells are cliques
  return tree_.query(a, b);
}

std::size_t GridOracle::memory_bytes() const {
  return tree_.memory_bytes() + grid_.cell_count() * (sizeof(CellKey) + 2 * sizeof(std::uint32_t)) +
         inst_.size() * 2 * sizeof(std::uint32_t);
}

void GridOracle::save_grid(BinaryWriter& w) const {
  grid_.save(w);
  w.put<std::uint64_t>(cell_edges_);
}

void GridOracle::save(BinaryWriter& w) const {
  save_grid(w);
  tree_.save(w);
}

GridOracle GridOracle::load(BinaryReader& r, TransmissionInstance inst) {
  // The tree follows the grid part in the same stream.
  GridOracle o;
  o.inst_ = std::move(inst);
  o.grid_ = HierarchicalGrid::load(r, o.inst_);
  o.cell_edges_ = r.get<std::uint64_t>();
  o.tree_ = SeparationTree::load(r);
  o.check_tree();
  return o;
}

GridOracle GridOracle::assemble(TransmissionInstance inst, BinaryReader& grid_part, SeparationTree tree) {
  GridOracle o;
  o.inst_ = std::move(inst);
  o.grid_ = HierarchicalGrid::load(grid_part, o.inst_);
  o.cell_edges_ = grid_part.get<std::uint64_t>();
  o.tree_ = std::move(tree);
  o.check_tree();
  return o;
}

void GridOracle::check_tree() const {
  if (tree_.size() != grid_.cell_count()) throw FormatError("septree does not index every cell");
  for (std::uint32_t c = 0; c < grid_.cell_count(); ++c) {
    if (!tree_.contains(c)) throw FormatError("septree does not index every cell");
  }
}

}  // namespace txreach
