#include "txreach/spanner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace txreach {

namespace {

void require_cones(int k, const char* who) {
  if (k <= 8) throw std::domain_error(std::string(who) + ": cone count must exceed 8");
}

int ceil_log2(std::uint32_t n) { return n <= 1 ? 0 : static_cast<int>(std::bit_width(n - 1)); }

}  // namespace

// ---------------------------------------------------------------------------
// SpannerGraph

SpannerGraph::SpannerGraph(std::size_t n, int k, std::vector<Edge> edges)
    : n_(n), k_(k), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  out_off_.assign(n + 1, 0);
  in_off_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    if (e.src >= n || e.dst >= n) throw std::invalid_argument("SpannerGraph: edge endpoint out of range");
    ++out_off_[e.src + 1];
    ++in_off_[e.dst + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_off_[i + 1] += out_off_[i];
    in_off_[i + 1] += in_off_[i];
  }
  out_adj_.resize(edges_.size());
  in_adj_.resize(edges_.size());
  std::vector<std::uint32_t> fill(in_off_.begin(), in_off_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out_adj_[i] = edges_[i].dst;  // edges are sorted by src already
    in_adj_[fill[edges_[i].dst]++] = edges_[i].src;
  }
}

double SpannerGraph::stretch() const {
  if (k_ == 0) return 0.0;
  return std::tan(std::numbers::pi / 4 + 2 * std::numbers::pi / k_);
}

std::string SpannerGraph::dump() const {
  std::ostringstream os;
  for (const Edge& e : edges_) os << e.src << ' ' << e.dst << '\n';
  return os.str();
}

std::size_t SpannerGraph::memory_bytes() const {
  return edges_.capacity() * sizeof(Edge) +
         (out_off_.capacity() + in_off_.capacity() + out_adj_.capacity() + in_adj_.capacity()) *
             sizeof(std::uint32_t);
}

SpannerGraph build_spanner_naive(const TransmissionInstance& inst, int k) {
  require_cones(k, "build_spanner_naive");
  const ConeFamily cones(k);
  const auto n = static_cast<PointId>(inst.size());
  std::vector<Edge> edges;
  std::vector<std::int64_t> best(static_cast<std::size_t>(k));
  for (PointId p = 0; p < n; ++p) {
    std::fill(best.begin(), best.end(), -1);
    const Vec2 pp = inst.pos(p);
    for (PointId q = 0; q < n; ++q) {
      if (q == p || !inst.reaches_directly(q, p)) continue;
      const int c = cones.cone_of(pp, inst.pos(q));
      auto& b = best[static_cast<std::size_t>(c)];
      if (b < 0) {
        b = q;
        continue;
      }
      const double kq = cones.order_key(c, inst.pos(q));
      const double kb = cones.order_key(c, inst.pos(static_cast<PointId>(b)));
      if (kq < kb || (kq == kb && q < b)) b = q;
    }
    for (std::int64_t b : best) {
      if (b >= 0) edges.push_back({static_cast<PointId>(b), p});
    }
  }
  return SpannerGraph(n, k, std::move(edges));
}

// ---------------------------------------------------------------------------
// GridLikeRangeTree

GridLikeRangeTree::GridLikeRangeTree(const TransmissionInstance& inst, const ConeFamily& cones,
                                     int cone)
    : inst_(&inst),
      cone_(cone),
      n_(static_cast<std::uint32_t>(inst.size())),
      disks_(DiskTable::from_instance(inst)),
      forest_(&disks_, 8) {
  if (n_ == 0) return;
  u_.resize(n_);
  w_.resize(n_);
  key_.resize(n_);
  const int next = cones.next(cone);
  for (std::uint32_t q = 0; q < n_; ++q) {
    const Vec2 pos = inst.pos(q);
    u_[q] = cones.offset(cone, pos);
    w_[q] = -cones.offset(next, pos);
    key_[q] = cones.order_key(cone, pos);
  }
  std::vector<std::uint32_t> by_u(n_);
  std::iota(by_u.begin(), by_u.end(), 0U);
  by_w_ = by_u;
  std::sort(by_u.begin(), by_u.end(), [&](std::uint32_t a, std::uint32_t b) {
    return u_[a] < u_[b] || (u_[a] == u_[b] && a < b);
  });
  std::sort(by_w_.begin(), by_w_.end(), [&](std::uint32_t a, std::uint32_t b) {
    return w_[a] < w_[b] || (w_[a] == w_[b] && a < b);
  });
  u_sorted_.resize(n_);
  w_sorted_.resize(n_);
  std::vector<std::uint32_t> w_rank(n_);
  for (std::uint32_t r = 0; r < n_; ++r) {
    u_sorted_[r] = u_[by_u[r]];
    w_sorted_[r] = w_[by_w_[r]];
    w_rank[by_w_[r]] = r;
  }

  h1_ = ceil_log2(n_);
  h2_ = h1_;
  const std::uint32_t n1 = 1U << h1_;
  root_of_.assign(2 * static_cast<std::size_t>(n1), -1);

  // Per first-level block, the w-ranks of its points in ascending order;
  // rebuilt level by level as in a bottom-up merge sort.
  std::vector<std::uint32_t> cur(n_);
  std::vector<std::uint32_t> nxt(n_);
  for (std::uint32_t r = 0; r < n_; ++r) cur[r] = w_rank[by_u[r]];
  std::vector<std::uint32_t> scratch(n_);
  std::vector<std::uint32_t> tmp(n_);

  const std::size_t est = static_cast<std::size_t>(n_) * (h1_ + 1) * (h2_ + 2) / 2;
  forest_.reserve(est, est / 4);
  nodes_.reserve(static_cast<std::size_t>(n_) * (h1_ + 1) * 2);

  for (int lev = 0; lev <= h1_; ++lev) {
    const std::uint32_t block = 1U << lev;
    for (std::uint32_t start = 0; start < n_; start += block) {
      const std::uint32_t end = std::min(n_, start + block);
      const std::size_t heap = (static_cast<std::size_t>(n1) + start) >> lev;
      root_of_[heap] = build_second({cur.data() + start, end - start}, scratch.data() + start,
                                    tmp.data() + start);
    }
    if (lev == h1_) break;
    for (std::uint32_t start = 0; start < n_; start += 2 * block) {
      const std::uint32_t mid = std::min(n_, start + block);
      const std::uint32_t end = std::min(n_, start + 2 * block);
      std::merge(cur.begin() + start, cur.begin() + mid, cur.begin() + mid, cur.begin() + end,
                 nxt.begin() + start);
    }
    cur.swap(nxt);
  }
  forest_.shrink_to_fit();
  nodes_.shrink_to_fit();
}

std::int32_t GridLikeRangeTree::build_second(std::span<const std::uint32_t> ranks,
                                             std::uint32_t* scratch, std::uint32_t* tmp) {
  const auto idx = static_cast<std::int32_t>(nodes_.size());
  nodes_.emplace_back();
  const auto m = static_cast<std::uint32_t>(ranks.size());
  if (m == 1) {
    scratch[0] = by_w_[ranks[0]];
    SecondNode& node = nodes_[static_cast<std::size_t>(idx)];
    node.lo = ranks[0];
    node.level = 0;
    node.tree = forest_.add({scratch, 1});
    return idx;
  }
  // Bottom node of the contracted chain: smallest dyadic rank block holding
  // every point; both of its halves are nonempty.
  const std::uint32_t first = ranks.front();
  const std::uint32_t last = ranks.back();
  const int d = static_cast<int>(std::bit_width(first ^ last));
  const std::uint32_t lo = (first >> d) << d;
  const std::uint32_t mid = lo + (1U << (d - 1));
  const auto split =
      static_cast<std::uint32_t>(std::lower_bound(ranks.begin(), ranks.end(), mid) - ranks.begin());
  const std::int32_t left = build_second(ranks.subspan(0, split), scratch, tmp);
  const std::int32_t right = build_second(ranks.subspan(split), scratch + split, tmp + split);
  std::merge(scratch, scratch + split, scratch + split, scratch + m, tmp,
             [this](std::uint32_t a, std::uint32_t b) { return key_less(a, b); });
  std::copy(tmp, tmp + m, scratch);
  SecondNode& node = nodes_[static_cast<std::size_t>(idx)];
  node.lo = lo;
  node.level = static_cast<std::uint8_t>(d);
  node.left = left;
  node.right = right;
  node.tree = forest_.add({scratch, m});
  return idx;
}

int GridLikeRangeTree::column_of(std::uint32_t lo, std::uint32_t b0) const {
  if (b0 == 0) return h2_;
  return static_cast<int>(std::bit_width(lo ^ (b0 - 1))) - 1;
}

std::vector<GridCell> GridLikeRangeTree::candidate_cells(PointId p) const {
  std::vector<GridCell> cells;
  if (n_ == 0) return cells;
  const auto a0 = static_cast<std::uint32_t>(
      std::lower_bound(u_sorted_.begin(), u_sorted_.end(), u_[p]) - u_sorted_.begin());
  const auto b0 = static_cast<std::uint32_t>(
      std::upper_bound(w_sorted_.begin(), w_sorted_.end(), w_[p]) - w_sorted_.begin());
  if (a0 >= n_ || b0 >= n_) return cells;
  const std::size_t n1 = std::size_t{1} << h1_;
  std::int32_t stack[64];
  for (std::size_t l = a0 + n1, r = 2 * n1; l < r; l >>= 1, r >>= 1) {
    if ((l & 1) == 0) continue;
    const std::size_t x = l++;
    const int row = h1_ - (static_cast<int>(std::bit_width(x)) - 1);
    if (((x << row) - n1) >= n_) continue;
    int top = 0;
    stack[top++] = root_of_[x];
    while (top > 0) {
      const SecondNode& node = nodes_[static_cast<std::size_t>(stack[--top])];
      const std::uint64_t hi = std::uint64_t{node.lo} + (std::uint64_t{1} << node.level);
      if (node.lo >= b0) {
        cells.push_back({row, column_of(node.lo, b0),
                         static_cast<std::uint32_t>(&node - nodes_.data())});
      } else if (hi > b0) {
        stack[top++] = node.right;
        stack[top++] = node.left;
      }
    }
  }
  return cells;
}

std::span<const std::uint32_t> GridLikeRangeTree::cell_points(const GridCell& cell) const {
  return forest_.items(nodes_[cell.node].tree);
}

bool GridLikeRangeTree::is_useful(const GridCell& cell, PointId p) const {
  return forest_.contains_any(nodes_[cell.node].tree, inst_->pos(p));
}

std::optional<PointId> GridLikeRangeTree::nn_in_cell(const GridCell& cell, PointId p) const {
  const auto& tree = nodes_[cell.node].tree;
  const auto pos = forest_.first_containing(tree, inst_->pos(p));
  if (!pos) return std::nullopt;
  return forest_.item(tree, *pos);
}

std::optional<PointId> GridLikeRangeTree::nearest(PointId p) const {
  auto cells = candidate_cells(p);
  std::sort(cells.begin(), cells.end(), [](const GridCell& a, const GridCell& b) {
    return a.diagonal() < b.diagonal() || (a.diagonal() == b.diagonal() && a.row < b.row);
  });
  std::optional<PointId> best;
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t j = i;
    std::optional<PointId> diag_best;
    for (; j < cells.size() && cells[j].diagonal() == cells[i].diagonal(); ++j) {
      // Later cells on a diagonal hold keys no smaller than any key of an
      // earlier one; only exact key ties can still matter.
      if (diag_best && key_[cell_points(cells[j]).front()] > key_[*diag_best]) {
        while (j < cells.size() && cells[j].diagonal() == cells[i].diagonal()) ++j;
        break;
      }
      const auto q = nn_in_cell(cells[j], p);
      if (q && (!diag_best || key_less(*q, *diag_best))) diag_best = q;
    }
    if (diag_best && (!best || key_less(*diag_best, *best))) best = diag_best;
    i = j;
  }
  return best;
}

std::size_t GridLikeRangeTree::max_second_level_depth() const {
  std::size_t deepest = 0;
  std::vector<std::pair<std::int32_t, std::size_t>> stack;
  for (std::int32_t root : root_of_) {
    if (root < 0) continue;
    stack.push_back({root, 1});
    while (!stack.empty()) {
      const auto [v, d] = stack.back();
      stack.pop_back();
      deepest = std::max(deepest, d);
      const SecondNode& node = nodes_[static_cast<std::size_t>(v)];
      if (node.left >= 0) {
        stack.push_back({node.left, d + 1});
        stack.push_back({node.right, d + 1});
      }
    }
  }
  return deepest;
}

std::size_t GridLikeRangeTree::third_level_points() const { return forest_.raw_items().size(); }

std::size_t GridLikeRangeTree::memory_bytes() const {
  return forest_.memory_bytes() + nodes_.capacity() * sizeof(SecondNode) +
         root_of_.capacity() * sizeof(std::int32_t) +
         (u_.capacity() + w_.capacity() + key_.capacity() + u_sorted_.capacity() +
          w_sorted_.capacity()) *
             sizeof(double) +
         by_w_.capacity() * sizeof(std::uint32_t) + 3 * disks_.size() * sizeof(double);
}

std::vector<GridCell> extreme_cells(std::span<const GridCell> useful) {
  std::vector<GridCell> out;
  for (const GridCell& c : useful) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const GridCell& o) { return o.diagonal() == c.diagonal(); });
    if (it == out.end()) {
      out.push_back(c);
    } else if (c.row < it->row) {
      *it = c;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const GridCell& a, const GridCell& b) { return a.diagonal() < b.diagonal(); });
  return out;
}

SpannerGraph build_spanner(const TransmissionInstance& inst, int k) {
  require_cones(k, "build_spanner");
  const ConeFamily cones(k);
  const auto n = static_cast<PointId>(inst.size());
  std::vector<Edge> edges;
  for (int c = 0; c < k; ++c) {
    const GridLikeRangeTree tree(inst, cones, c);
    for (PointId p = 0; p < n; ++p) {
      if (const auto q = tree.nearest(p)) edges.push_back({*q, p});
    }
  }
  return SpannerGraph(n, k, std::move(edges));
}

SpannerGraph build_spanner_local(const TransmissionInstance& inst, int k) {
  require_cones(k, "build_spanner_local");
  const ConeFamily cones(k);
  const auto n = static_cast<PointId>(inst.size());
  std::vector<Disk> disks(n);
  for (PointId p = 0; p < n; ++p) disks[p] = {inst.pos(p), inst.radius(p)};
  const StaticMembershipIndex index(disks);
  std::vector<Edge> edges;
  std::vector<std::int64_t> best(static_cast<std::size_t>(k));
  std::vector<double> best_key(static_cast<std::size_t>(k));
  std::vector<std::uint32_t> found;
  for (PointId p = 0; p < n; ++p) {
    found.clear();
    index.report_containing(inst.pos(p), found);
    std::fill(best.begin(), best.end(), -1);
    const Vec2 pp = inst.pos(p);
    for (std::uint32_t q : found) {
      if (q == p || !inst.reaches_directly(q, p)) continue;
      const int c = cones.cone_of(pp, inst.pos(q));
      const auto ci = static_cast<std::size_t>(c);
      const double kq = cones.order_key(c, inst.pos(q));
      if (best[ci] < 0 || kq < best_key[ci] || (kq == best_key[ci] && q < best[ci])) {
        best[ci] = q;
        best_key[ci] = kq;
      }
    }
    for (std::int64_t b : best) {
      if (b >= 0) edges.push_back({static_cast<PointId>(b), p});
    }
  }
  return SpannerGraph(n, k, std::move(edges));
}

}  // namespace txreach
