#include "txreach/septree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace txreach {

namespace {

double det3(double a, double b, double c, double d, double e, double f, double g, double h, double i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

Vec2 centroid(std::span<const Vec2> pts) {
  Vec2 s{0, 0};
  for (const Vec2& p : pts) s = s + p;
  return {s.x / static_cast<double>(pts.size()), s.y / static_cast<double>(pts.size())};
}

Vec2 coordinate_median(std::span<const Vec2> pts) {
  std::vector<double> xs(pts.size()), ys(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    xs[i] = pts[i].x;
    ys[i] = pts[i].y;
  }
  const auto mid = static_cast<std::ptrdiff_t>(pts.size() / 2);
  std::nth_element(xs.begin(), xs.begin() + mid, xs.end());
  std::nth_element(ys.begin(), ys.begin() + mid, ys.end());
  return {xs[static_cast<std::size_t>(mid)], ys[static_cast<std::size_t>(mid)]};
}

// Radon point of four points: split by the sign of an affine dependency.
Vec2 radon_point(const Vec2 (&p)[4]) {
  double lambda[4];
  double scale = 0;
  for (int i = 0; i < 4; ++i) {
    int c[3], t = 0;
    for (int j = 0; j < 4; ++j) {
      if (j != i) c[t++] = j;
    }
    const double m = det3(p[c[0]].x, p[c[1]].x, p[c[2]].x, p[c[0]].y, p[c[1]].y, p[c[2]].y, 1, 1, 1);
    lambda[i] = (i % 2 == 0) ? m : -m;
    scale = std::max(scale, std::abs(lambda[i]));
  }
  double wsum = 0;
  Vec2 acc{0, 0};
  for (int i = 0; i < 4; ++i) {
    if (lambda[i] > 1e-12 * scale) {
      acc = acc + Vec2{lambda[i] * p[i].x, lambda[i] * p[i].y};
      wsum += lambda[i];
    }
  }
  if (scale > 0 && wsum > 0) return {acc.x / wsum, acc.y / wsum};
  // Collinear or coincident: the middle pair's midpoint is a Radon point.
  Vec2 s[4] = {p[0], p[1], p[2], p[3]};
  std::sort(std::begin(s), std::end(s), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  return {(s[1].x + s[2].x) / 2, (s[1].y + s[2].y) / 2};
}

struct Scored {
  double radius = 0;
  std::size_t crossing = std::numeric_limits<std::size_t>::max();
  std::size_t heavier = std::numeric_limits<std::size_t>::max();
  bool found = false;
};

double margin_for(std::span<const double> d, std::span<const double> r) {
  double big = 1;
  for (std::size_t i = 0; i < d.size(); ++i) big = std::max(big, d[i] + r[i]);
  return big * 1e-9;
}

// Best balanced radius around `z`, scanning the middle distance quantiles.
Scored scan_center(Vec2 z, std::span<const Disk> disks, std::span<const std::uint32_t> subset) {
  const std::size_t m = subset.size();
  std::vector<double> d(m), r(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Disk& k = disks[subset[i]];
    d[i] = std::sqrt(sqdist(k.center, z));
    r[i] = k.radius;
  }
  const double margin = margin_for(d, r);
  std::vector<double> far_edge(m), near_edge(m);
  for (std::size_t i = 0; i < m; ++i) {
    far_edge[i] = d[i] + r[i];
    near_edge[i] = d[i] - r[i];
  }
  std::sort(far_edge.begin(), far_edge.end());
  std::sort(near_edge.begin(), near_edge.end());
  std::vector<double> sorted_d = d;
  std::sort(sorted_d.begin(), sorted_d.end());

  const std::size_t limit = balance_limit(m);
  Scored best;
  auto consider = [&](double R) {
    const auto in = static_cast<std::size_t>(
        std::lower_bound(far_edge.begin(), far_edge.end(), R - margin) - far_edge.begin());
    const auto out = static_cast<std::size_t>(
        near_edge.end() - std::upper_bound(near_edge.begin(), near_edge.end(), R + margin));
    if (in > limit || out > limit) return;
    const std::size_t cross = m - in - out;
    const std::size_t heavier = std::max(in, out);
    if (!best.found || cross < best.crossing || (cross == best.crossing && heavier < best.heavier)) {
      best = {R, cross, heavier, true};
    }
  };
  const std::size_t lo = (m + 2) / 3 - 1;  // ceil(m/3)-th smallest, always balanced
  const std::size_t hi = std::min(m - 1, 2 * m / 3);
  for (std::size_t j = lo; j <= hi; ++j) {
    consider(sorted_d[j]);
    if (j + 1 < m) consider((sorted_d[j] + sorted_d[j + 1]) / 2);
  }
  return best;
}

}  // namespace

Vec2 approximate_centerpoint(std::span<const Vec2> points) {
  if (points.empty()) throw std::invalid_argument("approximate_centerpoint: no points");
  const std::size_t m = points.size();
  std::size_t sample = 1;
  for (int t = 0; t < 5 && sample * 4 <= m; ++t) sample *= 4;
  if (sample < 4) return coordinate_median(points);
  std::vector<Vec2> cur(sample);
  for (std::size_t i = 0; i < sample; ++i) cur[i] = points[i * m / sample];
  while (cur.size() > 1) {
    std::vector<Vec2> next(cur.size() / 4);
    for (std::size_t g = 0; g < next.size(); ++g) {
      const Vec2 quad[4] = {cur[4 * g], cur[4 * g + 1], cur[4 * g + 2], cur[4 * g + 3]};
      next[g] = radon_point(quad);
    }
    cur = std::move(next);
  }
  return cur[0];
}

CircleSplit find_separating_circle(std::span<const Disk> disks, std::span<const std::uint32_t> subset) {
  const std::size_t m = subset.size();
  if (m < 2) throw std::invalid_argument("find_separating_circle: need at least two disks");
  std::vector<Vec2> centers(m);
  for (std::size_t i = 0; i < m; ++i) centers[i] = disks[subset[i]].center;

  const Vec2 candidates[] = {approximate_centerpoint(centers), coordinate_median(centers), centroid(centers)};
  Scored best;
  Vec2 best_center = candidates[0];
  for (const Vec2& z : candidates) {
    const Scored s = scan_center(z, disks, subset);
    if (s.found && (!best.found || s.crossing < best.crossing ||
                    (s.crossing == best.crossing && s.heavier < best.heavier))) {
      best = s;
      best_center = z;
    }
  }

  CircleSplit out;
  out.circle = {best_center, best.radius};
  std::vector<double> d(m), r(m);
  for (std::size_t i = 0; i < m; ++i) {
    d[i] = std::sqrt(sqdist(disks[subset[i]].center, best_center));
    r[i] = disks[subset[i]].radius;
  }
  const double margin = margin_for(d, r);
  for (std::size_t i = 0; i < m; ++i) {
    if (d[i] + r[i] < best.radius - margin) {
      out.inside.push_back(subset[i]);
    } else if (d[i] - r[i] > best.radius + margin) {
      out.outside.push_back(subset[i]);
    } else {
      out.crossing.push_back(subset[i]);
    }
  }
  return out;
}

CircleSplit find_separating_circle(const TransmissionInstance& inst, std::span<const PointId> subset) {
  for (PointId p : subset) inst.check_id(p);
  std::vector<Disk> disks(inst.size());
  for (PointId p = 0; p < inst.size(); ++p) disks[p] = {inst.pos(p), inst.radius(p)};
  return find_separating_circle(std::span<const Disk>(disks), subset);
}

// ---------------------------------------------------------------------------
// Providers

SpannerReachability::SpannerReachability(const TransmissionInstance& inst, SpannerBuilder builder)
    : inst_(&inst), builder_(std::move(builder)) {
  if (!builder_) {
    builder_ = [](const TransmissionInstance& sub) {
      return sub.size() <= 64 ? build_spanner_naive(sub, 20) : build_spanner_local(sub, 20);
    };
  }
}

void SpannerReachability::reach(std::span<const std::uint32_t> members, std::size_t sources, BitMatrix& reaches,
                                BitMatrix& reached) const {
  const TransmissionInstance sub = inst_->subset(members);
  const SpannerGraph h = builder_(sub);
  std::vector<std::uint32_t> src(sources);
  std::iota(src.begin(), src.end(), 0U);
  reaches = multi_source_reach(reverse_view(h), src);
  reached = multi_source_reach(forward_view(h), src);
}

void GraphReachability::reach(std::span<const std::uint32_t> members, std::size_t sources, BitMatrix& reaches,
                              BitMatrix& reached) const {
  const std::size_t m = members.size();
  for (std::size_t i = 0; i < m; ++i) local_[members[i]] = static_cast<std::int32_t>(i);
  std::vector<std::uint32_t> off(m + 1, 0), adj;
  std::vector<std::uint32_t> roff(m + 1, 0), radj;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::uint32_t w : graph_.neighbours(members[i])) {
      if (local_[w] >= 0) {
        adj.push_back(static_cast<std::uint32_t>(local_[w]));
        ++roff[static_cast<std::size_t>(local_[w]) + 1];
      }
    }
    off[i + 1] = static_cast<std::uint32_t>(adj.size());
  }
  for (std::size_t i = 0; i < m; ++i) roff[i + 1] += roff[i];
  radj.resize(adj.size());
  std::vector<std::uint32_t> fill(roff.begin(), roff.end() - 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::uint32_t e = off[i]; e < off[i + 1]; ++e) radj[fill[adj[e]]++] = static_cast<std::uint32_t>(i);
  }
  for (std::uint32_t v : members) local_[v] = -1;

  std::vector<std::uint32_t> src(sources);
  std::iota(src.begin(), src.end(), 0U);
  reaches = multi_source_reach(CsrView{roff, radj}, src);
  reached = multi_source_reach(CsrView{off, adj}, src);
}

// ---------------------------------------------------------------------------
// SeparationTree

SeparationTree::SeparationTree(std::span<const Disk> disks, std::span<const std::uint32_t> members,
                               const ReachabilityProvider& provider) {
  const std::size_t domain = provider.domain_size();
  slot_.assign(domain, -1);
  owner_.assign(domain, -1);
  for (std::uint32_t v : members) {
    if (v >= domain || v >= disks.size()) throw std::domain_error("SeparationTree: member id out of range");
    if (slot_[v] != -1) throw std::invalid_argument("SeparationTree: duplicate member");
    slot_[v] = 0;
  }
  layout_.reserve(members.size());
  if (!members.empty()) build(disks, {members.begin(), members.end()}, -1, 0, provider);
  for (std::size_t i = 0; i < layout_.size(); ++i) slot_[layout_[i]] = static_cast<std::int64_t>(i);
}

std::int32_t SeparationTree::build(std::span<const Disk> disks, std::vector<std::uint32_t> members,
                                   std::int32_t parent, std::uint32_t depth, const ReachabilityProvider& provider) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.emplace_back();
  const std::size_t m = members.size();
  std::vector<std::uint32_t> sep, in, out;
  SeparatingCircle circle;
  if (m <= kSeparatorLeafSize) {
    sep = std::move(members);
    std::sort(sep.begin(), sep.end());
  } else {
    CircleSplit split = find_separating_circle(disks, members);
    members = {};
    circle = split.circle;
    sep = std::move(split.crossing);
    in = std::move(split.inside);
    out = std::move(split.outside);
  }
  const auto start = static_cast<std::uint32_t>(layout_.size());
  for (std::uint32_t v : sep) owner_[v] = id;
  layout_.insert(layout_.end(), sep.begin(), sep.end());
  {
    Node& n = nodes_[static_cast<std::size_t>(id)];
    n.start = start;
    n.size = static_cast<std::uint32_t>(m);
    n.separator = static_cast<std::uint32_t>(sep.size());
    n.parent = parent;
    n.depth = depth;
    n.circle = circle;
  }
  sep = {};
  const std::int32_t inner = in.empty() ? -1 : build(disks, std::move(in), id, depth + 1, provider);
  const std::int32_t outer = out.empty() ? -1 : build(disks, std::move(out), id, depth + 1, provider);
  Node& n = nodes_[static_cast<std::size_t>(id)];
  n.inner = inner;
  n.outer = outer;
  const std::span<const std::uint32_t> sub(layout_.data() + start, m);
  provider.reach(sub, n.separator, n.reaches, n.reached);
  return id;
}

bool SeparationTree::query(std::uint32_t p, std::uint32_t q) const {
  if (!contains(p) || !contains(q)) throw std::domain_error("SeparationTree: id not indexed");
  if (p == q) return true;
  std::int32_t a = owner_[p];
  std::int32_t b = owner_[q];
  while (nodes_[static_cast<std::size_t>(a)].depth > nodes_[static_cast<std::size_t>(b)].depth) {
    a = nodes_[static_cast<std::size_t>(a)].parent;
  }
  while (nodes_[static_cast<std::size_t>(b)].depth > nodes_[static_cast<std::size_t>(a)].depth) {
    b = nodes_[static_cast<std::size_t>(b)].parent;
  }
  while (a != b) {
    a = nodes_[static_cast<std::size_t>(a)].parent;
    b = nodes_[static_cast<std::size_t>(b)].parent;
  }
  for (std::int32_t v = a; v >= 0; v = nodes_[static_cast<std::size_t>(v)].parent) {
    const Node& n = nodes_[static_cast<std::size_t>(v)];
    const auto rp = static_cast<std::size_t>(slot_[p] - n.start);
    const auto rq = static_cast<std::size_t>(slot_[q] - n.start);
    const auto x = n.reaches.row(rp);
    const auto y = n.reached.row(rq);
    for (std::size_t w = 0; w < x.size(); ++w) {
      if (x[w] & y[w]) return true;
    }
  }
  return false;
}

std::size_t SeparationTree::height() const {
  std::size_t h = 0;
  for (const Node& n : nodes_) h = std::max<std::size_t>(h, n.depth + 1);
  return h;
}

std::size_t SeparationTree::root_crossings() const {
  if (nodes_.empty() || nodes_[0].size <= kSeparatorLeafSize) return 0;
  return nodes_[0].separator;
}

std::size_t SeparationTree::memory_bytes() const {
  std::size_t b = nodes_.capacity() * sizeof(Node) + layout_.capacity() * sizeof(std::uint32_t) +
                  slot_.capacity() * sizeof(std::int64_t) + owner_.capacity() * sizeof(std::int32_t);
  for (const Node& n : nodes_) b += n.reaches.memory_bytes() + n.reached.memory_bytes();
  return b;
}

namespace {

void put_bits(BinaryWriter& w, const BitMatrix& m) {
  w.put<std::uint64_t>(m.rows());
  w.put<std::uint64_t>(m.cols());
  w.put_vector(m.raw());
}

BitMatrix get_bits(BinaryReader& r) {
  const auto rows = r.get<std::uint64_t>();
  const auto cols = r.get<std::uint64_t>();
  auto raw = r.get_vector<std::uint64_t>();
  if (cols > (std::uint64_t{1} << 32) || rows > (std::uint64_t{1} << 32)) throw FormatError("bit matrix too large");
  BitMatrix m(0, cols);
  if (raw.size() != rows * m.words_per_row()) throw FormatError("bit matrix size mismatch");
  m = BitMatrix(rows, cols);
  m.raw() = std::move(raw);
  return m;
}

}  // namespace

void SeparationTree::save(BinaryWriter& w) const {
  w.put<std::uint64_t>(slot_.size());
  w.put_vector(layout_);
  w.put<std::uint64_t>(nodes_.size());
  for (const Node& n : nodes_) {
    w.put(n.start);
    w.put(n.size);
    w.put(n.separator);
    w.put(n.parent);
    w.put(n.inner);
    w.put(n.outer);
    w.put(n.depth);
    w.put(n.circle.center.x);
    w.put(n.circle.center.y);
    w.put(n.circle.radius);
    put_bits(w, n.reaches);
    put_bits(w, n.reached);
  }
}

SeparationTree SeparationTree::load(BinaryReader& r) {
  SeparationTree t;
  const auto domain = r.get<std::uint64_t>();
  if (domain > (std::uint64_t{1} << 32)) throw FormatError("septree domain too large");
  t.layout_ = r.get_vector<std::uint32_t>();
  const auto count = r.get<std::uint64_t>();
  if (count > t.layout_.size()) throw FormatError("septree node count exceeds vertex count");
  t.slot_.assign(domain, -1);
  t.owner_.assign(domain, -1);
  for (std::size_t i = 0; i < t.layout_.size(); ++i) {
    const std::uint32_t v = t.layout_[i];
    if (v >= domain || t.slot_[v] != -1) throw FormatError("septree layout is not a set of domain ids");
    t.slot_[v] = static_cast<std::int64_t>(i);
  }
  t.nodes_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    Node& n = t.nodes_[i];
    n.start = r.get<std::uint32_t>();
    n.size = r.get<std::uint32_t>();
    n.separator = r.get<std::uint32_t>();
    n.parent = r.get<std::int32_t>();
    n.inner = r.get<std::int32_t>();
    n.outer = r.get<std::int32_t>();
    n.depth = r.get<std::uint32_t>();
    n.circle.center.x = r.get<double>();
    n.circle.center.y = r.get<double>();
    n.circle.radius = r.get<double>();
    n.reaches = get_bits(r);
    n.reached = get_bits(r);
    const bool span_ok = std::uint64_t{n.start} + n.size <= t.layout_.size() && n.separator <= n.size;
    const bool links_ok = n.parent < static_cast<std::int32_t>(i) && n.inner < static_cast<std::int64_t>(count) &&
                          n.outer < static_cast<std::int64_t>(count) && (i == 0) == (n.parent == -1);
    const bool parent_ok = n.parent < 0 || n.depth == t.nodes_[static_cast<std::size_t>(n.parent)].depth + 1;
    if (!span_ok || !links_ok || !parent_ok || n.reaches.rows() != n.size || n.reached.rows() != n.size ||
        n.reaches.cols() != n.separator || n.reached.cols() != n.separator) {
      throw FormatError("septree node is inconsistent");
    }
    for (std::uint32_t s = 0; s < n.separator; ++s) t.owner_[t.layout_[n.start + s]] = static_cast<std::int32_t>(i);
  }
  for (std::uint32_t v : t.layout_) {
    if (t.owner_[v] < 0) throw FormatError("septree vertex without owner");
  }
  return t;
}

}  // namespace txreach
