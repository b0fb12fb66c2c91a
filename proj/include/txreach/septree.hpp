#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "txreach/binary_io.hpp"
#include "txreach/geom.hpp"
#include "txreach/membership.hpp"
#include "txreach/spanner.hpp"
#include "txreach/traversal.hpp"

namespace txreach {

struct SeparatingCircle {
  Vec2 center;
  double radius = 0.0;
};

/// A circle with the induced three-way split by disk position. `inside`
/// and `outside` hold disks strictly on one side (with a rounding margin);
/// tangent or intersecting disks are crossing.
struct CircleSplit {
  SeparatingCircle circle;
  std::vector<std::uint32_t> inside;
  std::vector<std::uint32_t> crossing;
  std::vector<std::uint32_t> outside;
};

/// Largest side allowed for a set of m disks: ceil(2m/3).
inline std::size_t balance_limit(std::size_t m) { return (2 * m + 2) / 3; }

/// Circle separator for disks[subset]; ids in the result are taken from
/// `subset`. Both sides are at most ceil(2m/3); among balanced candidate
/// circles around approximate centerpoints the one crossing fewest disks
/// wins. Requires |subset| >= 2.
CircleSplit find_separating_circle(std::span<const Disk> disks, std::span<const std::uint32_t> subset);
CircleSplit find_separating_circle(const TransmissionInstance& inst, std::span<const PointId> subset);

/// Approximate centerpoint of the given points by iterated Radon points on
/// a deterministic sample.
Vec2 approximate_centerpoint(std::span<const Vec2> points);

/// Computes reachability between a vertex set and a distinguished subset
/// of it inside the subgraph induced by the set.
class ReachabilityProvider {
 public:
  virtual ~ReachabilityProvider() = default;
  virtual std::size_t domain_size() const = 0;
  /// Row i describes members[i]; column j the source members[j] (j < s).
  /// reaches(i, j): members[i] reaches members[j]; reached(i, j): members[j]
  /// reaches members[i].
  virtual void reach(std::span<const std::uint32_t> members, std::size_t sources, BitMatrix& reaches,
                     BitMatrix& reached) const = 0;
};

using SpannerBuilder = std::function<SpannerGraph(const TransmissionInstance&)>;

/// Reachability through a Theta-graph of each induced sub-instance.
class SpannerReachability final : public ReachabilityProvider {
 public:
  /// Default builder: k = 20 via in-neighbour listing (the indexed sets are
  /// thin), naive construction for small sub-instances.
  explicit SpannerReachability(const TransmissionInstance& inst, SpannerBuilder builder = {});
  std::size_t domain_size() const override { return inst_->size(); }
  void reach(std::span<const std::uint32_t> members, std::size_t sources, BitMatrix& reaches,
             BitMatrix& reached) const override;

 private:
  const TransmissionInstance* inst_;
  SpannerBuilder builder_;
};

/// Reachability over an explicit directed graph given in CSR form. Not
/// safe for concurrent use (shares a scratch map between calls).
class GraphReachability final : public ReachabilityProvider {
 public:
  explicit GraphReachability(CsrView graph) : graph_(graph), local_(graph.vertex_count(), -1) {}
  std::size_t domain_size() const override { return graph_.vertex_count(); }
  void reach(std::span<const std::uint32_t> members, std::size_t sources, BitMatrix& reaches,
             BitMatrix& reached) const override;

 private:
  CsrView graph_;
  mutable std::vector<std::int32_t> local_;
};

inline constexpr std::size_t kSeparatorLeafSize = 8;

class SeparationTree {
 public:
  struct Node {
    std::uint32_t start = 0;      // first slot in the layout
    std::uint32_t size = 0;       // vertices in the subtree
    std::uint32_t separator = 0;  // the first `separator` slots
    std::int32_t parent = -1;
    std::int32_t inner = -1;
    std::int32_t outer = -1;
    std::uint32_t depth = 0;
    SeparatingCircle circle;
    BitMatrix reaches;  // row: subtree slot; column: separator slot
    BitMatrix reached;
  };

  SeparationTree() = default;
  /// Indexes the subgraph induced by `members` (ids of the provider's
  /// domain); `disks` gives the geometry used for separators.
  SeparationTree(std::span<const Disk> disks, std::span<const std::uint32_t> members,
                 const ReachabilityProvider& provider);

  bool contains(std::uint32_t v) const { return v < slot_.size() && slot_[v] >= 0; }
  /// Reachability inside the indexed set. Throws std::domain_error for ids
  /// outside it.
  bool query(std::uint32_t p, std::uint32_t q) const;

  std::span<const Node> nodes() const { return nodes_; }
  /// Layout slot -> vertex; a node's vertices are layout[start, start+size).
  std::span<const std::uint32_t> layout() const { return layout_; }
  std::int32_t owner(std::uint32_t v) const { return owner_[v]; }
  std::size_t size() const { return layout_.size(); }
  std::size_t height() const;
  std::size_t root_crossings() const;
  std::size_t memory_bytes() const;

  void save(BinaryWriter& w) const;
  static SeparationTree load(BinaryReader& r);

 private:
  std::int32_t build(std::span<const Disk> disks, std::vector<std::uint32_t> members,
                     std::int32_t parent, std::uint32_t depth, const ReachabilityProvider& provider);

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> layout_;
  std::vector<std::int64_t> slot_;    // vertex -> layout slot, -1 if absent
  std::vector<std::int32_t> owner_;   // vertex -> node whose separator holds it
};

}  // namespace txreach
