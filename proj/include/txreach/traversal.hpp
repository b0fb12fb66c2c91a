#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "txreach/geom.hpp"
#include "txreach/spanner.hpp"

namespace txreach {

struct BfsResult {
  static constexpr PointId kNoParent = std::numeric_limits<PointId>::max();

  PointId source = 0;
  std::vector<std::int32_t> depth;  // -1 when unreachable
  std::vector<PointId> parent;

  bool reached(PointId v) const { return depth[v] >= 0; }
};

/// Hop-distance BFS in G that only ever walks spanner edges. Each level's
/// disks go into a membership index; a vertex found in H from the current
/// frontier joins the next level iff it lies in one of those disks.
BfsResult bfs_levels(const SpannerGraph& h, const TransmissionInstance& inst, PointId s);

/// Vertices reachable from s in H, ascending.
std::vector<PointId> reachable_set(const SpannerGraph& h, PointId s);

/// Compressed adjacency: neighbours of v are adj[off[v] .. off[v+1]).
struct CsrView {
  std::span<const std::uint32_t> off;
  std::span<const std::uint32_t> adj;

  std::size_t vertex_count() const { return off.empty() ? 0 : off.size() - 1; }
  std::span<const std::uint32_t> neighbours(std::uint32_t v) const {
    return adj.subspan(off[v], off[v + 1] - off[v]);
  }
};

CsrView forward_view(const SpannerGraph& h);
CsrView reverse_view(const SpannerGraph& h);

/// Row-major bit matrix.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_; }
  bool get(std::size_t r, std::size_t c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U; }
  void set(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }
  std::span<const std::uint64_t> row(std::size_t r) const { return {bits_.data() + r * words_, words_}; }
  std::span<std::uint64_t> row(std::size_t r) { return {bits_.data() + r * words_, words_}; }
  std::vector<std::uint64_t>& raw() { return bits_; }
  const std::vector<std::uint64_t>& raw() const { return bits_; }
  std::size_t memory_bytes() const { return bits_.capacity() * sizeof(std::uint64_t); }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Bit (v, i) is set iff v is reachable from sources[i] along `g`.
/// Sources are processed 64 at a time with word-parallel propagation.
BitMatrix multi_source_reach(const CsrView& g, std::span<const std::uint32_t> sources);

}  // namespace txreach
