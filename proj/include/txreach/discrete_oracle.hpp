#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "txreach/binary_io.hpp"
#include "txreach/chains.hpp"
#include "txreach/geom.hpp"
#include "txreach/septree.hpp"
#include "txreach/spanner.hpp"

namespace txreach {

/// Per chain C and point q: i_C(q), the largest 1-based position of C that
/// q reaches (0 if none), and j_C(q), the smallest position reaching q
/// (|C|+1 if none). Stored point-major so one query reads two rows.
class ChainIndexTable {
 public:
  using Index = std::uint16_t;

  ChainIndexTable() = default;
  ChainIndexTable(std::size_t points, std::size_t chains);

  std::size_t point_count() const { return n_; }
  std::size_t chain_count() const { return chains_; }
  Index i(std::size_t chain, PointId q) const { return i_[q * chains_ + chain]; }
  Index j(std::size_t chain, PointId q) const { return j_[q * chains_ + chain]; }
  std::span<const Index> i_row(PointId q) const { return {i_.data() + q * chains_, chains_}; }
  std::span<const Index> j_row(PointId q) const { return {j_.data() + q * chains_, chains_}; }

  /// Some chain C with j_C(q) <= i_C(p).
  bool linked(PointId p, PointId q) const;

  void set_i(std::size_t chain, PointId q, Index v) { i_[q * chains_ + chain] = v; }
  void set_j(std::size_t chain, PointId q, Index v) { j_[q * chains_ + chain] = v; }
  std::size_t memory_bytes() const { return (i_.capacity() + j_.capacity()) * sizeof(Index); }

  void save(BinaryWriter& w) const;
  static ChainIndexTable load(BinaryReader& r);
  friend bool operator==(const ChainIndexTable&, const ChainIndexTable&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t chains_ = 0;
  std::vector<Index> i_;
  std::vector<Index> j_;
};

/// Deletion sweeps over a reachability-preserving subgraph of G. For j,
/// positions are swept first to last: the vertices reachable from p_l that
/// no earlier position reached get j = l and are removed. i is symmetric on
/// the reversed graph, last to first.
ChainIndexTable build_chain_indices(const SpannerGraph& h, std::span<const Chain> chains);

/// Brute-force table from a closure, for validation.
ChainIndexTable chain_indices_by_closure(const TransmissionInstance& inst, std::span<const Chain> chains);

class DiscreteOracle {
 public:
  DiscreteOracle() = default;
  /// `k` is the cone count of the spanners used during the build (k > 8).
  explicit DiscreteOracle(TransmissionInstance inst, int k = 20);

  /// Throws std::domain_error on invalid ids.
  bool query(PointId p, PointId q) const;

  const TransmissionInstance& instance() const { return inst_; }
  const ChainDecomposition& chains() const { return chains_; }
  const ChainIndexTable& indices() const { return table_; }
  const SeparationTree& tree() const { return tree_; }
  std::size_t memory_bytes() const;

  void save(BinaryWriter& w) const;
  /// `inst` must be the instance the oracle was built from.
  static DiscreteOracle load(BinaryReader& r, TransmissionInstance inst);
  /// Checks that the parts fit together and describe `inst`'s points.
  static DiscreteOracle assemble(TransmissionInstance inst, ChainDecomposition chains, ChainIndexTable table,
                                 SeparationTree tree);

 private:
  TransmissionInstance inst_;
  ChainDecomposition chains_;
  ChainIndexTable table_;
  SeparationTree tree_;
};

void save_chains(BinaryWriter& w, const ChainDecomposition& d);
ChainDecomposition load_chains(BinaryReader& r, std::size_t n);

}  // namespace txreach
