#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "txreach/geom.hpp"

namespace txreach {

using Chain = std::vector<PointId>;

struct ChainDecomposition {
  static constexpr std::int32_t kInRemaining = -1;

  std::vector<Chain> chains;
  std::vector<PointId> remaining;  // ascending ids
  std::size_t threshold = 0;       // L = ceil(n^(1/3))
  std::vector<std::int32_t> chain_of;  // chain index per point, kInRemaining for R
  std::vector<std::uint32_t> position;  // 1-based position inside its chain

  bool in_remaining(PointId p) const { return chain_of[p] == kInRemaining; }
  /// Rebuilds chain_of / position from chains and remaining.
  void index(std::size_t n);
};

/// Greedy extraction by ascending radius: the smallest live disk D_p is
/// removed, and if L further live disks contain p they are split by six
/// cones at p into radius-sorted chains (p heads the first nonempty one);
/// otherwise p goes to R.
ChainDecomposition extract_chains(const TransmissionInstance& inst);

/// Radii non-decreasing and every later point reaches every earlier one.
bool is_chain(const TransmissionInstance& inst, std::span<const PointId> seq);

/// Number of disks of S containing x (linear scan).
std::size_t thickness_at(const TransmissionInstance& inst, std::span<const PointId> s, Vec2 x);

}  // namespace txreach
