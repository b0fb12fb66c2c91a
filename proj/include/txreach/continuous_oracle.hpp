#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "txreach/binary_io.hpp"
#include "txreach/discrete_oracle.hpp"
#include "txreach/membership.hpp"

namespace txreach {

/// At most six points of `rt` (all of whose disks contain t) such that
/// every disk of `rt` contains one of them: per cone of opening pi/3 at t,
/// the member nearest along the bisector (ties by smaller id). A member
/// located at t itself is returned alone.
std::vector<PointId> select_representatives(const TransmissionInstance& inst, std::span<const PointId> rt, Vec2 t);

class ContinuousOracle {
 public:
  ContinuousOracle() = default;
  explicit ContinuousOracle(TransmissionInstance inst, int k = 20);
  /// Adds the reporting structures to a built discrete oracle.
  explicit ContinuousOracle(DiscreteOracle discrete);

  /// Some point reachable from s has t in its disk. Throws std::domain_error
  /// for an invalid s.
  bool query(PointId s, Vec2 t) const;

  /// Ids of R whose disks contain t, ascending.
  std::vector<PointId> report_containing(Vec2 t) const;
  /// 1-based position of the first point of chain c whose disk contains t.
  std::optional<std::size_t> chain_first_containing(std::size_t c, Vec2 t) const;

  const DiscreteOracle& discrete() const { return discrete_; }
  const TransmissionInstance& instance() const { return discrete_.instance(); }
  std::size_t memory_bytes() const;

  void save(BinaryWriter& w) const;
  static ContinuousOracle load(BinaryReader& r, TransmissionInstance inst);

 private:
  void build_reporting();

  DiscreteOracle discrete_;
  OrderedMembershipTree remaining_disks_;  // in ascending id order of R
  std::vector<OrderedMembershipTree> chain_disks_;
};

}  // namespace txreach
