#pragma once

#include <cmath>
#include <cstddef>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace txreach {

using PointId = std::uint32_t;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Every containment decision in the library goes through this expression so
// that independent code paths agree bit-for-bit.
inline double sqdist(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

/// Closed-disk containment: |cx| <= r, decided on squared values.
inline bool in_disk(Vec2 center, double radius_sq, Vec2 x) {
  return sqdist(center, x) <= radius_sq;
}

struct WeightedPoint {
  PointId id = 0;
  double x = 0.0;
  double y = 0.0;
  double r = 0.0;

  Vec2 pos() const { return {x, y}; }
};

/// A radius-weighted point set; the transmission graph has p -> q iff
/// |pq| <= r_p. Values are held in working units: when every input value is
/// a decimal with a bounded number of fractional digits the loader rescales
/// by 10^decimal_exponent() so all coordinates and radii are integers, which
/// makes every squared-distance comparison exact in double precision.
class TransmissionInstance {
 public:
  struct Raw {
    double x;
    double y;
    double r;
  };

  TransmissionInstance() = default;

  /// Validates coordinates/radii and rejects duplicate positions. Ids are
  /// assigned densely in input order.
  explicit TransmissionInstance(std::span<const Raw> points, int decimal_exponent = 0);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  const WeightedPoint& point(PointId id) const { return points_[id]; }
  std::span<const WeightedPoint> points() const { return points_; }
  Vec2 pos(PointId id) const { return points_[id].pos(); }
  double radius(PointId id) const { return points_[id].r; }
  double radius_sq(PointId id) const { return radius_sq_[id]; }

  /// max r / min r; 1 for empty instances.
  double psi() const { return psi_; }
  double min_radius() const { return min_r_; }
  double max_radius() const { return max_r_; }

  /// Number of decimal digits the working units are scaled by.
  int decimal_exponent() const { return decimal_exponent_; }
  /// True when all working values are integers small enough that squared
  /// distances and squared radii are computed without rounding.
  bool exact() const { return exact_; }

  /// Converts a length in file units to working units.
  double to_working(double v) const;
  double from_working(double v) const;

  /// Unchecked edge predicate p -> q.
  bool reaches_directly(PointId p, PointId q) const {
    return in_disk(points_[p].pos(), radius_sq_[p], points_[q].pos());
  }

  /// Induced sub-instance; local id i corresponds to ids[i].
  TransmissionInstance subset(std::span<const PointId> ids) const;

  void check_id(PointId id) const;

 private:
  std::vector<WeightedPoint> points_;
  std::vector<double> radius_sq_;
  double psi_ = 1.0;
  double min_r_ = 0.0;
  double max_r_ = 0.0;
  int decimal_exponent_ = 0;
  bool exact_ = false;
};

struct Edge {
  PointId src = 0;
  PointId dst = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Largest magnitude for which working values count as exact.
inline constexpr double kExactMagnitude = 16777216.0;  // 2^24

/// Edge predicate with id validation. Throws std::domain_error for invalid
/// or equal ids.
bool edge_exists(const TransmissionInstance& inst, PointId p, PointId q);

/// k cones of opening 2*pi/k around a common apex. Cone c spans polar angles
/// [2*pi*c/k, 2*pi*(c+1)/k). Membership is decided with the signed offsets
/// cross(ray_c, v) of each point separately so the naive and tree-based
/// spanner builders, which precompute offsets per point, see identical cones.
class ConeFamily {
 public:
  explicit ConeFamily(int k);

  int k() const { return k_; }
  Vec2 ray(int c) const { return rays_[static_cast<std::size_t>(c)]; }
  Vec2 bisector(int c) const { return bisectors_[static_cast<std::size_t>(c)]; }
  int next(int c) const { return c + 1 == k_ ? 0 : c + 1; }

  /// Signed offset of q from the line through the origin along ray c.
  double offset(int c, Vec2 q) const { return cross(rays_[static_cast<std::size_t>(c)], q); }

  /// q in cone c translated to apex, decided from per-point offsets.
  bool in_cone(int c, Vec2 apex, Vec2 q) const {
    return offset(c, q) >= offset(c, apex) && offset(next(c), q) < offset(next(c), apex);
  }

  /// Throws std::domain_error when q == apex.
  int cone_of(Vec2 apex, Vec2 q) const;

  /// Monotone surrogate of d_F inside cone c: offset(c, q) - offset(c+1, q).
  /// For q in cone c at apex p, d_F(p, q) = (key(q) - key(p)) * key_scale().
  double order_key(int c, Vec2 q) const { return offset(c, q) - offset(next(c), q); }
  double key_scale() const { return key_scale_; }

  /// |apex q| * cos(angle to the bisector of q's cone).
  double bisector_distance(Vec2 apex, Vec2 q) const;

 private:
  int k_;
  std::vector<Vec2> rays_;
  std::vector<Vec2> bisectors_;
  double key_scale_;
};

/// Cone index of q around apex for k > 8 cones.
int cone_of(int k, Vec2 apex, Vec2 q);
/// d_F(apex, q) for k > 8 cones.
double bisector_distance(int k, Vec2 apex, Vec2 q);

/// Smallest L with L^3 >= n.
std::size_t ceil_cbrt(std::size_t n);

}  // namespace txreach
