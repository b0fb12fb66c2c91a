#include "txreach/geom.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace txreach {

namespace {

double pow10(int e) {
  double s = 1.0;
  for (int i = 0; i < e; ++i) s *= 10.0;
  return s;
}

bool is_exact_value(double v) {
  return std::floor(v) == v && std::fabs(v) <= kExactMagnitude;
}

struct PosHash {
  std::size_t operator()(const Vec2& v) const {
    const auto hx = std::hash<double>{}(v.x);
    const auto hy = std::hash<double>{}(v.y);
    return hx ^ (hy + 0x9e3779b97f4a7c15ULL + (hx << 6) + (hx >> 2));
  }
};

}  // namespace

TransmissionInstance::TransmissionInstance(std::span<const Raw> points, int decimal_exponent)
    : decimal_exponent_(decimal_exponent) {
  if (decimal_exponent < 0 || decimal_exponent > 15) {
    throw std::invalid_argument("decimal exponent out of range");
  }
  points_.reserve(points.size());
  radius_sq_.reserve(points.size());
  std::unordered_set<Vec2, PosHash> seen;
  seen.reserve(points.size() * 2);
  exact_ = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Raw& p = points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.r)) {
      throw std::invalid_argument("point " + std::to_string(i) + ": non-finite value");
    }
    if (!(p.r > 0.0)) {
      throw std::invalid_argument("point " + std::to_string(i) + ": radius must be positive");
    }
    // +0.0 folds -0.0 onto 0.0 so the duplicate check sees one position.
    const Vec2 key{p.x + 0.0, p.y + 0.0};
    if (!seen.insert(key).second) {
      throw std::invalid_argument("point " + std::to_string(i) + ": duplicate coordinates");
    }
    exact_ = exact_ && is_exact_value(p.x) && is_exact_value(p.y) && is_exact_value(p.r);
    points_.push_back({static_cast<PointId>(i), key.x, key.y, p.r});
    radius_sq_.push_back(p.r * p.r);
  }
  if (!points_.empty()) {
    const auto [lo, hi] = std::minmax_element(
        points_.begin(), points_.end(), [](const auto& a, const auto& b) { return a.r < b.r; });
    min_r_ = lo->r;
    max_r_ = hi->r;
    psi_ = max_r_ / min_r_;
  }
}

double TransmissionInstance::to_working(double v) const { return v * pow10(decimal_exponent_); }

double TransmissionInstance::from_working(double v) const {
  return v / pow10(decimal_exponent_);
}

TransmissionInstance TransmissionInstance::subset(std::span<const PointId> ids) const {
  std::vector<Raw> raw;
  raw.reserve(ids.size());
  for (PointId id : ids) {
    check_id(id);
    const auto& p = points_[id];
    raw.push_back({p.x, p.y, p.r});
  }
  return TransmissionInstance(raw, decimal_exponent_);
}

void TransmissionInstance::check_id(PointId id) const {
  if (id >= points_.size()) {
    throw std::domain_error("point id " + std::to_string(id) + " out of range (n=" +
                            std::to_string(points_.size()) + ")");
  }
}

bool edge_exists(const TransmissionInstance& inst, PointId p, PointId q) {
  inst.check_id(p);
  inst.check_id(q);
  if (p == q) throw std::domain_error("edge_exists: p == q");
  return inst.reaches_directly(p, q);
}

ConeFamily::ConeFamily(int k) : k_(k) {
  if (k < 3) throw std::domain_error("cone count must be at least 3");
  rays_.resize(static_cast<std::size_t>(k));
  bisectors_.resize(static_cast<std::size_t>(k));
  const double step = 2.0 * std::numbers::pi / k;
  for (int c = 0; c < k; ++c) {
    // Quarter-turn rays are set exactly so axis-aligned boundaries are exact.
    if ((4 * c) % k == 0) {
      static constexpr Vec2 kAxis[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
      rays_[static_cast<std::size_t>(c)] = kAxis[(4 * c) / k];
    } else {
      rays_[static_cast<std::size_t>(c)] = {std::cos(step * c), std::sin(step * c)};
    }
    const double mid = step * (c + 0.5);
    bisectors_[static_cast<std::size_t>(c)] = {std::cos(mid), std::sin(mid)};
  }
  key_scale_ = 1.0 / (2.0 * std::sin(std::numbers::pi / k));
}

int ConeFamily::cone_of(Vec2 apex, Vec2 q) const {
  if (apex == q) throw std::domain_error("cone_of: q coincides with the apex");
  const double step = 2.0 * std::numbers::pi / k_;
  double theta = std::atan2(q.y - apex.y, q.x - apex.x);
  if (theta < 0) theta += 2.0 * std::numbers::pi;
  int guess = static_cast<int>(theta / step);
  guess = std::clamp(guess, 0, k_ - 1);
  for (int d : {0, -1, 1}) {
    const int c = (guess + d + k_) % k_;
    if (in_cone(c, apex, q)) return c;
  }
  for (int c = 0; c < k_; ++c) {
    if (in_cone(c, apex, q)) return c;
  }
  throw std::logic_error("cone_of: no cone contains the direction");
}

double ConeFamily::bisector_distance(Vec2 apex, Vec2 q) const {
  const int c = cone_of(apex, q);
  return dot(q - apex, bisector(c));
}

int cone_of(int k, Vec2 apex, Vec2 q) {
  if (k <= 8) throw std::domain_error("cone_of: k must exceed 8");
  return ConeFamily(k).cone_of(apex, q);
}

double bisector_distance(int k, Vec2 apex, Vec2 q) {
  if (k <= 8) throw std::domain_error("bisector_distance: k must exceed 8");
  return ConeFamily(k).bisector_distance(apex, q);
}

std::size_t ceil_cbrt(std::size_t n) {
  std::size_t l = 0;
  while (l * l * l < n) ++l;
  return l;
}

}  // namespace txreach
