#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "txreach/geom.hpp"

namespace txtest {

using txreach::PointId;
using txreach::TransmissionInstance;
using txreach::Vec2;

// a=0, b=1, c=2
inline TransmissionInstance fixture_a() {
  const std::vector<TransmissionInstance::Raw> raw{{0, 0, 2}, {1, 0, 1}, {3, 0, 2.5}};
  return TransmissionInstance(raw);
}

// p1=0, p2=1, p3=2
inline TransmissionInstance fixture_b() {
  const std::vector<TransmissionInstance::Raw> raw{{0, 0, 1}, {1, 0, 2}, {2, 0, 4}};
  return TransmissionInstance(raw);
}

/// Integer coordinates in [0, side)^2 and integer radii in [rmin, rmax];
/// duplicates are redrawn. Independent of the library's generators.
inline TransmissionInstance random_instance(std::size_t n, std::uint64_t seed, int side, int rmin,
                                            int rmax) {
  if (static_cast<std::size_t>(side) * static_cast<std::size_t>(side) < n) {
    throw std::invalid_argument("random_instance: square too small for distinct points");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(0, side - 1);
  std::uniform_int_distribution<int> rad(rmin, rmax);
  std::set<std::pair<int, int>> used;
  std::vector<TransmissionInstance::Raw> raw;
  while (raw.size() < n) {
    const int x = coord(rng);
    const int y = coord(rng);
    if (!used.insert({x, y}).second) continue;
    raw.push_back({double(x), double(y), double(rad(rng))});
  }
  return TransmissionInstance(raw);
}

/// Side length giving roughly `degree` expected in-neighbours for radii
/// around `r`.
inline int side_for(std::size_t n, double r, double degree) {
  const double area = static_cast<double>(n) * 3.14159 * r * r / degree;
  return std::max(4, static_cast<int>(std::sqrt(area)));
}

}  // namespace txtest
