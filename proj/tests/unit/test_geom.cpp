#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "fixtures.hpp"
#include "txreach/geom.hpp"

using namespace txreach;

TEST_CASE("edge predicate on the three-point line") {
  const auto inst = txtest::fixture_a();
  CHECK(edge_exists(inst, 0, 1));
  CHECK_FALSE(edge_exists(inst, 0, 2));
  CHECK(edge_exists(inst, 2, 1));  // |cb| == 2 <= 2.5
  CHECK(edge_exists(inst, 1, 0));  // |ba| == r_b, closed disk
  CHECK_FALSE(edge_exists(inst, 1, 2));
  CHECK_THROWS_AS(edge_exists(inst, 0, 0), std::domain_error);
  CHECK_THROWS_AS(edge_exists(inst, 0, 3), std::domain_error);
}

TEST_CASE("instance validation") {
  using Raw = TransmissionInstance::Raw;
  const std::vector<Raw> dup{{1, 2, 3}, {1, 2, 4}};
  CHECK_THROWS_AS(TransmissionInstance{dup}, std::invalid_argument);
  const std::vector<Raw> zero{{0, 0, 0}};
  CHECK_THROWS_AS(TransmissionInstance{zero}, std::invalid_argument);
  const std::vector<Raw> nan{{std::nan(""), 0, 1}};
  CHECK_THROWS_AS(TransmissionInstance{nan}, std::invalid_argument);
  const std::vector<Raw> signed_zero{{0.0, 1, 1}, {-0.0, 1, 2}};
  CHECK_THROWS_AS(TransmissionInstance{signed_zero}, std::invalid_argument);

  const TransmissionInstance empty;
  CHECK(empty.size() == 0);
  CHECK(empty.psi() == 1.0);
  const std::vector<Raw> one{{5, 5, 3}};
  const TransmissionInstance single(one);
  CHECK(single.psi() == 1.0);

  const auto a = txtest::fixture_a();
  CHECK(a.psi() == 2.5);
  CHECK(a.min_radius() == 1.0);
  CHECK(a.max_radius() == 2.5);
  CHECK_FALSE(a.exact());  // 2.5 is not an integer in these units
  CHECK(txtest::fixture_b().exact());
}

TEST_CASE("cone_of examples and errors") {
  const ConeFamily f8(8);
  CHECK(f8.cone_of({0, 0}, {1, 1}) == 1);
  CHECK(f8.cone_of({0, 0}, {1, 0}) == 0);
  CHECK(f8.cone_of({0, 0}, {-1, 0}) == 4);
  CHECK(f8.cone_of({0, 0}, {0, 1}) == 2);
  CHECK(f8.cone_of({0, 0}, {0, -1}) == 6);
  CHECK(f8.cone_of({3, 4}, {4, 4}) == 0);
  CHECK_THROWS_AS(f8.cone_of({1, 1}, {1, 1}), std::domain_error);
  CHECK(cone_of(12, {0, 0}, {1, 0}) == 0);
  CHECK(cone_of(12, {0, 0}, {0, 1}) == 3);
  CHECK_THROWS_AS(cone_of(8, {0, 0}, {1, 0}), std::domain_error);
  CHECK_THROWS_AS(cone_of(12, {2, 2}, {2, 2}), std::domain_error);
}

TEST_CASE("bisector distance examples") {
  const ConeFamily f8(8);
  CHECK(f8.bisector_distance({0, 0}, {1, 0}) == doctest::Approx(0.9238795).epsilon(1e-7));
  const double a = std::numbers::pi / 8;
  CHECK(f8.bisector_distance({0, 0}, {5 * std::cos(a), 5 * std::sin(a)}) ==
        doctest::Approx(5.0).epsilon(1e-12));
  CHECK(bisector_distance(12, {0, 0}, {2, 0}) == doctest::Approx(1.9318517).epsilon(1e-7));
  CHECK_THROWS_AS(bisector_distance(12, {0, 0}, {0, 0}), std::domain_error);
}

TEST_CASE("cone partition: exactly one cone, rotation steps the index") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-100, 100);
  std::uniform_real_distribution<double> jitter(-0.4, 0.4);
  for (int k : {9, 12, 20, 6}) {
    const ConeFamily f(k);
    const double step = 2 * std::numbers::pi / k;
    for (int it = 0; it < 2000; ++it) {
      const Vec2 apex{u(rng), u(rng)};
      const Vec2 q{u(rng), u(rng)};
      if (apex == q) continue;
      int hits = 0;
      for (int c = 0; c < k; ++c) hits += f.in_cone(c, apex, q);
      REQUIRE(hits == 1);
      // Rotation away from boundaries.
      const int c0 = it % k;
      const double theta = (c0 + 0.5 + jitter(rng)) * step;
      const double len = 1 + std::abs(u(rng));
      const Vec2 v{apex.x + len * std::cos(theta), apex.y + len * std::sin(theta)};
      const Vec2 w{apex.x + len * std::cos(theta + step), apex.y + len * std::sin(theta + step)};
      CHECK(f.cone_of(apex, v) == c0);
      CHECK(f.cone_of(apex, w) == (c0 + 1) % k);
    }
  }
}

TEST_CASE("integer grid directions on cone boundaries are partitioned") {
  const ConeFamily f(12);
  for (int x = -6; x <= 6; ++x) {
    for (int y = -6; y <= 6; ++y) {
      if (x == 0 && y == 0) continue;
      int hits = 0;
      for (int c = 0; c < 12; ++c) hits += f.in_cone(c, {0, 0}, {double(x), double(y)});
      CHECK(hits == 1);
    }
  }
  // Axis rays are exact: (0, 5) lies on the lower ray of cone 3.
  CHECK(f.cone_of({0, 0}, {0, 5}) == 3);
  CHECK(f.cone_of({0, 0}, {-5, 0}) == 6);
}

TEST_CASE("bisector distance bounds and order key") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int k : {9, 12, 20}) {
    const ConeFamily f(k);
    for (int it = 0; it < 3000; ++it) {
      const Vec2 p{u(rng), u(rng)};
      const Vec2 q{u(rng), u(rng)};
      const double d = std::sqrt(sqdist(p, q));
      const double df = f.bisector_distance(p, q);
      CHECK(df <= d * (1 + 1e-12));
      CHECK(df >= d * std::cos(std::numbers::pi / k) * (1 - 1e-12));
      const int c = f.cone_of(p, q);
      const double via_key = (f.order_key(c, q) - f.order_key(c, p)) * f.key_scale();
      CHECK(via_key == doctest::Approx(df).epsilon(1e-9));
    }
  }
}

TEST_CASE("closer bisector projection implies the shortcut edge") {
  // u, v in one cone of p, both reaching p, d_F(p,v) < d_F(p,u):
  // then u reaches v and |uv| < |up|.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-20, 20);
  std::uniform_real_distribution<double> rad(1, 40);
  int checked = 0;
  for (int k : {7, 9, 12, 20}) {
    const ConeFamily f(k);
    for (int it = 0; it < 200000; ++it) {
      const Vec2 p{0, 0};
      const Vec2 a{u(rng), u(rng)};
      const Vec2 b{u(rng), u(rng)};
      if (a == p || b == p || a == b) continue;
      if (f.cone_of(p, a) != f.cone_of(p, b)) continue;
      const double ra = rad(rng);
      const double rb = rad(rng);
      if (sqdist(a, p) > ra * ra || sqdist(b, p) > rb * rb) continue;
      const double da = f.bisector_distance(p, a);
      const double db = f.bisector_distance(p, b);
      if (db < da) {
        CHECK(sqdist(a, b) <= ra * ra);
        CHECK(sqdist(a, b) < sqdist(a, p));
      } else if (da < db) {
        CHECK(sqdist(b, a) <= rb * rb);
        CHECK(sqdist(b, a) < sqdist(b, p));
      }
      ++checked;
    }
  }
  CHECK(checked > 10000);
}

TEST_CASE("ceil_cbrt") {
  CHECK(ceil_cbrt(0) == 0);
  CHECK(ceil_cbrt(1) == 1);
  CHECK(ceil_cbrt(2) == 2);
  CHECK(ceil_cbrt(8) == 2);
  CHECK(ceil_cbrt(9) == 3);
  CHECK(ceil_cbrt(27) == 3);
  CHECK(ceil_cbrt(1000000) == 100);
  CHECK(ceil_cbrt(1000001) == 101);
}

TEST_CASE("subset keeps values and ids are local") {
  const auto b = txtest::fixture_b();
  const std::vector<PointId> ids{2, 0};
  const auto s = b.subset(ids);
  REQUIRE(s.size() == 2);
  CHECK(s.pos(0) == Vec2{2, 0});
  CHECK(s.radius(1) == 1.0);
  CHECK_THROWS_AS(b.subset(std::vector<PointId>{5}), std::domain_error);
}
