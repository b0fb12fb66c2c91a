#include <cmath>
#include <set>

#include "doctest.h"
#include "txreach/generate.hpp"
#include "txreach/instance_io.hpp"

using namespace txreach;

TEST_CASE("splitmix64 reference outputs") {
  // Published reference sequence for seed 1234567.
  SplitMix64 g(1234567);
  CHECK(g.next() == 6457827717110365317ULL);
  CHECK(g.next() == 3203168211198807973ULL);
  CHECK(g.next() == 9817491932198370423ULL);
  CHECK(g.next() == 4593380528125082431ULL);
  CHECK(g.next() == 16408922859458223821ULL);
}

TEST_CASE("bounded draws") {
  SplitMix64 g(3);
  for (int i = 0; i < 1000; ++i) {
    CHECK(g.below(7) < 7);
    const double u = g.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK_THROWS_AS((void)g.below(0), std::invalid_argument);
}

TEST_CASE("distribution names") {
  CHECK(parse_distribution("uniform").distribution == Distribution::uniform);
  CHECK(parse_distribution("bounded-psi:8").psi == 8.0);
  CHECK(distribution_name(parse_distribution("bounded-psi:2.5")) == "bounded-psi:2.5");
  CHECK_THROWS_AS((void)parse_distribution("bounded-psi:0.5"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_distribution("bounded-psi8"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_distribution("gaussian"), std::invalid_argument);
}

TEST_CASE("n = 0 gives the empty instance") {
  for (const char* d : {"uniform", "clustered", "bounded-psi:4", "thick-adversarial"}) {
    CHECK(generate(0, parse_distribution(d), 1).size() == 0);
  }
}

TEST_CASE("bounded-psi(1) gives equal radii") {
  const auto inst = generate(100, parse_distribution("bounded-psi:1"), 5);
  REQUIRE(inst.size() == 100);
  for (PointId p = 0; p < inst.size(); ++p) CHECK(inst.radius(p) == inst.radius(0));
}

TEST_CASE("determinism and validity") {
  for (const char* d : {"uniform", "clustered", "bounded-psi:8", "thick-adversarial"}) {
    const auto spec = parse_distribution(d);
    const auto a = generate(100, spec, 7);
    const auto b = generate(100, spec, 7);
    CHECK(format_instance(a) == format_instance(b));
    CHECK(format_instance(a) != format_instance(generate(100, spec, 8)));
    CHECK(a.exact());
    std::set<std::pair<double, double>> seen;
    for (PointId p = 0; p < a.size(); ++p) {
      CHECK(seen.insert({a.pos(p).x, a.pos(p).y}).second);
      CHECK(a.pos(p).x == std::floor(a.pos(p).x));
      CHECK(a.radius(p) >= 1000.0);
    }
  }
}

TEST_CASE("bounded-psi clamps radii to [1, psi]") {
  for (double psi : {2.0, 8.0, 64.0}) {
    GeneratorSpec s;
    s.distribution = Distribution::bounded_psi;
    s.psi = psi;
    const auto inst = generate(300, s, 11);
    CHECK(inst.min_radius() == 1000.0);
    CHECK(inst.max_radius() == psi * 1000.0);
  }
}

TEST_CASE("thick-adversarial stacks many disks") {
  const auto inst = generate(400, parse_distribution("thick-adversarial"), 2);
  // Small square, wide radii: point 0 lies in many disks.
  std::size_t cover = 0;
  for (PointId p = 0; p < inst.size(); ++p) cover += inst.reaches_directly(p, 0) ? 1 : 0;
  CHECK(cover > 20);
}
