#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "txreach/discrete_oracle.hpp"
#include "txreach/instance_io.hpp"

using namespace txreach;

TEST_CASE("parse plain integers") {
  const auto inst = parse_instance("3\n0 0 2\n1 0 1\n3 0 2.5\n");
  REQUIRE(inst.size() == 3);
  CHECK(inst.decimal_exponent() == 1);
  CHECK(inst.pos(2).x == 30.0);
  CHECK(inst.radius(2) == 25.0);
  CHECK(inst.exact());
  CHECK(format_instance(inst) == "3\n0.0 0.0 2.0\n1.0 0.0 1.0\n3.0 0.0 2.5\n");
}

TEST_CASE("parse -> format -> parse keeps values") {
  const std::string text = "4\n-1.25 3 0.5\n2 -0.001 7\n100000 0 1.125\n0.5 0.5 0.5\n";
  const auto a = parse_instance(text);
  const auto b = parse_instance(format_instance(a));
  REQUIRE(a.size() == b.size());
  for (PointId p = 0; p < a.size(); ++p) {
    CHECK(a.from_working(a.pos(p).x) == b.from_working(b.pos(p).x));
    CHECK(a.from_working(a.pos(p).y) == b.from_working(b.pos(p).y));
    CHECK(a.from_working(a.radius(p)) == b.from_working(b.radius(p)));
  }
  CHECK(format_instance(a) == format_instance(b));
  CHECK(instance_hash(a) == instance_hash(b));
}

TEST_CASE("values too wide for scaling fall back to doubles") {
  const auto inst = parse_instance("2\n0.1234567890123456789 0 1\n5 0 1\n");
  CHECK(inst.decimal_exponent() == 0);
  CHECK(inst.pos(0).x == doctest::Approx(0.1234567890123456789));
  const auto again = parse_instance(format_instance(inst));
  CHECK(again.pos(0).x == inst.pos(0).x);
  CHECK(again.pos(1).x == inst.pos(1).x);
}

TEST_CASE("empty instance") {
  const auto inst = parse_instance("0\n");
  CHECK(inst.size() == 0);
  CHECK(format_instance(inst) == "0\n");
}

TEST_CASE("malformed instance text") {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      (void)parse_instance(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 999;
  };
  CHECK(line_of("") == 1);
  CHECK(line_of("x\n") == 1);
  CHECK(line_of("-1\n") == 1);
  CHECK(line_of("2\n0 0 1\n") == 3);
  CHECK(line_of("1\n0 0\n") == 2);
  CHECK(line_of("1\n0  0 1\n") == 2);
  CHECK(line_of("1\n0 0 1e3\n") == 2);
  CHECK(line_of("1\n0 0 .5\n") == 2);
  CHECK(line_of("1\n0 0 1.\n") == 2);
  CHECK(line_of("1\n0 0 nan\n") == 2);
  CHECK(line_of("1\n0 0 1\n0 0 1\n") == 3);
  // Rejected by the instance itself: duplicate point, non-positive radius.
  CHECK_THROWS_AS((void)parse_instance("2\n0 0 1\n0 0 2\n"), ParseError);
  CHECK_THROWS_AS((void)parse_instance("1\n0 0 0\n"), ParseError);
  CHECK_THROWS_AS((void)parse_instance("1\n0 0 -1\n"), ParseError);
}

TEST_CASE("CRLF and trailing blank lines") {
  const auto inst = parse_instance("2\r\n0 0 1\r\n1 0 1\r\n\n");
  CHECK(inst.size() == 2);
}

TEST_CASE("query files") {
  const auto inst = parse_instance("3\n0 0 2\n1 0 1\n3 0 2.5\n");
  const auto qs = parse_queries("D 0 2\n\nC 1 2.25 -0.5\nD 2 0\n", inst);
  REQUIRE(qs.size() == 3);
  CHECK(qs[0].kind == Query::Kind::discrete);
  CHECK(qs[0].s == 0);
  CHECK(qs[0].q == 2);
  CHECK(qs[1].kind == Query::Kind::continuous);
  CHECK(qs[1].t.x == 22.5);  // working units: tenths
  CHECK(qs[1].t.y == -5.0);

  CHECK_THROWS_AS((void)parse_queries("D 0 3\n", inst), ParseError);
  CHECK_THROWS_AS((void)parse_queries("D 0\n", inst), ParseError);
  CHECK_THROWS_AS((void)parse_queries("X 0 1\n", inst), ParseError);
  CHECK_THROWS_AS((void)parse_queries("C 0 1 y\n", inst), ParseError);
  try {
    (void)parse_queries("D 0 1\nD 0 -1\n", inst);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("D 0 2 on fixture A is unreachable") {
  const auto inst = parse_instance("3\n0 0 2\n1 0 1\n3 0 2.5\n");
  const DiscreteOracle o(inst);
  const auto qs = parse_queries("D 0 2\n", inst);
  CHECK_FALSE(o.query(qs[0].s, qs[0].q));
  CHECK(o.query(2, 0));
}

TEST_CASE("hash tracks content") {
  const auto a = parse_instance("2\n0 0 1\n1 0 1\n");
  const auto b = parse_instance("2\n0 0 1\n1 0 2\n");
  const auto c = parse_instance("2\n0.0 0 1\n1 0 1.0\n");
  CHECK(instance_hash(a) != instance_hash(b));
  CHECK(instance_hash(a) == instance_hash(parse_instance(format_instance(a))));
  CHECK(instance_hash(a) != instance_hash(c));  // different unit scale
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS((void)read_instance_file("/nonexistent/x.txt"), ParseError);
}
