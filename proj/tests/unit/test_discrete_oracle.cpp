#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "txreach/discrete_oracle.hpp"
#include "txreach/reference.hpp"

using namespace txreach;

TEST_CASE("chain indices on fixture B") {
  const auto b = txtest::fixture_b();
  const std::vector<Chain> chains{{0, 1, 2}};
  const auto h = build_spanner(b, 20);
  const auto t = build_chain_indices(h, chains);
  CHECK(t.i(0, 0) == 3);
  CHECK(t.j(0, 0) == 1);
  CHECK(t.i(0, 2) == 3);
  CHECK(t.j(0, 2) == 1);
  CHECK(t == chain_indices_by_closure(b, chains));
}

TEST_CASE("sentinels for points unrelated to a chain") {
  const std::vector<TransmissionInstance::Raw> raw{{0, 0, 1}, {1, 0, 2}, {50, 50, 1}};
  const TransmissionInstance inst(raw);
  const std::vector<Chain> chains{{0, 1}};
  const auto t = build_chain_indices(build_spanner(inst, 20), chains);
  CHECK(t.i(0, 2) == 0);
  CHECK(t.j(0, 2) == 3);
  CHECK(t.i(0, 0) >= 1);
  CHECK(t.j(0, 1) <= 2);
  CHECK_FALSE(t.linked(2, 0));
  CHECK(t.linked(1, 0));
}

TEST_CASE("discrete oracle examples") {
  const DiscreteOracle a(txtest::fixture_a());
  CHECK(a.query(2, 0));
  CHECK_FALSE(a.query(0, 2));
  for (PointId p = 0; p < 3; ++p) CHECK(a.query(p, p));
  CHECK_THROWS_AS(a.query(0, 3), std::domain_error);
  CHECK_THROWS_AS(a.query(5, 5), std::domain_error);

  const DiscreteOracle b(txtest::fixture_b());
  CHECK(b.chains().chains.size() == 1);
  CHECK(b.query(0, 2));
  CHECK(b.query(2, 0));

  const DiscreteOracle empty{TransmissionInstance{}};
  CHECK_THROWS_AS(empty.query(0, 0), std::domain_error);
}

namespace {

TransmissionInstance mixed_instance(std::uint64_t seed) {
  const std::size_t n = 30 + (seed * 37) % 240;
  switch (seed % 4) {
    case 0: return txtest::random_instance(n, seed, txtest::side_for(n, 5, 4), 2, 8);
    case 1: return txtest::random_instance(n, seed, 40, 1, 60);  // thick, many chains
    case 2: return txtest::random_instance(n, seed, txtest::side_for(n, 20, 6), 1, 100);
    default: return txtest::random_instance(n, seed, txtest::side_for(n, 3, 2), 1, 3);
  }
}

}  // namespace

TEST_CASE("exactness, chain tables and branch properties") {
  std::size_t with_chains = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto inst = mixed_instance(seed);
    const DiscreteOracle o(inst);
    const auto cl = reference::closure(inst);
    const std::size_t n = inst.size();
    const auto& d = o.chains();
    with_chains += !d.chains.empty();

    REQUIRE(o.indices() == chain_indices_by_closure(inst, d.chains));

    const auto r_inst = inst.subset(d.remaining);
    const auto r_cl = reference::closure(r_inst);
    for (std::size_t a = 0; a < d.remaining.size(); ++a) {
      for (std::size_t b = 0; b < d.remaining.size(); ++b) {
        if (r_cl.reaches(PointId(a), PointId(b))) REQUIRE(o.tree().query(d.remaining[a], d.remaining[b]));
      }
    }

    std::size_t bad = 0;
    for (PointId p = 0; p < n; ++p) {
      for (PointId q = 0; q < n; ++q) {
        if (o.indices().linked(p, q)) REQUIRE(cl.reaches(p, q));
        bad += o.query(p, q) != cl.reaches(p, q);
      }
    }
    CHECK(bad == 0);
  }
  CHECK(with_chains >= 5);
}

TEST_CASE("save and load") {
  const auto inst = mixed_instance(5);
  const DiscreteOracle o(inst);
  REQUIRE(!o.chains().chains.empty());
  BinaryWriter w;
  o.save(w);
  BinaryReader r(w.bytes());
  const DiscreteOracle u = DiscreteOracle::load(r, inst);
  CHECK(r.done());
  for (PointId p = 0; p < inst.size(); ++p) {
    for (PointId q = 0; q < inst.size(); ++q) REQUIRE(o.query(p, q) == u.query(p, q));
  }
  auto bytes = w.bytes();
  bytes.resize(bytes.size() - 9);
  BinaryReader cut(bytes);
  CHECK_THROWS_AS(DiscreteOracle::load(cut, inst), FormatError);
}
