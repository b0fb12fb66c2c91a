// One line per acceptance criterion: "[PASS] ..." / "[FAIL] ..." (soft
// targets that miss print "[WARN]" alongside a pass). Exit status is nonzero
// iff a hard criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "txreach/bench.hpp"
#include "txreach/chains.hpp"
#include "txreach/continuous_oracle.hpp"
#include "txreach/discrete_oracle.hpp"
#include "txreach/generate.hpp"
#include "txreach/grid_oracle.hpp"
#include "txreach/oracle_file.hpp"
#include "txreach/reference.hpp"
#include "txreach/septree.hpp"
#include "txreach/spanner.hpp"
#include "txreach/traversal.hpp"

using namespace txreach;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  Outcome() = default;
  Outcome(bool p, std::string d) : pass(p), detail(std::move(d)) {}

  bool pass = true;
  std::string detail;
  std::string warning;  // soft target missed
};

const char* const kDistributions[] = {"uniform", "clustered", "bounded-psi:8", "thick-adversarial"};

// Sizes spread evenly over [lo, hi] for `count` seeds.
std::size_t spread(std::size_t i, std::size_t count, std::size_t lo, std::size_t hi) {
  if (count < 2) return hi;
  return lo + (hi - lo) * i / (count - 1);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Box {
  double lo_x, hi_x, lo_y, hi_y;
};

Box disk_box(const TransmissionInstance& inst, std::span<const PointId> ids) {
  Box b{0, 0, 0, 0};
  bool first = true;
  for (PointId p : ids) {
    const double r = inst.radius(p);
    const Vec2 c = inst.pos(p);
    if (first) {
      b = {c.x - r, c.x + r, c.y - r, c.y + r};
      first = false;
    }
    b.lo_x = std::min(b.lo_x, c.x - r);
    b.hi_x = std::max(b.hi_x, c.x + r);
    b.lo_y = std::min(b.lo_y, c.y - r);
    b.hi_y = std::max(b.hi_y, c.y + r);
  }
  return b;
}

Vec2 sample_in(const Box& b, SplitMix64& rng) {
  return {b.lo_x + (b.hi_x - b.lo_x) * rng.unit(), b.lo_y + (b.hi_y - b.lo_y) * rng.unit()};
}

std::vector<PointId> all_ids(std::size_t n) {
  std::vector<PointId> v(n);
  for (PointId p = 0; p < n; ++p) v[p] = p;
  return v;
}

// Child sizes of every node within ceil(2m/3).
std::size_t balance_violations(const SeparationTree& t) {
  std::size_t bad = 0;
  const auto nodes = t.nodes();
  for (const auto& node : nodes) {
    const std::size_t limit = (2 * static_cast<std::size_t>(node.size) + 2) / 3;
    for (std::int32_t child : {node.inner, node.outer}) {
      if (child >= 0 && nodes[static_cast<std::size_t>(child)].size > limit) ++bad;
    }
  }
  return bad;
}

// Shared by criteria 1, 7 and 8.
struct DiscreteSuite {
  std::vector<TransmissionInstance> instances;
  std::vector<DiscreteOracle> oracles;
};

DiscreteSuite& discrete_suite() {
  static DiscreteSuite suite = [] {
    DiscreteSuite s;
    for (const char* d : kDistributions) {
      for (std::size_t seed = 0; seed < 50; ++seed) {
        s.instances.push_back(generate(spread(seed, 50, 2, 300), parse_distribution(d), 1000 + seed));
      }
    }
    for (const auto& inst : s.instances) s.oracles.emplace_back(inst);
    return s;
  }();
  return suite;
}

std::vector<GridOracle>& grid_suite_oracles();

// ---------------------------------------------------------------------------

Outcome discrete_exactness() {
  auto& suite = discrete_suite();
  std::size_t pairs = 0, bad = 0, chains = 0;
  for (std::size_t i = 0; i < suite.instances.size(); ++i) {
    const auto& inst = suite.instances[i];
    const auto cl = reference::closure(inst);
    chains += suite.oracles[i].chains().chains.size();
    for (PointId p = 0; p < inst.size(); ++p) {
      for (PointId q = 0; q < inst.size(); ++q) {
        ++pairs;
        if (suite.oracles[i].query(p, q) != cl.reaches(p, q)) ++bad;
      }
    }
  }
  return {bad == 0, fmt("%zu instances, %zu ordered pairs, %zu chains in total, %zu mismatches",
                        suite.instances.size(), pairs, chains, bad)};
}

std::vector<TransmissionInstance>& grid_instances() {
  static std::vector<TransmissionInstance> v = [] {
    std::vector<TransmissionInstance> out;
    for (double psi : {2.0, 8.0, 64.0}) {
      GeneratorSpec spec;
      spec.distribution = Distribution::bounded_psi;
      spec.psi = psi;
      for (std::size_t seed = 0; seed < 20; ++seed) out.push_back(generate(spread(seed, 20, 20, 300), spec, 2000 + seed));
    }
    return out;
  }();
  return v;
}

std::vector<GridOracle>& grid_suite_oracles() {
  static std::vector<GridOracle> v = [] {
    std::vector<GridOracle> out;
    for (const auto& inst : grid_instances()) out.emplace_back(inst);
    return out;
  }();
  return v;
}

Outcome grid_exactness() {
  const auto& insts = grid_instances();
  const auto& oracles = grid_suite_oracles();
  std::size_t pairs = 0, bad = 0;
  for (std::size_t i = 0; i < insts.size(); ++i) {
    const auto cl = reference::closure(insts[i]);
    for (PointId p = 0; p < insts[i].size(); ++p) {
      for (PointId q = 0; q < insts[i].size(); ++q) {
        ++pairs;
        if (oracles[i].query(p, q) != cl.reaches(p, q)) ++bad;
      }
    }
  }
  return {bad == 0, fmt("%zu instances (psi 2, 8, 64), %zu ordered pairs, %zu mismatches", insts.size(), pairs, bad)};
}

Outcome continuous_exactness() {
  std::size_t queries = 0, bad = 0, hits = 0;
  std::size_t count = 0;
  for (const char* d : kDistributions) {
    for (std::size_t seed = 0; seed < 25; ++seed, ++count) {
      const auto inst = generate(spread(seed, 25, 2, 300), parse_distribution(d), 3000 + seed);
      const ContinuousOracle o(inst);
      const auto cl = reference::closure(inst);
      const auto ids = all_ids(inst.size());
      const Box box = disk_box(inst, ids);
      SplitMix64 rng(seed * 7919 + count);
      for (int i = 0; i < 1000; ++i) {
        const auto s = static_cast<PointId>(rng.below(inst.size()));
        Vec2 t;
        if (i % 2 == 0) {
          t = sample_in(box, rng);
        } else {
          // Near some disk boundary.
          const auto p = static_cast<PointId>(rng.below(inst.size()));
          const double ang = 2 * std::numbers::pi * rng.unit();
          const double rad = inst.radius(p) * (0.9 + 0.2 * rng.unit());
          t = {inst.pos(p).x + rad * std::cos(ang), inst.pos(p).y + rad * std::sin(ang)};
        }
        const bool want = reference::brute_continuous(inst, cl, s, t);
        hits += want;
        ++queries;
        if (o.query(s, t) != want) ++bad;
      }
    }
  }
  return {bad == 0, fmt("%zu instances, %zu queries (%zu reachable), %zu mismatches", count, queries, hits, bad)};
}

Outcome spanner_stretch() {
  const double bound20 = std::tan(63.0 * std::numbers::pi / 180.0) + 1e-6;
  const double bound12 = 2.0 + std::sqrt(3.0) + 1e-6;
  std::size_t bad = 0;
  double worst20 = 1, worst12 = 1;
  for (std::size_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate(spread(seed, 20, 10, 200), parse_distribution(kDistributions[seed % 4]), 4000 + seed);
    const auto h20 = build_spanner(inst, 20);
    const auto h12 = build_spanner(inst, 12);
    const double s20 = reference::brute_stretch(inst, h20.edges());
    const double s12 = reference::brute_stretch(inst, h12.edges());
    worst20 = std::max(worst20, s20);
    worst12 = std::max(worst12, s12);
    bad += (s20 > bound20) + (s12 > bound12);
  }
  return {bad == 0, fmt("20 seeds; worst stretch k=20: %.6f (bound %.7f), k=12: %.6f (bound %.7f), %zu violations",
                        worst20, bound20, worst12, bound12, bad)};
}

Outcome spanner_equivalence() {
  std::size_t bad = 0, edges = 0;
  for (std::size_t seed = 0; seed < 50; ++seed) {
    const auto inst = generate(spread(seed, 50, 40, 2000), parse_distribution(kDistributions[seed % 4]), 5000 + seed);
    for (int k : {9, 12, 20}) {
      const auto h = build_spanner(inst, k);
      const auto nv = build_spanner_naive(inst, k);
      auto a = std::vector<Edge>(h.edges().begin(), h.edges().end());
      auto b = std::vector<Edge>(nv.edges().begin(), nv.edges().end());
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      edges += b.size();
      if (a != b) ++bad;
    }
  }
  return {bad == 0, fmt("50 seeds x k in {9, 12, 20}, %zu naive edges compared, %zu differing edge sets", edges, bad)};
}

Outcome bfs_equivalence() {
  std::size_t bad = 0, sources = 0;
  for (std::size_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate(spread(seed, 20, 100, 2000), parse_distribution(kDistributions[seed % 4]), 6000 + seed);
    const auto h = build_spanner(inst, 20);
    const auto adj = reference::explicit_graph(inst);
    // Every source for small instances, a fixed stride otherwise.
    const std::size_t stride = std::max<std::size_t>(1, inst.size() / 200);
    for (PointId s = 0; s < inst.size(); s += static_cast<PointId>(stride)) {
      ++sources;
      if (bfs_levels(h, inst, s).depth != reference::bfs_depths(adj, s)) ++bad;
    }
  }
  return {bad == 0, fmt("20 seeds, %zu sources, %zu differing depth arrays", sources, bad)};
}

Outcome thickness() {
  auto& suite = discrete_suite();
  std::size_t bad = 0, probes = 0, worst_excess_n = 0;
  double worst_ratio = 0;
  for (std::size_t i = 0; i < suite.instances.size(); ++i) {
    const auto& inst = suite.instances[i];
    const auto& r = suite.oracles[i].chains().remaining;
    const auto bound = static_cast<std::size_t>(6 * std::ceil(std::cbrt(static_cast<double>(inst.size())) - 1e-12));
    auto check = [&](Vec2 x) {
      const std::size_t t = thickness_at(inst, r, x);
      ++probes;
      if (t > bound) ++bad;
      if (static_cast<double>(t) / static_cast<double>(bound) > worst_ratio) {
        worst_ratio = static_cast<double>(t) / static_cast<double>(bound);
        worst_excess_n = inst.size();
      }
    };
    for (PointId p : r) check(inst.pos(p));
    if (r.empty()) continue;
    const Box box = disk_box(inst, r);
    SplitMix64 rng(7000 + i);
    for (int k = 0; k < 10000; ++k) check(sample_in(box, rng));
  }
  return {bad == 0, fmt("%zu probes; worst thickness / bound = %.3f (n = %zu), %zu violations", probes, worst_ratio,
                        worst_excess_n, bad)};
}

// Disjoint disks by rejection on a bucket grid, radii in [1, 3].
std::vector<Disk> disjoint_disks(std::size_t m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double side = std::sqrt(static_cast<double>(m) * std::numbers::pi * 4.0 / 0.35);
  const double cell = 6.0;
  const auto cells = static_cast<std::size_t>(std::ceil(side / cell)) + 1;
  std::vector<std::vector<std::uint32_t>> bucket(cells * cells);
  std::vector<Disk> out;
  while (out.size() < m) {
    const Vec2 c{side * rng.unit(), side * rng.unit()};
    const double r = 1.0 + 2.0 * rng.unit();
    const auto cx = static_cast<std::size_t>(c.x / cell), cy = static_cast<std::size_t>(c.y / cell);
    bool ok = true;
    for (std::size_t x = cx ? cx - 1 : 0; ok && x <= std::min(cells - 1, cx + 1); ++x) {
      for (std::size_t y = cy ? cy - 1 : 0; ok && y <= std::min(cells - 1, cy + 1); ++y) {
        for (std::uint32_t j : bucket[x * cells + y]) {
          const double dx = out[j].center.x - c.x, dy = out[j].center.y - c.y;
          const double rr = out[j].radius + r;
          if (dx * dx + dy * dy <= rr * rr) {
            ok = false;
            break;
          }
        }
      }
    }
    if (!ok) continue;
    bucket[cx * cells + cy].push_back(static_cast<std::uint32_t>(out.size()));
    out.push_back({c, r});
  }
  return out;
}

Outcome separator_contract(double c_target) {
  std::size_t bad = 0, nodes = 0;
  for (const auto& o : discrete_suite().oracles) {
    bad += balance_violations(o.tree());
    nodes += o.tree().nodes().size();
  }
  for (const auto& o : grid_suite_oracles()) {
    bad += balance_violations(o.tree());
    nodes += o.tree().nodes().size();
  }
  // Root splits of 1-thick sets: least-squares fit crossings = c * sqrt(m).
  double sxy = 0, sxx = 0, worst = 0;
  for (std::size_t seed = 0; seed < 50; ++seed) {
    const std::size_t m = spread(seed, 50, 100, 10000);
    const auto disks = disjoint_disks(m, 8000 + seed);
    std::vector<std::uint32_t> ids(m);
    for (std::uint32_t i = 0; i < m; ++i) ids[i] = i;
    const auto split = find_separating_circle(disks, ids);
    const std::size_t limit = (2 * m + 2) / 3;
    if (split.inside.size() > limit || split.outside.size() > limit) ++bad;
    const double root = std::sqrt(static_cast<double>(m));
    const auto x = static_cast<double>(split.crossing.size());
    sxy += x * root;
    sxx += root * root;
    worst = std::max(worst, x / root);
  }
  const double c = sxy / sxx;
  Outcome out{bad == 0, fmt("%zu tree nodes + 50 root splits, %zu balance violations; crossings ~ c*sqrt(m) with c = %.3f "
                            "(max ratio %.3f, target <= %.0f)",
                            nodes, bad, c, worst, c_target)};
  if (c > c_target) out.warning = fmt("fitted crossing constant %.3f above %.0f", c, c_target);
  return out;
}

Outcome serialization() {
  std::size_t bad = 0, queries = 0;
  const struct {
    OracleKind kind;
    const char* dist;
  } cases[] = {{OracleKind::discrete, "thick-adversarial"},
               {OracleKind::grid, "bounded-psi:16"},
               {OracleKind::continuous, "thick-adversarial"}};
  std::size_t rejected = 0;
  for (const auto& c : cases) {
    const auto inst = generate(1500, parse_distribution(c.dist), 9000);
    const AnyOracle o = build_oracle(c.kind, inst);
    const auto bytes = save_oracle(o);
    const AnyOracle back = load_oracle(bytes, inst);
    if (kind_of(back) != c.kind) ++bad;
    SplitMix64 rng(9001);
    const Box box = disk_box(inst, all_ids(inst.size()));
    for (int i = 0; i < 10000; ++i) {
      const auto s = static_cast<PointId>(rng.below(inst.size()));
      const auto q = static_cast<PointId>(rng.below(inst.size()));
      ++queries;
      if (query_points(o, s, q) != query_points(back, s, q)) ++bad;
      if (const auto* co = std::get_if<ContinuousOracle>(&o)) {
        const Vec2 t = sample_in(box, rng);
        ++queries;
        if (co->query(s, t) != std::get<ContinuousOracle>(back).query(s, t)) ++bad;
      }
    }
    try {
      (void)load_oracle(bytes, generate(1500, parse_distribution(c.dist), 9001));
    } catch (const FormatError&) {
      ++rejected;
    }
  }
  return {bad == 0 && rejected == 3,
          fmt("3 oracle kinds, %zu queries, %zu mismatches; foreign-instance loads rejected: %zu/3", queries, bad, rejected)};
}

Outcome scaling(const std::string& csv_path, std::vector<std::size_t> sizes) {
  BenchOptions opt;
  opt.sizes = std::move(sizes);
  opt.kind = OracleKind::discrete;
  opt.distribution = parse_distribution("uniform");
  opt.seed = 10000;
  opt.queries = 20000;
  std::ofstream csv(csv_path);
  const auto rows = run_bench(opt, csv);
  std::vector<double> x, y;
  double largest_build_ms = 0;
  for (const auto& r : rows) {
    x.push_back(static_cast<double>(r.n));
    y.push_back(r.mean_query_us);
    largest_build_ms = r.build_ms;
  }
  const double slope = loglog_slope(x, y);
  csv << "# loglog_slope_mean_query_us," << slope << '\n';
  const double limit_ms = 15 * 60 * 1000.0;
  Outcome out{largest_build_ms <= limit_ms,
              fmt("largest n = %zu built in %.1f s (limit 900 s); mean-query log-log slope %.3f (target <= 0.85); CSV: %s",
                  rows.back().n, largest_build_ms / 1000.0, slope, csv_path.c_str())};
  if (slope > 0.85) out.warning = fmt("query slope %.3f above 0.85", slope);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  std::string csv = "scaling.csv";
  std::string sizes = "10000,30000,100000,250000";
  app.add_option("--only", only, "Criterion numbers to run (default: all)")->delimiter(',');
  app.add_option("--scaling-csv", csv, "Where criterion 10 writes its CSV")->capture_default_str();
  app.add_option("--scaling-sizes", sizes, "Sizes for criterion 10")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::vector<std::size_t> scaling_sizes;
  {
    std::stringstream ss(sizes);
    std::string item;
    while (std::getline(ss, item, ',')) scaling_sizes.push_back(std::stoull(item));
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"discrete oracle exactness", discrete_exactness},
      {"grid oracle exactness", grid_exactness},
      {"continuous oracle exactness", continuous_exactness},
      {"spanner stretch", spanner_stretch},
      {"spanner builder equivalence", spanner_equivalence},
      {"spanner BFS equivalence", bfs_equivalence},
      {"thickness of the remaining set", thickness},
      {"separator contract", [] { return separator_contract(10.0); }},
      {"serialization round trip", serialization},
      {"discrete scaling benchmark", [&] { return scaling(csv, scaling_sizes); }},
  };
  bool ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), number) == only.end()) continue;
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::cout << (out.pass ? "[PASS] " : "[FAIL] ") << number << ". " << criteria[i].first << ": " << out.detail
              << fmt(" (%.1f s)", secs) << '\n';
    if (!out.warning.empty()) std::cout << "[WARN] " << number << ". " << out.warning << '\n';
    std::cout.flush();
    ok = ok && out.pass;
  }
  return ok ? 0 : 1;
}
