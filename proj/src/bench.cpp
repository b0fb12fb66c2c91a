#include "txreach/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace txreach {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_us(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::micro>(b - a).count();
}

struct OracleStats {
  std::size_t bytes = 0;
  std::size_t chains = 0;
  std::size_t crossings = 0;
};

OracleStats stats_of(const AnyOracle& o) {
  OracleStats s;
  std::visit([&](const auto& x) { s.bytes = x.memory_bytes(); }, o);
  if (const auto* g = std::get_if<GridOracle>(&o)) {
    s.crossings = g->tree().root_crossings();
    return s;
  }
  const DiscreteOracle& d =
      std::holds_alternative<ContinuousOracle>(o) ? std::get<ContinuousOracle>(o).discrete() : std::get<DiscreteOracle>(o);
  s.chains = d.chains().chains.size();
  s.crossings = d.tree().root_crossings();
  return s;
}

}  // namespace

BenchRow bench_one(const BenchOptions& opt, std::size_t n) {
  if (n == 0) throw std::invalid_argument("bench: sizes must be positive");
  if (opt.repeats < 1) throw std::invalid_argument("bench: repeats must be >= 1");
  const TransmissionInstance inst = generate(n, opt.distribution, opt.seed + n);

  BenchRow row;
  row.n = n;
  SplitMix64 rng(opt.seed ^ n);
  std::vector<double> samples;
  samples.reserve(opt.queries * static_cast<std::size_t>(opt.repeats));
  double build_total = 0;
  double lo_x = inst.pos(0).x, hi_x = lo_x, lo_y = inst.pos(0).y, hi_y = lo_y;
  for (PointId p = 0; p < n; ++p) {
    lo_x = std::min(lo_x, inst.pos(p).x);
    hi_x = std::max(hi_x, inst.pos(p).x);
    lo_y = std::min(lo_y, inst.pos(p).y);
    hi_y = std::max(hi_y, inst.pos(p).y);
  }
  volatile std::size_t sink = 0;  // keeps the answers observable
  for (int rep = 0; rep < opt.repeats; ++rep) {
    const auto t0 = Clock::now();
    const AnyOracle oracle = build_oracle(opt.kind, inst, opt.k);
    const auto t1 = Clock::now();
    build_total += elapsed_us(t0, t1) / 1000.0;
    if (rep == 0) {
      const auto s = stats_of(oracle);
      row.bytes = s.bytes;
      row.chain_count = s.chains;
      row.separator_crossings = s.crossings;
    }
    const auto* cont = std::get_if<ContinuousOracle>(&oracle);
    for (std::size_t i = 0; i < opt.queries; ++i) {
      const auto s = static_cast<PointId>(rng.below(n));
      if (cont) {
        const Vec2 t{lo_x + (hi_x - lo_x) * rng.unit(), lo_y + (hi_y - lo_y) * rng.unit()};
        const auto a = Clock::now();
        sink = sink + cont->query(s, t);
        samples.push_back(elapsed_us(a, Clock::now()));
      } else {
        const auto q = static_cast<PointId>(rng.below(n));
        const auto a = Clock::now();
        sink = sink + query_points(oracle, s, q);
        samples.push_back(elapsed_us(a, Clock::now()));
      }
    }
  }
  row.build_ms = build_total / opt.repeats;
  if (!samples.empty()) {
    double total = 0;
    for (double v : samples) total += v;
    row.mean_query_us = total / static_cast<double>(samples.size());
    const std::size_t at = std::min(samples.size() - 1, static_cast<std::size_t>(std::ceil(0.99 * samples.size())) - 1);
    std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(at), samples.end());
    row.p99_query_us = samples[at];
  }
  return row;
}

std::string format_bench_row(const BenchRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu,%.3f,%zu,%.4f,%.4f,%zu,%zu", r.n, r.build_ms, r.bytes, r.mean_query_us,
                r.p99_query_us, r.chain_count, r.separator_crossings);
  return buf;
}

std::vector<BenchRow> run_bench(const BenchOptions& opt, std::ostream& csv) {
  std::vector<BenchRow> rows;
  csv << kBenchHeader << '\n' << std::flush;
  for (std::size_t n : opt.sizes) {
    rows.push_back(bench_one(opt, n));
    csv << format_bench_row(rows.back()) << '\n' << std::flush;
  }
  return rows;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("loglog_slope: values must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = m * sxx - sx * sx;
  if (den == 0) throw std::invalid_argument("loglog_slope: x values are all equal");
  return (m * sxy - sx * sy) / den;
}

}  // namespace txreach
