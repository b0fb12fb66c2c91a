#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "txreach/generate.hpp"
#include "txreach/oracle_file.hpp"

namespace txreach {

struct BenchOptions {
  std::vector<std::size_t> sizes;
  OracleKind kind = OracleKind::discrete;
  GeneratorSpec distribution;
  std::uint64_t seed = 1;
  int repeats = 1;          // builds per size; timings are averaged
  std::size_t queries = 10000;
  int k = 20;
};

struct BenchRow {
  std::size_t n = 0;
  double build_ms = 0;
  std::size_t bytes = 0;
  double mean_query_us = 0;
  double p99_query_us = 0;
  std::size_t chain_count = 0;
  std::size_t separator_crossings = 0;  // size of the root separator
};

/// Instance for size n is generate(n, distribution, seed + n). Query
/// endpoints come from a SplitMix64 stream seeded with seed ^ n; continuous
/// oracles are timed on continuous queries.
BenchRow bench_one(const BenchOptions& opt, std::size_t n);

inline constexpr const char* kBenchHeader = "n,build_ms,bytes,mean_query_us,p99_query_us,chain_count,separator_crossings";
std::string format_bench_row(const BenchRow& row);

/// Header, then one row per size (flushed as it completes).
std::vector<BenchRow> run_bench(const BenchOptions& opt, std::ostream& csv);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace txreach
