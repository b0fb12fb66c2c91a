#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "txreach/bench.hpp"
#include "txreach/generate.hpp"
#include "txreach/instance_io.hpp"
#include "txreach/oracle_file.hpp"
#include "txreach/reference.hpp"

using namespace txreach;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitBadInput = 2;

// Raised for invalid combinations of otherwise well-formed arguments.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
  } else {
    write_text_file(path, text);
  }
}

int cmd_gen(std::size_t n, const std::string& dist, std::uint64_t seed, const std::string& out) {
  emit(out, format_instance(generate(n, parse_distribution(dist), seed)));
  return 0;
}

int cmd_build(const std::string& instance_path, const std::string& kind, int k, const std::string& out) {
  if (out.empty()) throw UsageError("build needs -o <oracle file>");
  const OracleKind ok = parse_oracle_kind(kind);
  auto inst = read_instance_file(instance_path);
  write_oracle_file(out, build_oracle(ok, std::move(inst), k));
  return 0;
}

int cmd_query(const std::string& oracle_path, const std::string& instance_path, const std::string& query_path,
              const std::string& out) {
  auto inst = read_instance_file(instance_path);
  const auto queries = parse_queries(read_text_file(query_path), inst);
  const AnyOracle oracle = read_oracle_file(oracle_path, std::move(inst));
  const auto* cont = std::get_if<ContinuousOracle>(&oracle);
  std::string answers;
  answers.reserve(queries.size() * 2);
  for (const Query& q : queries) {
    bool yes;
    if (q.kind == Query::Kind::continuous) {
      if (!cont) throw UsageError("continuous queries need a continuous oracle");
      yes = cont->query(q.s, q.t);
    } else {
      yes = query_points(oracle, q.s, q.q);
    }
    answers += yes ? "1\n" : "0\n";
  }
  emit(out, answers);
  return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& kind, const std::vector<std::string>& pairs,
               std::uint64_t seed, bool allow_large, const std::string& oracle_path) {
  bool all = false;
  std::size_t samples = 0;
  if (pairs.size() == 1 && pairs[0] == "all") {
    all = true;
  } else if (pairs.size() == 2 && pairs[0] == "sample") {
    try {
      std::size_t used = 0;
      samples = std::stoull(pairs[1], &used);
      if (used != pairs[1].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError("--pairs sample needs a count");
    }
  } else {
    throw UsageError("--pairs takes \"all\" or \"sample N\"");
  }
  const OracleKind ok = parse_oracle_kind(kind);
  const auto inst = read_instance_file(instance_path);
  const std::size_t n = inst.size();
  if (n > reference::kDefaultClosureLimit && !allow_large) {
    throw UsageError("reference check above " + std::to_string(reference::kDefaultClosureLimit) +
                     " points needs --allow-large");
  }
  const AnyOracle oracle = oracle_path.empty() ? build_oracle(ok, inst) : read_oracle_file(oracle_path, inst);
  if (kind_of(oracle) != ok) throw UsageError("oracle file holds a " + std::string(oracle_kind_name(kind_of(oracle))) + " oracle");

  std::vector<std::pair<PointId, PointId>> todo;
  if (all) {
    for (PointId s = 0; s < n; ++s) {
      for (PointId q = 0; q < n; ++q) todo.emplace_back(s, q);
    }
  } else if (n > 0) {
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto s = static_cast<PointId>(rng.below(n));
      todo.emplace_back(s, static_cast<PointId>(rng.below(n)));
    }
    std::sort(todo.begin(), todo.end());
  }

  const auto* cont = std::get_if<ContinuousOracle>(&oracle);
  const auto adj = reference::explicit_graph(inst);
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (PointId p = 0; p < n; ++p) {
    const double r = inst.radius(p);
    lo_x = p ? std::min(lo_x, inst.pos(p).x - r) : inst.pos(p).x - r;
    hi_x = p ? std::max(hi_x, inst.pos(p).x + r) : inst.pos(p).x + r;
    lo_y = p ? std::min(lo_y, inst.pos(p).y - r) : inst.pos(p).y - r;
    hi_y = p ? std::max(hi_y, inst.pos(p).y + r) : inst.pos(p).y + r;
  }
  SplitMix64 trng(seed ^ 0x5eed);
  std::size_t mismatches = 0;
  std::vector<std::uint8_t> row;
  PointId row_of = n;
  for (const auto& [s, q] : todo) {
    if (s != row_of) {
      row = reference::reachable_row(adj, s);
      row_of = s;
    }
    if (query_points(oracle, s, q) != static_cast<bool>(row[q])) ++mismatches;
    if (cont) {
      const Vec2 t{lo_x + (hi_x - lo_x) * trng.unit(), lo_y + (hi_y - lo_y) * trng.unit()};
      if (cont->query(s, t) != reference::brute_continuous(inst, row, t)) ++mismatches;
    }
  }
  std::cout << mismatches << " mismatches\n";
  return mismatches == 0 ? 0 : kExitMismatch;
}

std::vector<std::size_t> parse_sizes(const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v == 0) throw UsageError("bad size \"" + item + "\" in --sizes");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw UsageError("--sizes is empty");
  return out;
}

int cmd_bench(BenchOptions opt, const std::string& sizes, const std::string& kind, const std::string& dist,
              const std::string& out) {
  opt.sizes = parse_sizes(sizes);
  opt.kind = parse_oracle_kind(kind);
  opt.distribution = parse_distribution(dist);
  std::ofstream file;
  if (!out.empty() && out != "-") {
    file.open(out);
    if (!file) throw std::runtime_error("cannot write " + out);
  }
  std::ostream& csv = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;
  const auto rows = run_bench(opt, csv);
  if (rows.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& r : rows) {
      x.push_back(static_cast<double>(r.n));
      y.push_back(std::max(r.mean_query_us, 1e-6));
    }
    std::cerr << "log-log slope of mean_query_us vs n: " << loglog_slope(x, y) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reachability oracles for transmission graphs"};
  app.require_subcommand(1);

  std::size_t gen_n = 0;
  std::string gen_dist = "uniform", gen_out;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("-n,--points", gen_n, "Number of points")->required();
  gen->add_option("--dist", gen_dist, "uniform | clustered | bounded-psi[:PSI] | thick-adversarial")->capture_default_str();
  gen->add_option("--seed", gen_seed, "64-bit seed")->capture_default_str();
  gen->add_option("-o,--output", gen_out, "Instance file (default: stdout)");

  std::string build_inst, build_kind = "discrete", build_out;
  int build_k = 20;
  auto* build = app.add_subcommand("build", "Build an oracle file");
  build->add_option("instance", build_inst, "Instance file")->required();
  build->add_option("--oracle", build_kind, "discrete | grid | continuous")->capture_default_str();
  build->add_option("--k", build_k, "Spanner cone count (> 8; unused by grid)")->capture_default_str();
  build->add_option("-o,--output", build_out, "Oracle file")->required();

  std::string q_oracle, q_inst, q_file, q_out;
  auto* query = app.add_subcommand("query", "Answer a query file");
  query->add_option("oracle", q_oracle, "Oracle file")->required();
  query->add_option("instance", q_inst, "Instance file the oracle was built from")->required();
  query->add_option("queries", q_file, "Query file (\"D s q\" / \"C s x y\" lines)")->required();
  query->add_option("-o,--output", q_out, "Answer file (default: stdout)");

  std::string v_inst, v_kind = "discrete", v_oracle;
  std::vector<std::string> v_pairs{"all"};
  std::uint64_t v_seed = 1;
  bool v_large = false;
  auto* verify = app.add_subcommand("verify", "Compare an oracle with brute-force reachability");
  verify->add_option("instance", v_inst, "Instance file")->required();
  verify->add_option("--oracle", v_kind, "discrete | grid | continuous")->capture_default_str();
  verify->add_option("--pairs", v_pairs, "all | sample N")->expected(1, 2);
  verify->add_option("--seed", v_seed, "Seed for sampled pairs and continuous targets")->capture_default_str();
  verify->add_option("--oracle-file", v_oracle, "Check a stored oracle instead of building one");
  verify->add_flag("--allow-large", v_large, "Permit the reference check above 3000 points");

  BenchOptions bopt;
  std::string b_sizes = "1000,3000,10000", b_kind = "discrete", b_dist = "uniform", b_out;
  auto* bench = app.add_subcommand("bench", "Build and query timings as CSV");
  bench->add_option("--sizes", b_sizes, "Comma-separated point counts")->capture_default_str();
  bench->add_option("--oracle", b_kind, "discrete | grid | continuous")->capture_default_str();
  bench->add_option("--repeats", bopt.repeats, "Builds per size")->capture_default_str();
  bench->add_option("--queries", bopt.queries, "Timed queries per build")->capture_default_str();
  bench->add_option("--dist", b_dist, "Instance distribution")->capture_default_str();
  bench->add_option("--seed", bopt.seed, "Base seed")->capture_default_str();
  bench->add_option("--k", bopt.k, "Spanner cone count")->capture_default_str();
  bench->add_option("-o,--output", b_out, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (*gen) return cmd_gen(gen_n, gen_dist, gen_seed, gen_out);
    if (*build) return cmd_build(build_inst, build_kind, build_k, build_out);
    if (*query) return cmd_query(q_oracle, q_inst, q_file, q_out);
    if (*verify) return cmd_verify(v_inst, v_kind, v_pairs, v_seed, v_large, v_oracle);
    if (*bench) return cmd_bench(bopt, b_sizes, b_kind, b_dist, b_out);
  } catch (const ParseError& e) {
    std::cerr << "txreach: malformed input: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const FormatError& e) {
    std::cerr << "txreach: malformed oracle file: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const UsageError& e) {
    std::cerr << "txreach: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "txreach: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::domain_error& e) {
    std::cerr << "txreach: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "txreach: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
