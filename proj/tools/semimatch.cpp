// semimatch: run, benchmark and verify the multi-pass streaming matcher.
//
// Exit status: 0 ok, 1 verification failed, 2 bad input or configuration,
// 3 invariant violation under --assert full.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "semimatch/matching.hpp"
#include "semimatch/oracle.hpp"
#include "semimatch/params.hpp"
#include "semimatch/phase_engine.hpp"
#include "semimatch/report.hpp"
#include "semimatch/stream.hpp"

using namespace semimatch;

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;
  std::string gen;
  std::string eps = "0.5";
  std::string mode = "quiescent";
  std::string order = "file";
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> tau;
  std::optional<std::uint32_t> lmax;
  std::optional<std::uint64_t> limit;
  std::optional<std::uint64_t> phases;
  bool verify = false;
  std::string output;
  std::string asserts = "off";
  std::string dump;
  std::string matching_out;
  std::string run_id = "run";
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SEMIMATCH_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("SEMIMATCH_SEED is not a number: ") + env);
    }
  }
  return 1;
}

Params make_params(const RunConfig& c) {
  ParamOverrides o;
  o.bundles_per_phase = c.tau;
  o.max_path_length = c.lmax;
  o.hold_limit = c.limit;
  o.phase_budget = c.phases;
  return compute_params(parse_rational(c.eps), parse_mode(c.mode), o);
}

EdgeList load_graph(const RunConfig& c) {
  if (c.input.empty() == c.gen.empty()) throw ConfigError("give exactly one of --input and --gen");
  if (!c.input.empty()) return open_edge_list_file(c.input);
  return generate_from_spec(c.gen, c.seed);
}

/// Output stream for --output, or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot write " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

bool ratio_ok(std::size_t size, std::size_t opt, const Rational& eps) {
  return Rational(BigInt(size)) * (Rational(1) + eps) >= Rational(BigInt(opt));
}

int cmd_run(const RunConfig& c) {
  const Params params = make_params(c);
  const AssertLevel asserts = parse_assert_level(c.asserts);
  EdgeList g = load_graph(c);
  EdgeStream stream(g, parse_order_policy(c.order), c.seed);
  Engine engine(params, asserts);
  std::ostringstream trace;
  std::ofstream dump_file;
  if (!c.dump.empty()) {
    dump_file.open(c.dump);
    if (!dump_file) throw ConfigError("cannot write " + c.dump);
    engine.set_dump(&dump_file);
  } else if (asserts == AssertLevel::kFull) {
    engine.set_dump(&trace);
  }
  const Matching m = engine.run(stream);
  const RunStats& stats = engine.stats();

  CsvRecord rec{c.run_id, g.n, g.edges.size(), params.eps, params.mode, stats, m.size(), std::nullopt};
  int status = 0;
  if (c.verify) {
    if (auto v = validate_matching(g, m)) {
      std::cerr << "invalid matching: " << v->message << "\n";
      status = kExitVerify;
    }
    if (g.edges.size() <= kOracleEdgeBudget) {
      rec.opt_size = max_matching_exact(g).opt_size;
      if (!ratio_ok(m.size(), *rec.opt_size, params.eps)) status = kExitVerify;
    } else {
      std::cerr << "note: " << g.edges.size() << " edges exceed the oracle budget; ratio not checked\n";
    }
  }
  Sink sink(c.output);
  sink.get() << csv_header() << "\n" << csv_row(rec) << "\n";
  if (!c.matching_out.empty()) {
    std::ofstream out(c.matching_out);
    write_matching(out, m);
  }
  if (asserts == AssertLevel::kFull && stats.violation_count > 0) {
    std::cerr << stats.violation_count << " invariant violation(s):\n";
    for (const auto& v : stats.violations) std::cerr << "  " << v << "\n";
    // The last bundle's structure dump is enough to reproduce most reports.
    const std::string all = trace.str();
    const auto last = all.rfind("phase ");
    if (last != std::string::npos) std::cerr << all.substr(last);
    return kExitInvariant;
  }
  return status;
}

struct BenchConfig {
  std::vector<std::string> eps{"1", "0.5"};
  std::vector<std::size_t> n{100};
  std::vector<std::uint64_t> seeds{1};
  std::string gen = "path";
  std::size_t m_factor = 3;
  std::string mode = "budget";
  std::string order = "perm";
  bool verify = false;
  unsigned jobs = 1;
  std::string output;
};

struct BenchJob {
  std::string eps;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

struct BenchResult {
  std::string row;
  bool ok = true;
  std::string error;
};

BenchResult bench_one(const BenchConfig& c, const BenchJob& job) {
  BenchResult r;
  try {
    const Params params = compute_params(parse_rational(job.eps), parse_mode(c.mode));
    std::string spec = c.gen + ":" + std::to_string(job.n);
    if (c.gen == "random") spec += ":" + std::to_string(c.m_factor * job.n);
    if (c.gen == "two-greedy-trap") spec = c.gen;
    EdgeList g = generate_from_spec(spec, job.seed);
    EdgeStream stream(g, parse_order_policy(c.order), job.seed);
    const RunResult run_result = run(stream, params);
    CsvRecord rec{c.gen + "-n" + std::to_string(job.n) + "-eps" + job.eps + "-s" +
                      std::to_string(job.seed),
                  g.n,
                  g.edges.size(),
                  params.eps,
                  params.mode,
                  run_result.stats,
                  run_result.matching.size(),
                  std::nullopt};
    if (c.verify && g.edges.size() <= kOracleEdgeBudget) {
      rec.opt_size = max_matching_exact(g).opt_size;
      r.ok = ratio_ok(run_result.matching.size(), *rec.opt_size, params.eps) &&
             !validate_matching(g, run_result.matching);
    }
    r.row = csv_row(rec);
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = e.what();
  }
  return r;
}

int cmd_bench(const BenchConfig& c) {
  for (const auto& e : c.eps) parse_rational(e);
  parse_mode(c.mode);
  parse_order_policy(c.order);
  std::vector<BenchJob> jobs;
  for (const auto& e : c.eps) {
    for (std::size_t n : c.n) {
      for (std::uint64_t s : c.seeds) jobs.push_back({e, n, s});
    }
  }
  std::vector<BenchResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) results[i] = bench_one(c, jobs[i]);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(c.jobs, jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Sink sink(c.output);
  sink.get() << csv_header() << "\n";
  int status = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].error.empty()) {
      std::cerr << "run " << i << ": " << results[i].error << "\n";
      status = kExitConfig;
      continue;
    }
    sink.get() << results[i].row << "\n";
    if (!results[i].ok && status == 0) status = kExitVerify;
  }
  return status;
}

int cmd_verify(const std::string& graph_path, const std::string& matching_path) {
  const EdgeList g = open_edge_list_file(graph_path);
  std::ifstream in(matching_path);
  if (!in) throw ConfigError("cannot open " + matching_path);
  std::vector<Vertex> mates(g.n, kNoVertex);
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  std::size_t line = 0;
  std::string text;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty() || text[0] == '#') continue;
    std::istringstream fields(text);
    if (!(fields >> u >> v) || u >= g.n || v >= g.n) {
      throw ParseError(line, "expected two vertex ids below " + std::to_string(g.n));
    }
    if (mates[u] != kNoVertex || mates[v] != kNoVertex) {
      std::cout << "invalid: vertex reused on line " << line << "\n";
      return kExitVerify;
    }
    mates[u] = static_cast<Vertex>(v);
    mates[v] = static_cast<Vertex>(u);
  }
  const Matching m = Matching::from_mates(mates);
  if (auto bad = validate_matching(g, m)) {
    std::cout << "invalid: " << bad->message << "\n";
    return kExitVerify;
  }
  std::cout << "valid matching of size " << m.size() << (is_maximal(g, m) ? ", maximal" : ", not maximal")
            << "\n";
  if (g.edges.size() <= kOracleEdgeBudget) {
    const auto opt = max_matching_exact(g).opt_size;
    std::cout << "maximum " << opt << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-pass semi-streaming (1+eps)-approximate maximum matching"};
  app.require_subcommand(1);

  RunConfig rc;
  bool seed_given = false;
  auto* run_cmd = app.add_subcommand("run", "run the matcher on one graph and print a CSV row");
  run_cmd->add_option("--input", rc.input, "edge-list file: header \"n m\", then one edge per line");
  run_cmd->add_option("--gen", rc.gen, "generator: path:N, cycle:N, random:N:M, two-greedy-trap");
  run_cmd->add_option("--eps", rc.eps, "approximation parameter in (0,1], e.g. 0.5 or 1/3")
      ->capture_default_str();
  run_cmd->add_option("--mode", rc.mode, "quiescent or budget")->capture_default_str();
  run_cmd->add_option("--order", rc.order, "stream order: file, perm, reseed")->capture_default_str();
  run_cmd->add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t s) { rc.seed = s; seed_given = true; },
      "seed for orders and generators (default $SEMIMATCH_SEED or 1)");
  run_cmd->add_option("--tau", rc.tau, "override bundles per phase");
  run_cmd->add_option("--lmax", rc.lmax, "override maximum active path length");
  run_cmd->add_option("--limit", rc.limit, "override on-hold vertex limit");
  run_cmd->add_option("--phases", rc.phases, "override phase budget T");
  run_cmd->add_flag("--verify", rc.verify, "compare against the exact oracle when small enough");
  run_cmd->add_option("--output", rc.output, "CSV destination (default stdout)");
  run_cmd->add_option("--assert", rc.asserts, "invariant checks: off, boundary, full")
      ->capture_default_str();
  run_cmd->add_option("--dump", rc.dump, "write a structure dump after every bundle");
  run_cmd->add_option("--matching", rc.matching_out, "write the final matching, one edge per line");
  run_cmd->add_option("--run-id", rc.run_id, "value of the run_id column")->capture_default_str();

  BenchConfig bc;
  auto* bench_cmd = app.add_subcommand("bench", "sweep eps x n x seeds and print one CSV row per run");
  auto* eps_opt = bench_cmd->add_option("--eps", bc.eps, "comma-separated eps values")->delimiter(',')->expected(0, 1 << 20);
  auto* n_opt = bench_cmd->add_option("--n", bc.n, "comma-separated sizes")->delimiter(',')->expected(0, 1 << 20);
  auto* seeds_opt = bench_cmd->add_option("--seeds", bc.seeds, "comma-separated seeds")->delimiter(',')
      ->expected(0, 1 << 20);
  bench_cmd->add_option("--gen", bc.gen, "path, cycle, random or two-greedy-trap")->capture_default_str();
  bench_cmd->add_option("--m-factor", bc.m_factor, "random graphs get m = factor * n edges")
      ->capture_default_str();
  bench_cmd->add_option("--mode", bc.mode, "quiescent or budget")->capture_default_str();
  bench_cmd->add_option("--order", bc.order, "stream order: file, perm, reseed")->capture_default_str();
  bench_cmd->add_flag("--verify", bc.verify, "check ratios against the exact oracle where it applies");
  bench_cmd->add_option("--jobs", bc.jobs, "parallel runs; row order is unaffected")->capture_default_str();
  bench_cmd->add_option("--output", bc.output, "CSV destination (default stdout)");

  std::string verify_graph;
  std::string verify_matching;
  auto* verify_cmd = app.add_subcommand("verify", "check a matching file against a graph");
  verify_cmd->add_option("--input", verify_graph, "edge-list file")->required();
  verify_cmd->add_option("--matching", verify_matching, "matching file, one edge per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  // A list option given without values means an empty sweep.
  auto given_empty = [](const CLI::Option* opt) {
    const auto& r = opt->results();
    return opt->count() > 0 && std::all_of(r.begin(), r.end(), [](const auto& s) { return s.empty(); });
  };
  if (given_empty(eps_opt)) bc.eps.clear();
  if (given_empty(n_opt)) bc.n.clear();
  if (given_empty(seeds_opt)) bc.seeds.clear();

  try {
    if (!seed_given) rc.seed = default_seed();
    if (*run_cmd) return cmd_run(rc);
    if (*bench_cmd) return cmd_bench(bc);
    if (*verify_cmd) return cmd_verify(verify_graph, verify_matching);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
