// vcheap: trace replay, fuzz campaigns and benchmarks for the violation-cache heaps.
//
// Exit status: 0 success, 1 check failure, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vcheap/bench.hpp"
#include "vcheap/trace.hpp"
#include "vcheap/verification.hpp"

using namespace vcheap;

namespace {

constexpr int kCheckFailure = 1;
constexpr int kUsage = 2;

struct Common {
  std::string variant = "nomeld";
  std::string policy = "amortized";
  std::string metrics;  // path, "-" for stdout
  std::string format = "csv";

  void attach(CLI::App* app) {
    app->add_option("--variant", variant, "heap variant")->check(CLI::IsMember({"nomeld", "meld"}));
    app->add_option("--policy", policy, "reduction policy")->check(CLI::IsMember({"amortized", "worstcase", "simple"}));
    app->add_option("--metrics", metrics, "write metrics to this file ('-' for stdout)");
    app->add_option("--format", format, "metrics format")->check(CLI::IsMember({"csv", "jsonl"}));
  }

  void emit(const std::vector<MetricsRow>& rows) const {
    if (metrics.empty()) return;
    const MetricsFormat f = parse_metrics_format(format);
    if (metrics == "-") emit_metrics(rows, f, std::cout);
    else emit_metrics_file(rows, f, metrics);
  }
};

bool debug_phi() {
  const char* v = std::getenv("HEAP_DEBUG_PHI");
  return v && std::string(v) == "1";
}

int cmd_trace(const Common& c, const std::string& path) {
  std::vector<TraceOp> ops;
  try {
    ops = read_trace_file(path);
  } catch (const TraceError& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return kUsage;
  }
  try {
    ForestOptions opts;
    opts.verify_phi = debug_phi();
    const TraceResult r = run_trace(ops, parse_variant(c.variant), parse_policy(c.policy), opts, &std::cout);
    c.emit({r.metrics});
  } catch (const TraceError& e) {
    std::cout.flush();
    std::cerr << path << ": " << e.what() << '\n';
    return e.usage ? kUsage : kCheckFailure;
  }
  return 0;
}

struct FuzzArgs {
  std::uint64_t seed = 0;
  std::uint64_t seeds = 1;
  std::uint64_t ops = 10000;
  std::uint64_t check_every = 0;
  std::string trace_out;
};

int cmd_fuzz(const Common& c, const FuzzArgs& a) {
  std::vector<MetricsRow> rows;
  OpCounters total;
  const Variant v = parse_variant(c.variant);
  for (std::uint64_t s = a.seed; s < a.seed + a.seeds; ++s) {
    FuzzConfig cfg;
    cfg.variant = v;
    cfg.policy = parse_policy(c.policy);
    cfg.seed = s;
    cfg.ops = a.ops;
    cfg.check_every = a.check_every;
    cfg.verify_phi = debug_phi();
    cfg.failure_trace_path = a.trace_out.empty()
                                 ? "vcheap-fuzz-" + c.variant + "-" + c.policy + "-" + std::to_string(s) + ".trace"
                                 : a.trace_out;
    try {
      const FuzzSummary sum = fuzz_run(cfg);
      std::cout << "seed " << s << ": " << sum.ops_executed << " ops, " << sum.counters.reduction_steps
                << " reduction steps, " << sum.checks_run << " structure checks, " << sum.findings.table_bound_soft
                << " soft bound notes, " << sum.seconds << " s\n";
      total += sum.counters;
      MetricsRow r;
      r.run_id = "fuzz-" + std::to_string(s);
      r.variant = v;
      r.policy = cfg.policy;
      r.counters = sum.counters;
      r.wall_seconds = sum.seconds;
      r.n_end = sum.final_size;
      rows.push_back(r);
    } catch (const FuzzFailure& e) {
      std::cerr << e.what() << "\nreplayable trace: " << e.trace_path << '\n';
      return kCheckFailure;
    }
  }
  std::cout << "case coverage:\n";
  for (const CoverageRow& row : required_coverage(v)) {
    std::uint64_t hits = 0;
    for (ReductionCase rc : row.cases) hits += total.hits(rc);
    std::cout << "  " << row.name << ": " << hits << '\n';
  }
  c.emit(rows);
  return 0;
}

struct BenchArgs {
  std::uint32_t n = 1000;
  std::uint64_t m = 10000;
  std::uint64_t seed = 0;
  std::uint64_t graphs = 1;
  std::uint64_t ops = 100000;
  bool complete = false;
};

int cmd_bench(const Common& c, const std::string& which, const BenchArgs& a) {
  const Variant v = parse_variant(c.variant);
  const Policy p = parse_policy(c.policy);
  std::vector<MetricsRow> rows;
  bool ok = true;
  auto report = [&](BenchResult r, const std::string& id) {
    r.metrics.run_id = id;
    std::cout << id << ": checksum " << r.checksum << (r.ok() ? " ok" : " MISMATCH, expected " + std::to_string(r.expected))
              << ", " << r.metrics.counters.comparisons << " comparisons, " << r.metrics.wall_seconds << " s\n";
    ok = ok && r.ok();
    rows.push_back(r.metrics);
  };
  if (which == "dijkstra") {
    for (std::uint64_t s = a.seed; s < a.seed + a.graphs; ++s) {
      const Graph g = a.complete ? complete_graph(a.n, s) : random_graph(a.n, a.m, s);
      report(bench_dijkstra(g, v, p), "dijkstra-" + std::to_string(s));
    }
  } else if (which == "heapsort") {
    report(bench_heapsort(a.n, a.seed, v, p), "heapsort-" + std::to_string(a.seed));
  } else {
    report(bench_churn(a.ops, a.seed, v, p), "churn-" + std::to_string(a.seed));
  }
  c.emit(rows);
  return ok ? 0 : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Violation-cache heap workbench"};
  app.require_subcommand(1);

  Common common;
  std::string trace_path;
  auto* trace = app.add_subcommand("trace", "replay a trace file, printing deletemin/findmin results");
  trace->add_option("file", trace_path, "trace file")->required();
  common.attach(trace);

  FuzzArgs fa;
  auto* fuzz = app.add_subcommand("fuzz", "differential fuzzing against the multiset oracle");
  common.attach(fuzz);
  fuzz->add_option("--seed", fa.seed, "first seed");
  fuzz->add_option("--seeds", fa.seeds, "number of consecutive seeds");
  fuzz->add_option("--ops", fa.ops, "operations per seed");
  fuzz->add_option("--check-every", fa.check_every, "run the structure checker every N ops (0: never)");
  fuzz->add_option("--trace-out", fa.trace_out, "where to write the failure trace");

  BenchArgs ba;
  std::string which;
  auto* bench = app.add_subcommand("bench", "benchmarks: dijkstra, heapsort, churn");
  bench->add_option("kind", which, "benchmark")->required()->check(CLI::IsMember({"dijkstra", "heapsort", "churn"}));
  common.attach(bench);
  bench->add_option("--n", ba.n, "vertices (dijkstra) or keys (heapsort)");
  bench->add_option("--m", ba.m, "edges (dijkstra)");
  bench->add_option("--seed", ba.seed, "seed");
  bench->add_option("--graphs", ba.graphs, "number of graphs, seeds seed..seed+graphs-1 (dijkstra)");
  bench->add_option("--ops", ba.ops, "operations (churn)");
  bench->add_flag("--complete", ba.complete, "complete graph instead of a random one (dijkstra)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*trace) return cmd_trace(common, trace_path);
    if (*fuzz) return cmd_fuzz(common, fa);
    return cmd_bench(common, which, ba);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailure;
  }
}
