// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "vcheap/bench.hpp"
#include "vcheap/verification.hpp"

using namespace vcheap;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Run {
  FuzzConfig cfg;
  FuzzSummary sum;
  bool failed = false;  // aborted by a divergence or an exception
  std::string error;
};

Run fuzz(Variant v, Policy p, std::uint64_t seed, std::uint64_t ops, std::uint64_t check_every = 0,
         bool verify_phi = false, std::array<int, 4> weights = {40, 25, 30, 5}) {
  Run r;
  r.cfg.variant = v;
  r.cfg.policy = p;
  r.cfg.seed = seed;
  r.cfg.ops = ops;
  r.cfg.check_every = check_every;
  r.cfg.verify_phi = verify_phi;
  r.cfg.fail_fast = false;
  r.cfg.weights = weights;
  r.cfg.failure_trace_path = "acceptance-" + std::string(to_string(v)) + "-" + std::string(to_string(p)) + "-" +
                             std::to_string(seed) + ".trace";
  try {
    r.sum = fuzz_run(r.cfg);
  } catch (const std::exception& e) {
    r.failed = true;
    r.error = e.what();
  }
  return r;
}

std::string label(const Run& r) {
  return std::string(to_string(r.cfg.variant)) + "/" + std::string(to_string(r.cfg.policy)) + " seed " +
         std::to_string(r.cfg.seed);
}

class Report {
 public:
  void line(int id, bool ok, const std::string& what, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << what << " (" << detail << ")"
              << std::endl;
    all_ok_ = all_ok_ && ok;
  }
  void note(const std::string& s) { std::cout << "      " << s << '\n'; }
  [[nodiscard]] bool ok() const { return all_ok_; }

 private:
  bool all_ok_ = true;
};

}  // namespace

int main() {
  Report report;
  std::vector<Run> all;  // every fuzz run, for the campaign-wide criteria

  // 1. Oracle equivalence over the five main combinations.
  const std::pair<Variant, Policy> combos[] = {
      {Variant::NoMeld, Policy::Amortized},     {Variant::NoMeld, Policy::WorstCaseLedger},
      {Variant::Meld, Policy::Amortized},       {Variant::Meld, Policy::WorstCaseLedger},
      {Variant::NoMeld, Policy::WorstCaseSimple},
  };
  {
    const auto t0 = Clock::now();
    std::uint64_t divergences = 0, ops = 0;
    std::vector<std::string> errors;
    for (const auto& [v, p] : combos) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Run r = fuzz(v, p, seed, 100000);
        if (r.failed) {
          ++divergences;
          errors.push_back(label(r) + ": " + r.error);
        } else {
          divergences += r.sum.findings.divergences;
          ops += r.sum.ops_executed;
        }
        all.push_back(std::move(r));
      }
    }
    const double secs = since(t0);
    std::ostringstream d;
    d << all.size() << " runs, " << ops << " ops, " << divergences << " divergences, " << secs << " s";
    report.line(1, divergences == 0 && secs < 60.0, "oracle equivalence, seeds 0-9 x 1e5 ops x 5 combinations",
                d.str());
    for (std::size_t i = 0; i < errors.size() && i < 5; ++i) report.note(errors[i]);
  }

  // 2. Structural invariants after every 100th op of amortized runs.
  {
    std::uint64_t findings = 0, checks = 0, failed = 0;
    std::vector<std::string> notes;
    for (Variant v : {Variant::NoMeld, Variant::Meld}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Run r = fuzz(v, Policy::Amortized, seed, 10000, 100, true);
        if (r.failed) {
          ++failed;
          notes.push_back(label(r) + ": " + r.error);
        } else {
          findings += r.sum.findings.structure;
          checks += r.sum.checks_run;
          for (const auto& m : r.sum.messages) notes.push_back(label(r) + ": " + m);
        }
        all.push_back(std::move(r));
      }
    }
    std::ostringstream d;
    d << checks << " heap audits, " << findings << " findings, " << failed << " aborted runs";
    report.line(2, findings == 0 && failed == 0 && checks > 0,
                "structural invariants every 100 ops, amortized, both variants, seeds 0-4", d.str());
    for (std::size_t i = 0; i < notes.size() && i < 5; ++i) report.note(notes[i]);
  }

  // Extra campaigns that widen case coverage: the remaining combination and a
  // delete-light Meld profile that grows deep trees full of deferred children.
  for (std::uint64_t seed = 0; seed < 10; ++seed) all.push_back(fuzz(Variant::Meld, Policy::WorstCaseSimple, seed, 100000));
  for (Policy p : {Policy::Amortized, Policy::WorstCaseLedger}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      all.push_back(fuzz(Variant::Meld, p, seed, 100000, 0, false, {50, 0, 45, 5}));
    }
  }

  std::uint64_t aborted = 0, steps = 0;
  for (const Run& r : all) {
    if (r.failed) ++aborted;
    else steps += r.sum.counters.reduction_steps;
  }

  // 3. Every reduction step lowers the potential by at least one.
  {
    std::uint64_t bad = 0;
    for (const Run& r : all) bad += r.sum.findings.phi_decrement;
    std::ostringstream d;
    d << all.size() << " runs, " << steps << " reduction steps, " << bad << " exceptions";
    report.line(3, bad == 0 && aborted == 0, "every reduction step decreases the potential by >= 1", d.str());
  }

  // 4. Per-op reduction step bounds.
  {
    std::uint64_t bad = 0;
    std::map<std::string, std::uint64_t> worst;  // variant/method -> max steps
    for (const Run& r : all) {
      bad += r.sum.findings.step_bound;
      const char* names[] = {"insert", "find_min", "delete_min", "decrease_key", "meld"};
      for (std::size_t m = 0; m < 5; ++m) {
        if (r.cfg.policy != Policy::WorstCaseLedger && m != static_cast<std::size_t>(Method::DeleteMin)) continue;
        if (r.cfg.variant == Variant::NoMeld && m == static_cast<std::size_t>(Method::Meld)) continue;
        auto& w = worst[std::string(to_string(r.cfg.variant)) + " " + names[m]];
        w = std::max(w, r.sum.max_steps[m]);
      }
    }
    std::ostringstream d;
    d << bad << " violations; max steps:";
    for (const auto& [k, v] : worst) d << ' ' << k << '=' << v;
    report.line(4, bad == 0 && aborted == 0,
                "worst-case step bounds (12/48 per op, 6R(n)+4 and 12R(2n)+30R(n)+62 per delete_min)", d.str());
  }

  // 5. Amortized aggregate: total steps within the summed injection bounds.
  {
    bool ok = true;
    std::uint64_t runs = 0;
    double tightest = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Run r = fuzz(Variant::NoMeld, Policy::Amortized, seed, 10000);
      ++runs;
      if (r.failed || static_cast<std::int64_t>(r.sum.aggregate_steps) > r.sum.aggregate_bound) ok = false;
      if (!r.failed && r.sum.aggregate_bound > 0) {
        tightest = std::max(tightest, static_cast<double>(r.sum.aggregate_steps) / r.sum.aggregate_bound);
      }
    }
    for (const Run& r : all) {
      if (r.cfg.variant != Variant::NoMeld || r.cfg.policy != Policy::Amortized || r.failed) continue;
      ++runs;
      if (static_cast<std::int64_t>(r.sum.aggregate_steps) > r.sum.aggregate_bound) ok = false;
      tightest = std::max(tightest, static_cast<double>(r.sum.aggregate_steps) / r.sum.aggregate_bound);
    }
    std::ostringstream d;
    d << runs << " no-Meld amortized runs, worst steps/bound ratio " << tightest;
    report.line(5, ok, "aggregate reduction steps <= summed per-op potential injection bounds", d.str());
  }

  // 6. Every transformation table row fired somewhere in the campaign.
  {
    bool ok = true;
    std::ostringstream d;
    for (Variant v : {Variant::NoMeld, Variant::Meld}) {
      OpCounters total;
      for (const Run& r : all) {
        if (r.cfg.variant == v && !r.failed) total += r.sum.counters;
      }
      std::size_t covered = 0;
      const auto& rows = required_coverage(v);
      for (const CoverageRow& row : rows) {
        std::uint64_t hits = 0;
        for (ReductionCase c : row.cases) hits += total.hits(c);
        if (hits > 0) ++covered;
        else report.note(std::string(to_string(v)) + " row never fired: " + row.name);
      }
      ok = ok && covered == rows.size();
      d << to_string(v) << ' ' << covered << '/' << rows.size() << " rows ";
    }
    report.line(6, ok, "reduction case coverage of both transformation tables", d.str() + "hit");
  }

  // 7. Dijkstra checksums against the array-scan reference.
  {
    const auto t0 = Clock::now();
    std::uint64_t runs = 0, bad = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Graph g = random_graph(1000, 10000, seed);
      const std::int64_t want = reference_checksum(g);
      for (Variant v : {Variant::NoMeld, Variant::Meld}) {
        for (Policy p : {Policy::Amortized, Policy::WorstCaseLedger, Policy::WorstCaseSimple}) {
          const BenchResult r = bench_dijkstra(g, v, p);
          ++runs;
          if (r.checksum != want) {
            ++bad;
            report.note("graph " + std::to_string(seed) + " " + std::string(to_string(v)) + "/" +
                        std::string(to_string(p)) + ": " + std::to_string(r.checksum) + " != " + std::to_string(want));
          }
        }
      }
    }
    const double secs = since(t0);
    std::ostringstream d;
    d << runs << " runs on 20 graphs, " << bad << " mismatches, " << secs << " s";
    report.line(7, bad == 0 && secs < 30.0, "Dijkstra checksums, n=1000 m=1e4, both variants, all policies",
                d.str());
  }

  // 8. Per-method potential injection bounds (hard) and write counts (soft).
  {
    std::uint64_t hard = 0, soft = 0;
    std::vector<std::string> soft_notes;
    for (const Run& r : all) {
      hard += r.sum.findings.table_bound_hard;
      soft += r.sum.findings.table_bound_soft;
      if (soft_notes.size() < 4) {
        for (const auto& m : r.sum.soft_messages) {
          if (soft_notes.size() < 4) soft_notes.push_back(label(r) + ": " + m);
        }
      }
    }
    std::ostringstream d;
    d << hard << " hard violations, " << soft << " soft notes on coordinates or write counts";
    report.line(8, hard == 0 && aborted == 0, "per-method potential bounds", d.str());
    for (const auto& n : soft_notes) report.note("soft: " + n);
  }

  return report.ok() ? 0 : 1;
}
