#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "vcheap/accounting.hpp"
#include "vcheap/forest.hpp"
#include "vcheap/trace.hpp"

namespace vcheap {

/// Bound functions used by the checker and the fuzz driver.
struct BoundFns {
  static std::int64_t rank(std::int64_t n) { return rank_bound(n); }
  static std::int64_t no_meld_degree(std::int64_t n) { return 2 * rank_bound(n) + 1; }
  /// Degree bound of the node at 1-based position p of the node list of an n-node heap.
  static double meld_degree(std::int64_t n, std::int64_t p, bool solid_loss0);
};

enum class CheckMode : std::uint8_t { AnyTime, AfterAmortized };

struct Finding {
  std::string id;              // invariant identifier, e.g. "heap-order"
  std::vector<NodeId> nodes;   // nodes involved
  std::string path;            // keys from the tree root down to the first node
  std::string detail;
};

struct CheckReport {
  std::vector<Finding> findings;
  [[nodiscard]] bool ok() const { return findings.empty(); }
  [[nodiscard]] bool has(std::string_view id) const;
  [[nodiscard]] std::string summary(std::size_t limit = 5) const;
};

/// Full structural audit of one live heap. Side-effect free.
CheckReport check_structure(const Forest& f, HeapId h, CheckMode mode);

/// Sorted-multiset model of one heap, keyed by (key, uid).
class OracleHeap {
 public:
  void insert(Entry e);
  [[nodiscard]] std::optional<Entry> min() const;
  Entry pop_min();  // throws HeapError(EmptyHeap)
  void decrease_key(std::uint64_t uid, std::int64_t key);
  void absorb(OracleHeap& other);  // multiset union; `other` becomes empty
  [[nodiscard]] bool contains(std::uint64_t uid) const { return keys_.contains(uid); }
  [[nodiscard]] std::size_t size() const { return set_.size(); }
  [[nodiscard]] bool empty() const { return set_.empty(); }

 private:
  std::set<Entry> set_;
  std::unordered_map<std::uint64_t, std::int64_t> keys_;
};

struct FuzzConfig {
  Variant variant = Variant::NoMeld;
  Policy policy = Policy::Amortized;
  std::uint64_t seed = 0;
  std::uint64_t ops = 10000;
  std::uint64_t check_every = 0;  // 0: never run the structural checker
  bool verify_phi = false;        // cross-check the running potential after every block
  bool fail_fast = true;          // throw on the first finding of any kind
  bool keep_trace = false;        // return the op trace and outputs in the summary
  std::string failure_trace_path; // where to write a replayable trace on failure
  std::array<int, 4> weights{40, 25, 30, 5};  // insert, delete_min, decrease_key, meld
};

/// Counts of every kind of finding. All zero on a clean run.
struct FuzzFindings {
  std::uint64_t divergences = 0;
  std::uint64_t structure = 0;
  std::uint64_t phi_decrement = 0;
  std::uint64_t step_bound = 0;
  std::uint64_t table_bound_hard = 0;
  std::uint64_t table_bound_soft = 0;  // logged only
  std::uint64_t ledger_exit = 0;
  std::uint64_t comparison_bound = 0;
  [[nodiscard]] std::uint64_t hard_total() const {
    return divergences + structure + phi_decrement + step_bound + table_bound_hard + ledger_exit +
           comparison_bound;
  }
};

struct FuzzSummary {
  FuzzConfig config;
  std::uint64_t ops_executed = 0;
  std::uint64_t checks_run = 0;  // heap audits: one per live heap per checkpoint
  OpCounters counters;
  std::array<std::uint64_t, 5> max_steps{};  // per Method
  std::uint64_t aggregate_steps = 0;         // all reduction steps
  std::int64_t aggregate_bound = 0;          // sum of per-op potential injection bounds
  std::int64_t final_size = 0;               // total size of live heaps
  FuzzFindings findings;
  std::vector<std::string> messages;       // first few findings, human readable
  std::vector<std::string> soft_messages;  // first few soft bound excesses
  std::vector<TraceOp> trace;         // when keep_trace
  std::vector<std::string> outputs;   // when keep_trace: deletemin/findmin results
  double seconds = 0;
};

class FuzzFailure : public std::runtime_error {
 public:
  FuzzFailure(const std::string& what, std::uint64_t seed, std::uint64_t op_index, std::string trace_path)
      : std::runtime_error(what), seed(seed), op_index(op_index), trace_path(std::move(trace_path)) {}
  std::uint64_t seed;
  std::uint64_t op_index;
  std::string trace_path;
};

/// Differential fuzz run against the multiset oracle. Deterministic in the config.
FuzzSummary fuzz_run(const FuzzConfig& config);

/// Reduction step bound for one public method, or nullopt when unbounded.
std::optional<std::uint64_t> step_bound(Variant v, Policy p, Method m, std::int64_t n_before);

}  // namespace vcheap
