#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "vcheap/verification.hpp"

namespace vcheap {

std::optional<std::uint64_t> step_bound(Variant v, Policy p, Method m, std::int64_t n_before) {
  if (m == Method::DeleteMin) {
    if (v == Variant::NoMeld) return 6 * rank_bound(n_before) + 4;
    return 12 * rank_bound(2 * n_before) + 30 * rank_bound(n_before) + 62;
  }
  if (p != Policy::WorstCaseLedger) return std::nullopt;
  return v == Variant::NoMeld ? 12 : 48;
}

namespace {

constexpr std::size_t kMessageLimit = 20;

class FuzzDriver : public Observer {
 public:
  explicit FuzzDriver(const FuzzConfig& cfg)
      : cfg_(cfg),
        forest_(cfg.variant, ForestOptions{false, cfg.verify_phi, this}),
        rng_(cfg.seed) {
    summary_.config = cfg;
  }

  FuzzSummary run() {
    const auto t0 = std::chrono::steady_clock::now();
    new_heap();
    for (op_index_ = 0; op_index_ < cfg_.ops; ++op_index_) {
      try {
        step();
      } catch (const FuzzFailure&) {
        throw;
      } catch (const std::exception& e) {
        fail(std::string("exception: ") + e.what());
      }
      ++summary_.ops_executed;
      if (cfg_.check_every && (op_index_ + 1) % cfg_.check_every == 0) check_all();
    }
    summary_.counters = forest_.counters();
    summary_.aggregate_steps = summary_.counters.reduction_steps;
    for (HeapId h : pool_) summary_.final_size += forest_.size(h);
    summary_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cfg_.keep_trace) summary_.trace = trace_;
    return std::move(summary_);
  }

  void on_reduction(HeapId, const ReductionOutcome& out) override {
    if (out.after.total() > out.before.total() - 1) {
      ++summary_.findings.phi_decrement;
      finding("reduction " + std::string(to_string(out.rcase)) + " changed potential by " +
              std::to_string(out.after.total() - out.before.total()));
    }
  }

  void on_method(const MethodReport& rep) override {
    auto& mx = summary_.max_steps[static_cast<std::size_t>(rep.method)];
    mx = std::max(mx, rep.steps);
    summary_.aggregate_bound += method_bound(cfg_.variant, rep.method, rep.n_before).phi;
    if (const auto b = step_bound(cfg_.variant, cfg_.policy, rep.method, rep.n_before); b && rep.steps > *b) {
      ++summary_.findings.step_bound;
      finding(std::string(to_string(rep.method)) + " ran " + std::to_string(rep.steps) + " reduction steps > " +
              std::to_string(*b));
    }
    const BoundCheck bc = assert_table_bounds(cfg_.variant, rep);
    for (const auto& m : bc.hard) {
      ++summary_.findings.table_bound_hard;
      finding(m);
    }
    summary_.findings.table_bound_soft += bc.soft.size();
    for (const auto& m : bc.soft) {
      if (summary_.soft_messages.size() < kMessageLimit) summary_.soft_messages.push_back(m);
    }
    if (cfg_.policy == Policy::WorstCaseLedger && rep.method != Method::DeleteMin) {
      const PhiCoords delta = rep.end - rep.start;
      for (Slot s : {Slot::G, Slot::A, Slot::L}) {
        if (delta[s] > 0 && !forest_.record(rep.heap).caches[static_cast<int>(s)].empty()) {
          ++summary_.findings.ledger_exit;
          finding(std::string(to_string(rep.method)) + " returned with a grown coordinate and a nonempty cache");
        }
      }
    }
    if (rep.method == Method::DeleteMin) {
      const double n = static_cast<double>(std::max<std::int64_t>(rep.n_before, 2));
      if (static_cast<double>(rep.comparisons) > 30.0 * std::log2(n) + 300.0) {
        ++summary_.findings.comparison_bound;
        finding("delete_min used " + std::to_string(rep.comparisons) + " comparisons");
      }
    }
  }

 private:
  HeapId new_heap() {
    const HeapId h = forest_.make_heap(cfg_.policy);
    if (h.value >= ref_of_.size()) {
      ref_of_.resize(h.value + 1);
      alias_.resize(h.value + 1);
      oracle_.resize(h.value + 1);
    }
    ref_of_[h.value] = next_ref_++;
    alias_[h.value] = h.value;
    pool_.push_back(h);
    return h;
  }

  HeapId current(HeapId h) {
    std::uint32_t v = h.value;
    while (alias_[v] != v) v = alias_[v] = alias_[alias_[v]];
    return HeapId{v};
  }

  void record(TraceOp op) { trace_.push_back(op); }

  void output(std::string s) {
    if (cfg_.keep_trace) summary_.outputs.push_back(std::move(s));
  }

  [[noreturn]] void fail(const std::string& what) {
    std::ostringstream os;
    os << "fuzz failure (seed " << cfg_.seed << ", op " << op_index_ << ", " << to_string(cfg_.variant) << "/"
       << to_string(cfg_.policy) << "): " << what;
    if (!cfg_.failure_trace_path.empty()) {
      std::ofstream f(cfg_.failure_trace_path);
      write_trace(f, trace_, os.str());
    }
    throw FuzzFailure(os.str(), cfg_.seed, op_index_, cfg_.failure_trace_path);
  }

  void finding(const std::string& what) {
    if (cfg_.fail_fast) fail(what);
    if (summary_.messages.size() < kMessageLimit) {
      summary_.messages.push_back("op " + std::to_string(op_index_) + ": " + what);
    }
  }

  void compare_min(HeapId h) {
    const OracleHeap& o = oracle_[h.value];
    const NodeId root = forest_.record(h).roots;
    const auto want = o.min();
    if (!want) {
      if (root) fail("heap has a root but the oracle is empty");
      return;
    }
    if (!root) fail("heap is empty but the oracle is not");
    const Entry got = forest_.entry(root);
    if (got != *want) {
      ++summary_.findings.divergences;
      fail("minimum (" + std::to_string(got.key) + "," + std::to_string(got.uid) + ") but oracle has (" +
           std::to_string(want->key) + "," + std::to_string(want->uid) + ")");
    }
  }

  HeapId pick_heap() {
    return pool_[std::uniform_int_distribution<std::size_t>(0, pool_.size() - 1)(rng_)];
  }

  void step() {
    const bool meld_ok = cfg_.variant == Variant::Meld;
    const auto& w = cfg_.weights;
    const int total = w[0] + w[1] + w[2] + (meld_ok ? w[3] : 0);
    const int r = std::uniform_int_distribution<int>(0, total - 1)(rng_);
    if (r < w[0]) do_insert(pick_heap());
    else if (r < w[0] + w[1]) do_delete_min(pick_heap());
    else if (r < w[0] + w[1] + w[2]) do_decrease_key();
    else do_meld();
  }

  void do_insert(HeapId h) {
    const auto key = static_cast<std::int64_t>(rng_());
    record({TraceOp::Kind::Insert, key, ref_of_[h.value], 0, 0});
    const NodeId x = forest_.insert(h, key);
    const std::uint64_t uid = next_uid_++;
    if (forest_.entry(x).uid != uid) fail("insert returned an unexpected uid");
    oracle_[h.value].insert({key, uid});
    if (uid >= node_of_uid_.size()) node_of_uid_.resize(uid + 1);
    node_of_uid_[uid] = x;
    home_.push_back(h);
    live_pos_.push_back(live_.size());
    live_.push_back(uid);
    compare_min(h);
  }

  void do_delete_min(HeapId h) {
    OracleHeap& o = oracle_[h.value];
    if (o.empty()) {
      record({TraceOp::Kind::FindMin, 0, ref_of_[h.value], 0, 0});
      if (forest_.find_min(h)) fail("find_min on an empty heap returned a node");
      output("empty");
      return;
    }
    record({TraceOp::Kind::DeleteMin, 0, ref_of_[h.value], 0, 0});
    const Entry got = forest_.delete_min(h);
    const Entry want = o.pop_min();
    if (got != want) {
      ++summary_.findings.divergences;
      fail("delete_min returned (" + std::to_string(got.key) + "," + std::to_string(got.uid) + "), oracle (" +
           std::to_string(want.key) + "," + std::to_string(want.uid) + ")");
    }
    output(std::to_string(got.key));
    // swap-remove from the live list
    const std::size_t pos = live_pos_[want.uid];
    const std::uint64_t last = live_.back();
    live_[pos] = last;
    live_pos_[last] = pos;
    live_.pop_back();
    compare_min(h);
  }

  void do_decrease_key() {
    if (live_.empty()) {
      do_insert(pick_heap());
      return;
    }
    const std::uint64_t uid = live_[std::uniform_int_distribution<std::size_t>(0, live_.size() - 1)(rng_)];
    const NodeId x = node_of_uid_[uid];
    const HeapId h = current(home_[uid]);
    const std::int64_t cur = forest_.entry(x).key;
    const auto d = static_cast<std::int64_t>(std::uniform_int_distribution<std::uint64_t>(1, 1ULL << 32)(rng_));
    const std::int64_t key = cur < std::numeric_limits<std::int64_t>::min() + d
                                 ? std::numeric_limits<std::int64_t>::min()
                                 : cur - d;
    record({TraceOp::Kind::DecreaseKey, key, uid, 0, 0});
    forest_.decrease_key(h, x, key);
    oracle_[h.value].decrease_key(uid, key);
    compare_min(h);
  }

  void do_meld() {
    const bool grow = pool_.size() < 2 || (pool_.size() < 8 && (rng_() & 1));
    if (grow) {
      record({TraceOp::Kind::NewHeap, 0, 0, 0, 0});
      new_heap();
      return;
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool_.size() - 1);
    const std::size_t i = pick(rng_);
    std::size_t j = pick(rng_);
    while (j == i) j = pick(rng_);
    const HeapId a = pool_[i], b = pool_[j];
    record({TraceOp::Kind::Meld, 0, ref_of_[a.value], ref_of_[b.value], 0});
    const HeapId r = forest_.meld(a, b);
    const HeapId gone = r == a ? b : a;
    oracle_[r.value].absorb(oracle_[gone.value]);
    alias_[gone.value] = r.value;
    pool_.erase(pool_.begin() + static_cast<std::ptrdiff_t>(r == a ? j : i));
    if (forest_.is_live(gone)) fail("melded-away heap is still live");
    compare_min(r);
  }

  void check_all() {
    const CheckMode mode = cfg_.policy == Policy::Amortized ? CheckMode::AfterAmortized : CheckMode::AnyTime;
    for (HeapId h : pool_) {
      const CheckReport rep = check_structure(forest_, h, mode);
      ++summary_.checks_run;
      if (!rep.ok()) {
        summary_.findings.structure += rep.findings.size();
        finding("heap " + std::to_string(ref_of_[h.value]) + ": " + rep.summary());
      }
    }
  }

  FuzzConfig cfg_;
  Forest forest_;
  std::mt19937_64 rng_;
  FuzzSummary summary_;
  std::uint64_t op_index_ = 0;

  std::vector<HeapId> pool_;
  std::vector<std::uint64_t> ref_of_;  // heap -> trace heap ref
  std::vector<std::uint32_t> alias_;   // melded-away heap -> surviving heap
  std::vector<OracleHeap> oracle_;
  std::uint64_t next_ref_ = 0;

  std::uint64_t next_uid_ = 0;
  std::vector<NodeId> node_of_uid_;
  std::vector<HeapId> home_;  // heap at insert time, by uid
  std::vector<std::uint64_t> live_;
  std::vector<std::size_t> live_pos_;  // by uid
  std::vector<TraceOp> trace_;
};

}  // namespace

FuzzSummary fuzz_run(const FuzzConfig& config) { return FuzzDriver(config).run(); }

}  // namespace vcheap
