#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "vcheap/accounting.hpp"
#include "vcheap/rank_registry.hpp"
#include "vcheap/types.hpp"
#include "vcheap/violation_cache.hpp"

namespace vcheap {

struct Node {
  std::int64_t key = 0;
  std::uint64_t uid = 0;
  std::uint32_t rank = 0;
  std::uint32_t loss = 0;
  ViolationTag tag = ViolationTag::N;
  NodeKind kind = NodeKind::NonrankChild;
  bool alive = false;

  NodeId parent;
  NodeId child;  // leftmost child
  NodeId left;   // cyclic: left of the leftmost sibling is the rightmost one
  NodeId right;  // nil at the right end

  HeapId owner;
  NodeId list_prev;  // heap node list, same cyclic convention (Meld only)
  NodeId list_next;

  std::uint32_t lc_refs = 0;  // LC entries currently naming this node (accounting only)

  [[nodiscard]] Entry entry() const { return {key, uid}; }
};

/// Per-method potential ledger. `start` is captured at method entry.
struct PotentialLedger {
  PhiCoords start;
  PhiCoords reduced;  // sum of what reduction steps changed
  std::uint64_t steps = 0;
  std::uint64_t writes_at_start = 0;
  std::uint64_t reduction_writes = 0;
};

struct HeapRecord {
  std::int64_t size = 0;  // -1: retired by a meld
  std::uint64_t refcount = 0;
  bool discarded = false;
  Policy policy = Policy::Amortized;
  NodeId roots;  // leftmost tree root
  NodeId nodes;  // head of the heap node list (Meld only)
  std::array<RankRegistry, kSlotCount> registries;
  std::array<ViolationCache, kSlotCount> caches;
  PhiSnapshot counts;  // running registry/cache populations
  PotentialLedger ledger;
  std::vector<NodeId> free_nodes;
};

struct ForestOptions {
  bool reuse_nodes = false;  // recycle storage of deleted nodes (handles become ambiguous)
  bool verify_phi = false;   // recompute the potential by scanning after every block
  Observer* observer = nullptr;
};

/// Arena of heap nodes and heap records implementing the cache-based
/// violation-reduction heaps, with or without Meld.
///
/// Every public method leaves exactly one tree root in a nonempty heap. Node
/// handles stay valid from insert until the node is removed by delete_min.
/// A forest is single-writer; distinct forests are independent.
class Forest {
 public:
  explicit Forest(Variant variant, ForestOptions options = {});

  [[nodiscard]] Variant variant() const { return variant_; }
  [[nodiscard]] const PhiWeights& weights() const { return weights_; }

  // Public heap interface.
  HeapId make_heap(Policy policy = Policy::Amortized);
  NodeId insert(HeapId h, std::int64_t key);
  std::optional<NodeId> find_min(HeapId h);
  Entry delete_min(HeapId h);
  void decrease_key(HeapId h, NodeId x, std::int64_t key);
  HeapId meld(HeapId h1, HeapId h2);

  // Inspection.
  [[nodiscard]] std::int64_t size(HeapId h) const { return record(h).size; }
  [[nodiscard]] bool is_live(HeapId h) const;
  [[nodiscard]] const HeapRecord& record(HeapId h) const;
  [[nodiscard]] const Node& node(NodeId x) const { return nodes_[x.value]; }
  [[nodiscard]] Entry entry(NodeId x) const { return node(x).entry(); }
  [[nodiscard]] std::size_t node_capacity() const { return nodes_.size(); }
  [[nodiscard]] std::size_t record_count() const { return records_.size(); }
  [[nodiscard]] const OpCounters& counters() const { return counters_; }
  [[nodiscard]] PhiSnapshot running_phi(HeapId h) const { return record(h).counts; }
  [[nodiscard]] PhiCoords coords(HeapId h) const { return record(h).counts.coords(weights_); }
  /// Exhaustive scan of registries and caches.
  [[nodiscard]] PhiSnapshot compute_phi(HeapId h) const;
  [[nodiscard]] std::uint32_t lc_weight(NodeId x) const;

  [[nodiscard]] bool is_implicitly_deferred(NodeId x) const;
  [[nodiscard]] bool is_deferred(NodeId x) const;
  [[nodiscard]] bool is_rank_root(NodeId x) const;
  [[nodiscard]] bool is_rank_child(NodeId x) const;
  [[nodiscard]] std::size_t degree(NodeId x) const;

  // Low-level structural blocks. Exposed for instrumentation and tests; callers
  // must respect the preconditions documented with each block.
  void set_violation_type(HeapId h, NodeId x, ViolationTag t, bool known_cached = true);
  enum class DecrementCause : std::uint8_t { ChildRemoval, ConversionToNonrank };
  void rank_decrement(HeapId h, NodeId p, DecrementCause cause);
  void add_solid_child(HeapId h, NodeId p, NodeId c, bool rank_child, bool floating = false);
  void remove_child(HeapId h, NodeId p, NodeId c);
  NodeId link(HeapId h, NodeId a, NodeId b, bool floating = false);
  ReductionOutcome reduce_step(HeapId h, Slot cache);
  void one_node_loss_reduction(HeapId h, NodeId x);
  void two_node_loss_reduction(HeapId h, NodeId x, NodeId y);
  enum class ReduceMode : std::uint8_t { DrainAll, LedgerDriven, DrainRankRoots };
  std::uint64_t reduce_until(HeapId h, ReduceMode mode);

  // Meld-variant blocks.
  void convert_implicit(HeapId h, NodeId x);
  /// Returns true when three deferred children were restructured.
  bool degree_reduction_step(HeapId h, NodeId x);
  void heap_size_decrement(HeapId h);

  /// Test scaffolding: a new tree root (and node-list entry) with no reduction work.
  NodeId add_root_for_testing(HeapId h, std::int64_t key);
  /// Test scaffolding: moves root c below p as its rightmost child. No rank or tag bookkeeping.
  void attach_for_testing(HeapId h, NodeId p, NodeId c, NodeKind kind);
  /// Direct mutable access for seeding defects in checker tests.
  Node& node_for_testing(NodeId x) { return nodes_[x.value]; }
  HeapRecord& record_for_testing(HeapId h) { return records_[h.value]; }

 private:
  Node& n(NodeId x) { return nodes_[x.value]; }
  HeapRecord& rec(HeapId h) { return records_[h.value]; }
  [[nodiscard]] bool less(NodeId a, NodeId b) const;  // (key, uid) order, not counted

  HeapRecord& live_record(HeapId h, std::string_view what);
  void require_meld(std::string_view what) const;
  NodeId allocate(HeapId h, std::int64_t key);
  void release(HeapId h, NodeId x);
  void maybe_discard(HeapId h);

  // Sibling lists (root list and children lists).
  void sib_push_front(NodeId& head, NodeId x);
  void sib_push_back(NodeId& head, NodeId x);
  void sib_remove(NodeId& head, NodeId x);
  void sib_prepend(NodeId& head, NodeId other);
  // Heap node list.
  void nl_push_back(HeapRecord& r, NodeId x);
  void nl_remove(HeapRecord& r, NodeId x);
  void nl_prepend(HeapRecord& r, NodeId other_head);

  // Accounting primitives.
  void cache_push(HeapId h, Slot s, NodeId x);
  NodeId cache_pop(HeapId h, Slot s);
  void registry_set(HeapId h, Slot s, std::uint32_t rank, NodeId x);
  void set_tag(HeapId h, NodeId x, ViolationTag t);
  void set_loss(HeapId h, NodeId x, std::uint32_t loss);
  void bump_rank(HeapId h, NodeId x, int delta);
  void detach_child(HeapId h, NodeId p, NodeId c);
  void discard_caches(HeapId h);

  ReductionCase classify_parent(HeapId h, NodeId p, bool matched) const;
  ReductionOutcome reduce_rank_root_step(HeapId h, Slot cache);
  ReductionOutcome reduce_lc_step(HeapId h);

  void find_min_phases(HeapId h, bool drain_all, int lc_budget);
  void run_reductions(HeapId h, bool drain_all, int& lc_budget);
  void begin_method(HeapId h);
  void end_method(Method m, HeapId h, std::int64_t n_before);
  void verify(HeapId h, std::string_view block) const;

  Variant variant_;
  ForestOptions options_;
  PhiWeights weights_;
  std::vector<Node> nodes_;
  std::vector<HeapRecord> records_;
  OpCounters counters_;
  std::uint64_t next_uid_ = 0;
  std::uint64_t comparisons_at_start_ = 0;
};

inline Slot slot_of(ViolationTag t) {
  return t == ViolationTag::G ? Slot::G : t == ViolationTag::A ? Slot::A : Slot::L;
}

}  // namespace vcheap
