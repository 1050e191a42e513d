#include <algorithm>
#include <sstream>
#include <string>

#include "vcheap/forest.hpp"

namespace vcheap {

std::string_view to_string(Variant v) { return v == Variant::Meld ? "meld" : "nomeld"; }

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::Amortized: return "amortized";
    case Policy::WorstCaseLedger: return "worstcase";
    case Policy::WorstCaseSimple: return "simple";
  }
  return "?";
}

std::string_view to_string(ViolationTag t) {
  switch (t) {
    case ViolationTag::N: return "N";
    case ViolationTag::A: return "A";
    case ViolationTag::G: return "G";
    case ViolationTag::Lstar: return "L*";
  }
  return "?";
}

Variant parse_variant(std::string_view s) {
  if (s == "nomeld") return Variant::NoMeld;
  if (s == "meld") return Variant::Meld;
  throw std::invalid_argument("unknown variant: " + std::string(s));
}

Policy parse_policy(std::string_view s) {
  if (s == "amortized") return Policy::Amortized;
  if (s == "worstcase") return Policy::WorstCaseLedger;
  if (s == "simple") return Policy::WorstCaseSimple;
  throw std::invalid_argument("unknown policy: " + std::string(s));
}

Forest::Forest(Variant variant, ForestOptions options)
    : variant_(variant), options_(options), weights_(PhiWeights::for_variant(variant)) {}

// ---------------------------------------------------------------------------
// Records and node storage

HeapId Forest::make_heap(Policy policy) {
  const HeapId h{static_cast<std::uint32_t>(records_.size())};
  records_.emplace_back();
  records_.back().policy = policy;
  return h;
}

bool Forest::is_live(HeapId h) const {
  return h.valid() && h.value < records_.size() && !records_[h.value].discarded &&
         records_[h.value].size >= 0;
}

const HeapRecord& Forest::record(HeapId h) const {
  if (!h.valid() || h.value >= records_.size()) {
    throw HeapError(HeapError::Code::InvalidHeap, "unknown heap handle");
  }
  return records_[h.value];
}

HeapRecord& Forest::live_record(HeapId h, std::string_view what) {
  const HeapRecord& r = record(h);
  if (r.discarded || r.size < 0) {
    throw HeapError(HeapError::Code::RetiredHeap, std::string(what) + " on a retired heap");
  }
  return rec(h);
}

void Forest::require_meld(std::string_view what) const {
  if (variant_ != Variant::Meld) {
    throw HeapError(HeapError::Code::Unsupported, std::string(what) + " unsupported in variant");
  }
}

NodeId Forest::allocate(HeapId h, std::int64_t key) {
  NodeId x;
  HeapRecord& r = rec(h);
  if (options_.reuse_nodes && !r.free_nodes.empty()) {
    x = r.free_nodes.back();
    r.free_nodes.pop_back();
  } else {
    x = NodeId{static_cast<std::uint32_t>(nodes_.size())};
    nodes_.emplace_back();
  }
  Node& nd = n(x);
  const std::uint32_t stale_refs = nd.lc_refs;  // stale LC entries may still name this slot
  nd = Node{};
  nd.lc_refs = stale_refs;
  nd.key = key;
  nd.uid = next_uid_++;
  nd.alive = true;
  nd.owner = h;
  return x;
}

void Forest::release(HeapId h, NodeId x) {
  Node& nd = n(x);
  nd.alive = false;
  nd.parent = nd.child = nd.left = nd.right = NodeId{};
  nd.list_prev = nd.list_next = NodeId{};
  if (options_.reuse_nodes) rec(h).free_nodes.push_back(x);
}

bool Forest::less(NodeId a, NodeId b) const { return node(a).entry() < node(b).entry(); }

bool Forest::is_implicitly_deferred(NodeId x) const {
  return variant_ == Variant::Meld && records_[node(x).owner.value].size < 0;
}

bool Forest::is_deferred(NodeId x) const {
  return variant_ == Variant::Meld &&
         (node(x).kind == NodeKind::ExplicitDeferred || is_implicitly_deferred(x));
}

bool Forest::is_rank_root(NodeId x) const {
  const Node& nd = node(x);
  return !is_deferred(x) && (!nd.parent.valid() || nd.kind == NodeKind::NonrankChild);
}

bool Forest::is_rank_child(NodeId x) const {
  const Node& nd = node(x);
  return nd.parent.valid() && nd.kind == NodeKind::RankChild && !is_deferred(x);
}

std::size_t Forest::degree(NodeId x) const {
  std::size_t d = 0;
  for (NodeId c = node(x).child; c; c = node(c).right) ++d;
  return d;
}

// ---------------------------------------------------------------------------
// Sibling lists: right links end in nil, left links are cyclic.

void Forest::sib_push_front(NodeId& head, NodeId x) {
  Node& xn = n(x);
  if (!head) {
    xn.left = x;
    xn.right = NodeId{};
    head = x;
    return;
  }
  xn.right = head;
  xn.left = n(head).left;
  n(head).left = x;
  head = x;
}

void Forest::sib_push_back(NodeId& head, NodeId x) {
  Node& xn = n(x);
  if (!head) {
    xn.left = x;
    xn.right = NodeId{};
    head = x;
    return;
  }
  const NodeId tail = n(head).left;
  n(tail).right = x;
  xn.left = tail;
  xn.right = NodeId{};
  n(head).left = x;
}

void Forest::sib_remove(NodeId& head, NodeId x) {
  Node& xn = n(x);
  if (x == head) {
    head = xn.right;
    if (head) n(head).left = xn.left;
  } else {
    const NodeId prev = xn.left;
    n(prev).right = xn.right;
    if (xn.right) n(xn.right).left = prev;
    else n(head).left = prev;
  }
  xn.left = xn.right = NodeId{};
}

void Forest::sib_prepend(NodeId& head, NodeId other) {
  if (!other) return;
  if (!head) {
    head = other;
    return;
  }
  const NodeId tail = n(head).left;
  const NodeId other_tail = n(other).left;
  n(other_tail).right = head;
  n(head).left = other_tail;
  n(other).left = tail;
  head = other;
}

// ---------------------------------------------------------------------------
// Accounting primitives. Every registry or cache mutation goes through here so
// the running potential stays exact.

std::uint32_t Forest::lc_weight(NodeId x) const {
  const Node& nd = node(x);
  return nd.tag == ViolationTag::Lstar && nd.loss >= 2 ? nd.loss : 1;
}

void Forest::cache_push(HeapId h, Slot s, NodeId x) {
  HeapRecord& r = rec(h);
  r.caches[static_cast<int>(s)].push(x);
  ++counters_.nontree_writes;
  switch (s) {
    case Slot::G: ++r.counts.gc; break;
    case Slot::A: ++r.counts.ac; break;
    case Slot::L:
      r.counts.lc_weighted += lc_weight(x);
      ++n(x).lc_refs;
      break;
  }
}

NodeId Forest::cache_pop(HeapId h, Slot s) {
  HeapRecord& r = rec(h);
  const NodeId x = r.caches[static_cast<int>(s)].pop();
  switch (s) {
    case Slot::G: --r.counts.gc; break;
    case Slot::A: --r.counts.ac; break;
    case Slot::L:
      r.counts.lc_weighted -= lc_weight(x);
      --n(x).lc_refs;
      break;
  }
  return x;
}

void Forest::registry_set(HeapId h, Slot s, std::uint32_t rank, NodeId x) {
  HeapRecord& r = rec(h);
  RankRegistry& reg = r.registries[static_cast<int>(s)];
  const std::int64_t delta = (x.valid() ? 1 : 0) - (reg.get(rank).valid() ? 1 : 0);
  reg.set(rank, x);
  ++counters_.nontree_writes;
  switch (s) {
    case Slot::G: r.counts.gr += delta; break;
    case Slot::A: r.counts.ar += delta; break;
    case Slot::L: r.counts.lr += delta; break;
  }
}

void Forest::set_tag(HeapId h, NodeId x, ViolationTag t) {
  Node& nd = n(x);
  if (nd.lc_refs == 0) {
    nd.tag = t;
    return;
  }
  const std::int64_t before = lc_weight(x);
  nd.tag = t;
  rec(h).counts.lc_weighted += static_cast<std::int64_t>(nd.lc_refs) * (lc_weight(x) - before);
}

void Forest::set_loss(HeapId h, NodeId x, std::uint32_t loss) {
  Node& nd = n(x);
  if (nd.lc_refs == 0) {
    nd.loss = loss;
    return;
  }
  const std::int64_t before = lc_weight(x);
  nd.loss = loss;
  rec(h).counts.lc_weighted += static_cast<std::int64_t>(nd.lc_refs) * (lc_weight(x) - before);
}

void Forest::bump_rank(HeapId h, NodeId x, int delta) {
  Node& nd = n(x);
  if (nd.tag != ViolationTag::N) {
    const Slot s = slot_of(nd.tag);
    if (rec(h).registries[static_cast<int>(s)].get(nd.rank) == x) {
      registry_set(h, s, nd.rank, NodeId{});
      n(x).rank = static_cast<std::uint32_t>(static_cast<int>(n(x).rank) + delta);
      cache_push(h, s, x);
      return;
    }
  }
  nd.rank = static_cast<std::uint32_t>(static_cast<int>(nd.rank) + delta);
}

// ---------------------------------------------------------------------------
// Private blocks

void Forest::set_violation_type(HeapId h, NodeId x, ViolationTag t, bool known_cached) {
  const ViolationTag old = node(x).tag;
  bool was_placed = false;
  if (old != ViolationTag::N) {
    const Slot s = slot_of(old);
    const std::uint32_t rank = node(x).rank;
    if (rec(h).registries[static_cast<int>(s)].get(rank) == x) {
      registry_set(h, s, rank, NodeId{});
      was_placed = true;
    }
  }
  // A violation not in its registry slot is known to sit in its type's cache.
  const bool resides_in_cache = old != ViolationTag::N && old == t && known_cached && !was_placed;
  set_tag(h, x, t);
  if (t != ViolationTag::N && !resides_in_cache) cache_push(h, slot_of(t), x);
}

void Forest::rank_decrement(HeapId h, NodeId p, DecrementCause cause) {
  if (is_rank_root(p)) {
    ViolationTag t = ViolationTag::A;
    if (variant_ == Variant::Meld) {
      t = cause == DecrementCause::ChildRemoval ? ViolationTag::G : node(p).tag;
    }
    set_violation_type(h, p, t);
    bump_rank(h, p, -1);
    return;
  }
  const std::uint32_t old_loss = node(p).loss;
  if (old_loss == 0) {
    set_loss(h, p, 1);
    set_violation_type(h, p, ViolationTag::Lstar);
  } else if (old_loss == 1) {
    set_violation_type(h, p, ViolationTag::Lstar);
    set_loss(h, p, 2);
  } else {
    set_loss(h, p, old_loss + 1);  // L' already cached
  }
  bump_rank(h, p, -1);
  // The degree limit shrank while the degree stayed: restore the reserve.
  if (variant_ == Variant::Meld && old_loss == 0 && cause == DecrementCause::ConversionToNonrank) {
    degree_reduction_step(h, p);
  }
}

void Forest::add_solid_child(HeapId h, NodeId p, NodeId c, bool rank_child, bool floating) {
  {
    Node& cn = n(c);
    cn.parent = p;
    cn.kind = rank_child ? NodeKind::RankChild : NodeKind::NonrankChild;
  }
  if (variant_ == Variant::NoMeld && !rank_child) sib_push_back(n(p).child, c);
  else sib_push_front(n(p).child, c);

  bool reduce_degree = false;
  if (is_rank_root(p)) {
    if (variant_ == Variant::Meld) {
      if (node(p).tag == ViolationTag::A) {
        set_violation_type(h, p, ViolationTag::G);
        reduce_degree = true;
      } else {
        set_violation_type(h, p, ViolationTag::A);
      }
    } else if (rank_child || floating) {
      set_violation_type(h, p, ViolationTag::A, !floating);
    }
  }
  if (rank_child) bump_rank(h, p, +1);
  if (reduce_degree) degree_reduction_step(h, p);
}

void Forest::detach_child(HeapId h, NodeId p, NodeId c) {
  const bool was_rank_child = is_rank_child(c);
  sib_remove(n(p).child, c);
  n(c).parent = NodeId{};
  if (was_rank_child) rank_decrement(h, p, DecrementCause::ChildRemoval);
}

void Forest::remove_child(HeapId h, NodeId p, NodeId c) {
  detach_child(h, p, c);
  sib_push_back(rec(h).roots, c);
  ++counters_.nontree_writes;
}

NodeId Forest::link(HeapId h, NodeId a, NodeId b, bool floating) {
  ++counters_.comparisons;
  ++counters_.links;
  const NodeId s = less(a, b) ? a : b;
  const NodeId loser = s == a ? b : a;
  const bool equal_rank = node(a).rank == node(b).rank;

  if (const NodeId p = node(loser).parent) detach_child(h, p, loser);
  else sib_remove(rec(h).roots, loser);  // part of the tree link, not counted

  if (equal_rank) {
    set_violation_type(h, loser, ViolationTag::N);
    set_loss(h, loser, 0);
  }
  add_solid_child(h, s, loser, equal_rank, floating);
  return s;
}

void Forest::one_node_loss_reduction(HeapId h, NodeId x) {
  const NodeId p = node(x).parent;
  sib_remove(n(p).child, x);
  n(x).kind = NodeKind::NonrankChild;
  if (variant_ == Variant::Meld) sib_push_front(n(p).child, x);
  else sib_push_back(n(p).child, x);
  set_violation_type(h, x, variant_ == Variant::Meld ? ViolationTag::G : ViolationTag::A, false);
  set_loss(h, x, 0);
  rank_decrement(h, p, DecrementCause::ConversionToNonrank);
}

void Forest::two_node_loss_reduction(HeapId h, NodeId x, NodeId y) {
  const NodeId s = link(h, x, y, true);
  set_violation_type(h, s, ViolationTag::N);
  set_loss(h, s, 0);
}

// ---------------------------------------------------------------------------
// Cache reduction steps

ReductionCase Forest::classify_parent(HeapId h, NodeId p, bool matched) const {
  const Node& pn = node(p);
  const HeapRecord& r = record(h);
  auto placed = [&](Slot s) { return r.registries[static_cast<int>(s)].get(pn.rank) == p; };
  using C = ReductionCase;
  switch (pn.tag) {
    case ViolationTag::G:
      if (placed(Slot::G)) return matched ? C::LMatchParentGInGR : C::LPrimeParentGInGR;
      return matched ? C::LMatchParentGInGC : C::LPrimeParentGInGC;
    case ViolationTag::A:
      if (placed(Slot::A)) return matched ? C::LMatchParentAInAR : C::LPrimeParentAInAR;
      return matched ? C::LMatchParentAInAC : C::LPrimeParentAInAC;
    case ViolationTag::Lstar:
      if (placed(Slot::L)) return matched ? C::LMatchParentLInLR : C::LPrimeParentLInLR;
      return matched ? C::LMatchParentLstarInLC : C::LPrimeParentLstarInLC;
    case ViolationTag::N: break;
  }
  return matched ? C::LMatchParentN : C::LPrimeParentN;
}

ReductionOutcome Forest::reduce_rank_root_step(HeapId h, Slot cache) {
  const bool g = cache == Slot::G;
  const ViolationTag t = g ? ViolationTag::G : ViolationTag::A;
  const NodeId x = cache_pop(h, cache);
  ReductionOutcome out;
  out.cache = cache;
  out.node = x;
  if (!node(x).alive || node(x).tag != t) {
    out.rcase = g ? ReductionCase::GcDiscardStale : ReductionCase::AcDiscardStale;
    return out;
  }
  const std::uint32_t rank = node(x).rank;
  const NodeId y = record(h).registries[static_cast<int>(cache)].get(rank);
  if (y == x) {
    out.rcase = g ? ReductionCase::GcDiscardPlaced : ReductionCase::AcDiscardPlaced;
  } else if (!y) {
    registry_set(h, cache, rank, x);
    out.rcase = g ? ReductionCase::GcPlaced : ReductionCase::AcPlaced;
  } else {
    registry_set(h, cache, rank, NodeId{});
    const std::uint64_t restructured = counters_.degree_reduction_steps;
    link(h, x, y, true);
    if (g) out.rcase = ReductionCase::GcMatched;
    else if (counters_.degree_reduction_steps > restructured) out.rcase = ReductionCase::AcMatchedDeferred;
    else out.rcase = ReductionCase::AcMatched;
  }
  return out;
}

ReductionOutcome Forest::reduce_lc_step(HeapId h) {
  const NodeId x = cache_pop(h, Slot::L);
  ReductionOutcome out;
  out.cache = Slot::L;
  out.node = x;
  if (!node(x).alive || node(x).tag != ViolationTag::Lstar) {
    out.rcase = ReductionCase::LcDiscardStale;
    return out;
  }
  if (node(x).loss >= 2) {
    out.rcase = classify_parent(h, node(x).parent, false);
    const std::uint64_t restructured = counters_.degree_reduction_steps;
    one_node_loss_reduction(h, x);
    if (out.rcase == ReductionCase::LPrimeParentN && counters_.degree_reduction_steps > restructured) {
      out.rcase = ReductionCase::LPrimeParentNDeferred;
    }
    return out;
  }
  const std::uint32_t rank = node(x).rank;
  const NodeId y = record(h).registries[static_cast<int>(Slot::L)].get(rank);
  if (y == x) {
    out.rcase = ReductionCase::LcDiscardPlaced;
  } else if (!y) {
    registry_set(h, Slot::L, rank, x);
    out.rcase = ReductionCase::LPlaced;
  } else {
    const NodeId loser = less(x, y) ? y : x;
    const NodeId p = node(loser).parent;
    out.rcase = p == x || p == y ? ReductionCase::LMatchParentMatched : classify_parent(h, p, true);
    registry_set(h, Slot::L, rank, NodeId{});
    two_node_loss_reduction(h, x, y);
  }
  return out;
}

ReductionOutcome Forest::reduce_step(HeapId h, Slot cache) {
  const PhiCoords before = coords(h);
  const std::uint64_t writes = counters_.nontree_writes;
  ReductionOutcome out = cache == Slot::L ? reduce_lc_step(h) : reduce_rank_root_step(h, cache);
  out.before = before;
  out.after = coords(h);

  HeapRecord& r = rec(h);
  r.ledger.reduced += out.after - out.before;
  ++r.ledger.steps;
  r.ledger.reduction_writes += counters_.nontree_writes - writes;
  ++counters_.reduction_steps;
  ++counters_.by_case[static_cast<std::size_t>(out.rcase)];
  if (options_.observer) options_.observer->on_reduction(h, out);
  verify(h, to_string(out.rcase));
  return out;
}

std::uint64_t Forest::reduce_until(HeapId h, ReduceMode mode) {
  std::uint64_t steps = 0;
  auto nonempty = [&](Slot s) { return !record(h).caches[static_cast<int>(s)].empty(); };
  constexpr Slot kOrder[] = {Slot::L, Slot::A, Slot::G};
  for (;;) {
    std::optional<Slot> pick;
    switch (mode) {
      case ReduceMode::DrainAll:
        for (Slot s : kOrder) {
          if (nonempty(s)) {
            pick = s;
            break;
          }
        }
        break;
      case ReduceMode::LedgerDriven: {
        const PhiCoords delta = coords(h) - record(h).ledger.start;
        for (Slot s : kOrder) {
          if (delta[s] > 0 && nonempty(s)) {
            pick = s;
            break;
          }
        }
        break;
      }
      case ReduceMode::DrainRankRoots:
        if (nonempty(Slot::A)) pick = Slot::A;
        else if (nonempty(Slot::G)) pick = Slot::G;
        break;
    }
    if (!pick) return steps;
    reduce_step(h, *pick);
    ++steps;
  }
}

void Forest::run_reductions(HeapId h, bool drain_all, int& lc_budget) {
  const Policy policy = record(h).policy;
  if (drain_all || policy == Policy::Amortized) {
    reduce_until(h, ReduceMode::DrainAll);
  } else if (policy == Policy::WorstCaseLedger) {
    reduce_until(h, ReduceMode::LedgerDriven);
  } else {
    for (; lc_budget > 0 && !record(h).caches[static_cast<int>(Slot::L)].empty(); --lc_budget) {
      reduce_step(h, Slot::L);
    }
    reduce_until(h, ReduceMode::DrainRankRoots);
  }
}

// ---------------------------------------------------------------------------
// Public methods

void Forest::find_min_phases(HeapId h, bool drain_all, int lc_budget) {
  if (!record(h).roots) return;

  // Phase 0: every root becomes a solid rank root tagged A or G.
  for (NodeId x = record(h).roots; x; x = node(x).right) {
    n(x).parent = NodeId{};
    if (variant_ == Variant::Meld) {
      if (is_implicitly_deferred(x)) convert_implicit(h, x);
      if (node(x).kind == NodeKind::ExplicitDeferred) {
        n(x).kind = NodeKind::NonrankChild;
        set_violation_type(h, x, ViolationTag::G);
        continue;
      }
    }
    const ViolationTag t = node(x).tag;
    if (t != ViolationTag::A && !(t == ViolationTag::G && variant_ == Variant::Meld)) {
      set_violation_type(h, x, ViolationTag::A);
      set_loss(h, x, 0);
    }
  }
  verify(h, "find_min phase 0");

  run_reductions(h, drain_all, lc_budget);

  // Phase 2: pairwise linking, walking leftward around the circular root list.
  NodeId cursor = node(record(h).roots).left;
  for (;;) {
    const NodeId d = node(cursor).left;
    if (d == cursor) break;
    const NodeId s = link(h, cursor, d);
    cursor = node(s).left;
  }
  verify(h, "find_min phase 2");

  run_reductions(h, drain_all, lc_budget);
}

void Forest::begin_method(HeapId h) {
  HeapRecord& r = rec(h);
  r.ledger = PotentialLedger{};
  r.ledger.start = r.counts.coords(weights_);
  r.ledger.writes_at_start = counters_.nontree_writes;
  comparisons_at_start_ = counters_.comparisons;
}

void Forest::end_method(Method m, HeapId h, std::int64_t n_before) {
  const HeapRecord& r = record(h);
  if (options_.observer) {
    MethodReport rep;
    rep.method = m;
    rep.heap = h;
    rep.n_before = n_before;
    rep.n_after = r.size;
    rep.start = r.ledger.start;
    rep.end = coords(h);
    rep.injected = (rep.end - rep.start) - r.ledger.reduced;
    rep.steps = r.ledger.steps;
    rep.writes = counters_.nontree_writes - r.ledger.writes_at_start - r.ledger.reduction_writes;
    rep.comparisons = counters_.comparisons - comparisons_at_start_;
    options_.observer->on_method(rep);
  }
  verify(h, to_string(m));
}

void Forest::verify(HeapId h, std::string_view block) const {
  if (!options_.verify_phi) return;
  const PhiSnapshot scanned = compute_phi(h);
  const PhiSnapshot& tracked = record(h).counts;
  if (!(scanned == tracked)) {
    throw std::logic_error("potential ledger mismatch after " + std::string(block) + ": tracked " +
                           to_string(tracked) + ", scanned " + to_string(scanned));
  }
}

PhiSnapshot Forest::compute_phi(HeapId h) const {
  const HeapRecord& r = record(h);
  PhiSnapshot s;
  auto count = [](const RankRegistry& reg) {
    std::int64_t c = 0;
    reg.for_each([&](std::uint32_t, NodeId) { ++c; });
    return c;
  };
  s.gr = count(r.registries[0]);
  s.ar = count(r.registries[1]);
  s.lr = count(r.registries[2]);
  s.gc = static_cast<std::int64_t>(r.caches[0].size());
  s.ac = static_cast<std::int64_t>(r.caches[1].size());
  for (NodeId x : r.caches[2].entries()) s.lc_weighted += lc_weight(x);
  return s;
}

NodeId Forest::insert(HeapId h, std::int64_t key) {
  HeapRecord& r = live_record(h, "insert");
  const std::int64_t n_before = r.size;
  begin_method(h);
  ++counters_.inserts;
  const NodeId x = allocate(h, key);
  HeapRecord& rr = rec(h);
  ++rr.size;
  if (variant_ == Variant::Meld) {
    ++rr.refcount;
    nl_push_back(rr, x);
  }
  sib_push_back(rr.roots, x);
  ++counters_.nontree_writes;
  find_min_phases(h, false, 0);
  end_method(Method::Insert, h, n_before);
  return x;
}

NodeId Forest::add_root_for_testing(HeapId h, std::int64_t key) {
  live_record(h, "add_root_for_testing");
  const NodeId x = allocate(h, key);
  HeapRecord& r = rec(h);
  ++r.size;
  if (variant_ == Variant::Meld) {
    ++r.refcount;
    nl_push_back(r, x);
  }
  sib_push_back(r.roots, x);
  return x;
}

void Forest::attach_for_testing(HeapId h, NodeId p, NodeId c, NodeKind kind) {
  sib_remove(rec(h).roots, c);
  n(c).parent = p;
  n(c).kind = kind;
  sib_push_back(n(p).child, c);
}

std::optional<NodeId> Forest::find_min(HeapId h) {
  const HeapRecord& r = live_record(h, "find_min");
  ++counters_.find_mins;
  if (r.size == 0) return std::nullopt;
  begin_method(h);
  find_min_phases(h, false, 0);
  end_method(Method::FindMin, h, record(h).size);
  return record(h).roots;
}

Entry Forest::delete_min(HeapId h) {
  HeapRecord& r = live_record(h, "delete_min");
  if (r.size == 0) throw HeapError(HeapError::Code::EmptyHeap, "delete_min on an empty heap");
  const std::int64_t n_before = r.size;
  begin_method(h);
  ++counters_.delete_mins;

  const NodeId root = r.roots;
  const Entry out = node(root).entry();
  if (variant_ == Variant::Meld) {
    nl_remove(rec(h), root);
    heap_size_decrement(h);
  } else {
    --rec(h).size;
  }
  rec(h).roots = node(root).child;  // parents are cleared by phase 0
  ++counters_.nontree_writes;
  n(root).child = NodeId{};
  set_violation_type(h, root, ViolationTag::N);
  release(h, root);

  find_min_phases(h, true, 0);
  end_method(Method::DeleteMin, h, n_before);
  return out;
}

void Forest::decrease_key(HeapId h, NodeId x, std::int64_t key) {
  live_record(h, "decrease_key");
  if (!x.valid() || x.value >= nodes_.size() || !node(x).alive) {
    throw HeapError(HeapError::Code::DeadNode, "decrease_key on a node that is not live");
  }
  const HeapId owner = node(x).owner;
  if (owner != h && (variant_ == Variant::NoMeld || is_live(owner))) {
    throw HeapError(HeapError::Code::ForeignNode, "decrease_key on a node of another heap");
  }
  if (key > node(x).key) throw HeapError(HeapError::Code::KeyIncrease, "decrease_key would increase the key");
  ++counters_.decrease_keys;
  if (key == node(x).key) return;

  begin_method(h);
  if (const NodeId p = node(x).parent) remove_child(h, p, x);
  n(x).key = key;
  find_min_phases(h, false, 2);
  end_method(Method::DecreaseKey, h, record(h).size);
}

}  // namespace vcheap
