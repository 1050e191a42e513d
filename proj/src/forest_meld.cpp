#include <algorithm>
#include <array>

#include "vcheap/forest.hpp"

namespace vcheap {

// Heap node list: list_next ends in nil, list_prev is cyclic. Each list
// operation counts as one non-tree write.

void Forest::nl_push_back(HeapRecord& r, NodeId x) {
  Node& xn = n(x);
  xn.list_next = NodeId{};
  if (!r.nodes) {
    xn.list_prev = x;
    r.nodes = x;
    ++counters_.nontree_writes;
    return;
  }
  const NodeId tail = n(r.nodes).list_prev;
  n(tail).list_next = x;
  xn.list_prev = tail;
  n(r.nodes).list_prev = x;
  ++counters_.nontree_writes;
}

void Forest::nl_remove(HeapRecord& r, NodeId x) {
  Node& xn = n(x);
  if (x == r.nodes) {
    r.nodes = xn.list_next;
    if (r.nodes) n(r.nodes).list_prev = xn.list_prev;
  } else {
    const NodeId prev = xn.list_prev;
    n(prev).list_next = xn.list_next;
    if (xn.list_next) n(xn.list_next).list_prev = prev;
    else n(r.nodes).list_prev = prev;
  }
  xn.list_prev = xn.list_next = NodeId{};
  ++counters_.nontree_writes;
}

void Forest::nl_prepend(HeapRecord& r, NodeId other) {
  if (!other) return;
  if (!r.nodes) {
    r.nodes = other;
    ++counters_.nontree_writes;
    return;
  }
  const NodeId tail = n(r.nodes).list_prev;
  const NodeId other_tail = n(other).list_prev;
  n(other_tail).list_next = r.nodes;
  n(r.nodes).list_prev = other_tail;
  n(other).list_prev = tail;
  r.nodes = other;
  ++counters_.nontree_writes;
}

void Forest::maybe_discard(HeapId h) {
  HeapRecord& r = rec(h);
  if (r.discarded || r.size >= 0 || r.refcount != 0) return;
  r.discarded = true;
  for (auto& reg : r.registries) reg.reset();
  for (auto& c : r.caches) c.release();
  r.free_nodes.clear();
  r.free_nodes.shrink_to_fit();
}

void Forest::discard_caches(HeapId h) {
  HeapRecord& r = rec(h);
  for (NodeId x : r.caches[static_cast<int>(Slot::L)].entries()) --n(x).lc_refs;
  for (auto& c : r.caches) c.release();
  for (auto& reg : r.registries) reg.reset();
  r.counts = PhiSnapshot{};
}

void Forest::convert_implicit(HeapId h, NodeId x) {
  if (!is_implicitly_deferred(x)) return;
  const HeapId old = node(x).owner;
  --rec(old).refcount;
  ++rec(h).refcount;
  Node& xn = n(x);
  xn.owner = h;
  xn.kind = NodeKind::ExplicitDeferred;
  xn.rank = 0;
  xn.loss = 0;
  xn.tag = ViolationTag::N;
  ++counters_.conversions;
  ++counters_.nontree_writes;
  maybe_discard(old);
}

bool Forest::degree_reduction_step(HeapId h, NodeId x) {
  ++counters_.degree_reduction_calls;
  convert_implicit(h, x);
  const NodeId head = node(x).child;
  if (!head) return false;
  std::array<NodeId, 3> c{};
  c[0] = node(head).left;  // rightmost
  if (c[0] == head) return false;
  c[1] = node(c[0]).left;
  if (c[1] == head) return false;
  c[2] = node(c[1]).left;
  for (NodeId d : c) {
    if (!is_deferred(d)) return false;
  }
  for (NodeId d : c) {
    convert_implicit(h, d);
    sib_remove(n(x).child, d);
    n(d).parent = NodeId{};
  }
  counters_.comparisons += 3;
  std::sort(c.begin(), c.end(), [&](NodeId a, NodeId b) { return less(a, b); });
  const auto [s, m, hi] = c;

  n(hi).parent = m;
  sib_push_back(n(m).child, hi);

  n(m).kind = NodeKind::RankChild;
  n(m).rank = 0;
  n(m).parent = s;
  sib_push_front(n(s).child, m);

  n(s).kind = NodeKind::NonrankChild;
  n(s).rank = 1;
  n(s).parent = x;
  sib_push_front(n(x).child, s);
  set_violation_type(h, s, ViolationTag::A);

  ++counters_.degree_reduction_steps;
  return true;
}

void Forest::heap_size_decrement(HeapId h) {
  --rec(h).size;
  --rec(h).refcount;
  for (int round = 0; round < 2; ++round) {
    const NodeId f = record(h).nodes;
    if (!f) return;
    degree_reduction_step(h, f);
    degree_reduction_step(h, f);
    nl_remove(rec(h), f);
    nl_push_back(rec(h), f);
  }
}

HeapId Forest::meld(HeapId h1, HeapId h2) {
  require_meld("meld");
  live_record(h1, "meld");
  live_record(h2, "meld");
  if (h1 == h2) throw HeapError(HeapError::Code::SelfMeld, "meld of a heap with itself");

  const HeapId hs = record(h1).size <= record(h2).size ? h1 : h2;
  const HeapId hh = hs == h1 ? h2 : h1;
  begin_method(hh);
  ++counters_.melds;

  HeapRecord& small = rec(hs);
  HeapRecord& large = rec(hh);
  nl_prepend(large, small.nodes);
  small.nodes = NodeId{};
  large.size += small.size;
  small.size = -1;  // every node still owned by hs is now implicitly deferred
  sib_prepend(large.roots, small.roots);
  ++counters_.nontree_writes;
  small.roots = NodeId{};
  large.free_nodes.insert(large.free_nodes.end(), small.free_nodes.begin(), small.free_nodes.end());
  small.free_nodes.clear();
  discard_caches(hs);
  maybe_discard(hs);

  find_min_phases(hh, false, 0);
  end_method(Method::Meld, hh, record(hh).size);
  return hh;
}

}  // namespace vcheap
