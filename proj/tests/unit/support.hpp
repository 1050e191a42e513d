#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "vcheap/forest.hpp"

namespace vtest {

using namespace vcheap;

inline std::int64_t phi(const Forest& f, HeapId h) { return f.coords(h).total(); }

inline std::size_t cache_size(const Forest& f, HeapId h, Slot s) {
  return f.record(h).caches[static_cast<int>(s)].size();
}

inline NodeId cache_top(const Forest& f, HeapId h, Slot s) {
  return f.record(h).caches[static_cast<int>(s)].entries().back();
}

inline NodeId slot_holder(const Forest& f, HeapId h, Slot s, std::uint32_t rank) {
  return f.record(h).registries[static_cast<int>(s)].get(rank);
}

inline std::size_t root_count(const Forest& f, HeapId h) {
  std::size_t c = 0;
  for (NodeId r = f.record(h).roots; r; r = f.node(r).right) ++c;
  return c;
}

/// Builds a binomial tree of rank k from 2^k fresh roots keyed base, base+1, ...
/// by pairwise links, then drains the caches the links filled. Returns the root.
inline NodeId binomial(Forest& f, HeapId h, unsigned k, std::int64_t base = 0) {
  std::vector<NodeId> level;
  for (std::int64_t i = 0; i < (std::int64_t{1} << k); ++i) level.push_back(f.add_root_for_testing(h, base + i));
  while (level.size() > 1) {
    std::vector<NodeId> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(f.link(h, level[i], level[i + 1]));
    level = next;
  }
  f.reduce_until(h, Forest::ReduceMode::DrainAll);
  return level.front();
}

/// The node with the given key among the children of p.
inline NodeId child_with_key(const Forest& f, NodeId p, std::int64_t key) {
  for (NodeId c = f.node(p).child; c; c = f.node(c).right) {
    if (f.node(c).key == key) return c;
  }
  return NodeId{};
}

/// Random insert/delete_min/decrease_key/meld workload that never consults an oracle.
/// Used by property tests that only watch the observer stream.
inline void random_workload(Forest& f, Policy policy, std::uint64_t seed, std::uint64_t ops,
                            std::array<int, 4> weights = {40, 15, 40, 5}) {
  std::mt19937_64 rng(seed);
  std::vector<HeapId> pool{f.make_heap(policy)};
  const int total = weights[0] + weights[1] + weights[2] + (f.variant() == Variant::Meld ? weights[3] : 0);
  std::vector<NodeId> nodes;
  for (std::uint64_t i = 0; i < ops; ++i) {
    const int r = static_cast<int>(rng() % static_cast<std::uint64_t>(total));
    const HeapId h = pool[rng() % pool.size()];
    if (r < weights[0]) {
      nodes.push_back(f.insert(h, static_cast<std::int64_t>(rng() >> 1)));
    } else if (r < weights[0] + weights[1]) {
      if (f.size(h) > 0) f.delete_min(h);
    } else if (r < weights[0] + weights[1] + weights[2]) {
      if (nodes.empty()) continue;
      const NodeId x = nodes[rng() % nodes.size()];
      if (!f.node(x).alive) continue;
      NodeId top = x;
      while (f.node(top).parent) top = f.node(top).parent;
      HeapId owner;
      for (HeapId q : pool) {
        if (f.record(q).roots == top) owner = q;
      }
      if (!owner) continue;
      const auto drop = static_cast<std::int64_t>(rng() % (std::uint64_t{1} << 32)) + 1;
      f.decrease_key(owner, x, f.node(x).key - drop);
    } else {
      if (pool.size() < 2 || (pool.size() < 8 && rng() % 2 == 0)) {
        pool.push_back(f.make_heap(policy));
        continue;
      }
      const std::size_t a = rng() % pool.size(), b = rng() % pool.size();
      if (a == b) continue;
      const HeapId kept = f.meld(pool[a], pool[b]);
      const HeapId gone = kept == pool[a] ? pool[b] : pool[a];
      pool.erase(std::find(pool.begin(), pool.end(), gone));
    }
  }
}

}  // namespace vtest
