#pragma once

#include <cstdint>
#include <vector>

#include "vcheap/metrics.hpp"
#include "vcheap/types.hpp"

namespace vcheap {

struct Edge {
  std::uint32_t to;
  std::int64_t weight;
};

/// Directed graph as adjacency lists.
struct Graph {
  std::vector<std::vector<Edge>> adj;
  [[nodiscard]] std::size_t vertices() const { return adj.size(); }
  [[nodiscard]] std::size_t edges() const;
};

/// Random graph with every vertex reachable from 0: a random spanning tree
/// rooted at 0 plus uniformly random extra edges. Weights are uniform in [1, 1000].
Graph random_graph(std::uint32_t n, std::uint64_t m, std::uint64_t seed);
/// All n(n-1) directed edges with random weights.
Graph complete_graph(std::uint32_t n, std::uint64_t seed);

/// O(n^2) array-scan Dijkstra; returns the sum of distances of reachable vertices.
std::int64_t reference_checksum(const Graph& g);

struct BenchResult {
  MetricsRow metrics;
  std::int64_t checksum = 0;
  std::int64_t expected = 0;  // reference value, when the benchmark has one
  [[nodiscard]] bool ok() const { return checksum == expected; }
};

/// Dijkstra from vertex 0 with decrease_key. `expected` comes from reference_checksum.
BenchResult bench_dijkstra(const Graph& g, Variant variant, Policy policy);
/// Inserts n random keys, drains the heap; checksum counts out-of-order outputs (0 expected).
BenchResult bench_heapsort(std::uint64_t n, std::uint64_t seed, Variant variant, Policy policy);
/// Random insert / delete_min / decrease_key mix without an oracle; checksum is the
/// sum of deleted keys modulo 2^63 and is compared with a std::multiset replay.
BenchResult bench_churn(std::uint64_t ops, std::uint64_t seed, Variant variant, Policy policy);

}  // namespace vcheap
