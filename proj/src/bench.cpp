#include "vcheap/bench.hpp"

#include <chrono>
#include <limits>
#include <random>
#include <set>

#include "vcheap/forest.hpp"

namespace vcheap {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

MetricsRow row(std::string id, const Forest& f, Variant v, Policy p, double secs, std::int64_t n_end) {
  MetricsRow r;
  r.run_id = std::move(id);
  r.variant = v;
  r.policy = p;
  r.counters = f.counters();
  r.wall_seconds = secs;
  r.n_end = n_end;
  return r;
}

}  // namespace

std::size_t Graph::edges() const {
  std::size_t m = 0;
  for (const auto& a : adj) m += a.size();
  return m;
}

Graph random_graph(std::uint32_t n, std::uint64_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> weight(1, 1000);
  Graph g;
  g.adj.resize(n);
  for (std::uint32_t v = 1; v < n; ++v) {
    const auto u = static_cast<std::uint32_t>(std::uniform_int_distribution<std::uint32_t>(0, v - 1)(rng));
    g.adj[u].push_back({v, weight(rng)});
  }
  if (n >= 2) {
    std::uniform_int_distribution<std::uint32_t> vert(0, n - 1);
    for (std::uint64_t e = n - 1; e < m; ++e) {
      const std::uint32_t u = vert(rng);
      std::uint32_t v = vert(rng);
      while (v == u) v = vert(rng);
      g.adj[u].push_back({v, weight(rng)});
    }
  }
  return g;
}

Graph complete_graph(std::uint32_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> weight(1, 1000);
  Graph g;
  g.adj.resize(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (u != v) g.adj[u].push_back({v, weight(rng)});
    }
  }
  return g;
}

std::int64_t reference_checksum(const Graph& g) {
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  const std::size_t n = g.vertices();
  if (n == 0) return 0;
  std::vector<std::int64_t> dist(n, kInf);
  std::vector<bool> done(n, false);
  dist[0] = 0;
  for (;;) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && dist[v] != kInf && (u == n || dist[v] < dist[u])) u = v;
    }
    if (u == n) break;
    done[u] = true;
    for (const Edge& e : g.adj[u]) dist[e.to] = std::min(dist[e.to], dist[u] + e.weight);
  }
  std::int64_t sum = 0;
  for (std::int64_t d : dist) {
    if (d != kInf) sum += d;
  }
  return sum;
}

BenchResult bench_dijkstra(const Graph& g, Variant variant, Policy policy) {
  const auto t0 = Clock::now();
  const std::size_t n = g.vertices();
  Forest f(variant);
  const HeapId h = f.make_heap(policy);
  std::vector<NodeId> handle(n);
  std::vector<std::uint32_t> vertex_of;  // by node slot
  std::vector<bool> done(n, false);
  std::int64_t sum = 0;
  auto push = [&](std::uint32_t v, std::int64_t d) {
    handle[v] = f.insert(h, d);
    if (handle[v].value >= vertex_of.size()) vertex_of.resize(handle[v].value + 1);
    vertex_of[handle[v].value] = v;
  };
  if (n > 0) push(0, 0);
  while (f.size(h) > 0) {
    const NodeId top = *f.find_min(h);
    const std::uint32_t u = vertex_of[top.value];
    const Entry e = f.delete_min(h);
    done[u] = true;
    sum += e.key;
    for (const Edge& ed : g.adj[u]) {
      if (done[ed.to]) continue;
      const std::int64_t d = e.key + ed.weight;
      if (!handle[ed.to].valid()) push(ed.to, d);
      else if (d < f.entry(handle[ed.to]).key) f.decrease_key(h, handle[ed.to], d);
    }
  }
  BenchResult r;
  r.checksum = sum;
  r.expected = reference_checksum(g);
  r.metrics = row("dijkstra", f, variant, policy, since(t0), f.size(h));
  r.metrics.checksum = sum;
  return r;
}

BenchResult bench_heapsort(std::uint64_t n, std::uint64_t seed, Variant variant, Policy policy) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(seed);
  Forest f(variant);
  const HeapId h = f.make_heap(policy);
  for (std::uint64_t i = 0; i < n; ++i) f.insert(h, static_cast<std::int64_t>(rng()));
  std::int64_t inversions = 0;
  std::optional<Entry> prev;
  while (f.size(h) > 0) {
    const Entry e = f.delete_min(h);
    if (prev && e < *prev) ++inversions;
    prev = e;
  }
  BenchResult r;
  r.checksum = inversions;
  r.expected = 0;
  r.metrics = row("heapsort", f, variant, policy, since(t0), 0);
  r.metrics.checksum = inversions;
  return r;
}

BenchResult bench_churn(std::uint64_t ops, std::uint64_t seed, Variant variant, Policy policy) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(seed);
  Forest f(variant);
  const HeapId h = f.make_heap(policy);
  std::multiset<std::int64_t> model;
  std::vector<NodeId> live;
  std::uint64_t sum = 0, model_sum = 0;
  for (std::uint64_t i = 0; i < ops; ++i) {
    const auto r = rng() % 100;
    if (r < 45 || live.empty()) {
      const auto key = static_cast<std::int64_t>(rng() >> 2);
      live.push_back(f.insert(h, key));
      model.insert(key);
    } else if (r < 70) {
      const Entry e = f.delete_min(h);
      sum += static_cast<std::uint64_t>(e.key);
      model_sum += static_cast<std::uint64_t>(*model.begin());
      model.erase(model.begin());
    } else {
      const std::size_t k = rng() % live.size();
      const NodeId x = live[k];
      if (!f.node(x).alive) {
        live[k] = live.back();
        live.pop_back();
        continue;
      }
      const std::int64_t old = f.entry(x).key;
      const std::int64_t key = old - static_cast<std::int64_t>(rng() % 1000000) - 1;
      f.decrease_key(h, x, key);
      model.erase(model.find(old));
      model.insert(key);
    }
  }
  BenchResult res;
  res.checksum = static_cast<std::int64_t>(sum & 0x7fffffffffffffffULL);
  res.expected = static_cast<std::int64_t>(model_sum & 0x7fffffffffffffffULL);
  res.metrics = row("churn", f, variant, policy, since(t0), f.size(h));
  res.metrics.checksum = res.checksum;
  return res;
}

}  // namespace vcheap
