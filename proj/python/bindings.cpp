// Python bindings: a forest of heaps with integer handles, plus the fuzz, trace and bench drivers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vcheap/bench.hpp"
#include "vcheap/forest.hpp"
#include "vcheap/trace.hpp"
#include "vcheap/verification.hpp"

namespace py = pybind11;
using namespace vcheap;

namespace {

HeapId heap_id(std::uint32_t v) { return HeapId{v}; }

NodeId node_id(const Forest& f, std::uint32_t v) {
  if (v >= f.node_capacity()) throw HeapError(HeapError::Code::DeadNode, "unknown node handle");
  return NodeId{v};
}

py::dict counters_dict(const OpCounters& c) {
  py::dict d;
  d["comparisons"] = c.comparisons;
  d["links"] = c.links;
  d["reduction_steps"] = c.reduction_steps;
  d["nontree_writes"] = c.nontree_writes;
  d["degree_reduction_calls"] = c.degree_reduction_calls;
  d["conversions"] = c.conversions;
  d["inserts"] = c.inserts;
  d["delete_mins"] = c.delete_mins;
  d["decrease_keys"] = c.decrease_keys;
  d["find_mins"] = c.find_mins;
  d["melds"] = c.melds;
  return d;
}

py::dict coords_dict(const PhiCoords& c) {
  py::dict d;
  d["g"] = c.g;
  d["a"] = c.a;
  d["l"] = c.l;
  d["total"] = c.total();
  return d;
}

}  // namespace

PYBIND11_MODULE(_vcheap, m) {
  m.doc() = "Violation-cache heaps with exact potential accounting";

  py::register_exception<HeapError>(m, "HeapError", PyExc_ValueError);
  py::register_exception<TraceError>(m, "TraceError", PyExc_ValueError);

  py::class_<Forest>(m, "Forest")
      .def(py::init([](const std::string& variant, bool verify_phi) {
             return std::make_unique<Forest>(parse_variant(variant), ForestOptions{.verify_phi = verify_phi});
           }),
           py::arg("variant") = "nomeld", py::arg("verify_phi") = false)
      .def_property_readonly("variant", [](const Forest& f) { return std::string(to_string(f.variant())); })
      .def(
          "make_heap",
          [](Forest& f, const std::string& policy) { return f.make_heap(parse_policy(policy)).value; },
          py::arg("policy") = "amortized")
      .def(
          "insert", [](Forest& f, std::uint32_t h, std::int64_t key) { return f.insert(heap_id(h), key).value; },
          py::arg("heap"), py::arg("key"))
      .def(
          "find_min",
          [](Forest& f, std::uint32_t h) -> std::optional<py::tuple> {
            const auto x = f.find_min(heap_id(h));
            if (!x) return std::nullopt;
            return py::make_tuple(f.entry(*x).key, x->value);
          },
          py::arg("heap"), "(key, node) of the minimum, or None when empty")
      .def(
          "delete_min",
          [](Forest& f, std::uint32_t h) {
            const Entry e = f.delete_min(heap_id(h));
            return py::make_tuple(e.key, e.uid);
          },
          py::arg("heap"), "(key, uid) of the removed minimum")
      .def(
          "decrease_key",
          [](Forest& f, std::uint32_t h, std::uint32_t x, std::int64_t key) {
            f.decrease_key(heap_id(h), node_id(f, x), key);
          },
          py::arg("heap"), py::arg("node"), py::arg("key"))
      .def(
          "meld", [](Forest& f, std::uint32_t a, std::uint32_t b) { return f.meld(heap_id(a), heap_id(b)).value; },
          py::arg("a"), py::arg("b"), "melds two heaps and returns the surviving handle")
      .def("size", [](const Forest& f, std::uint32_t h) { return f.size(heap_id(h)); }, py::arg("heap"))
      .def("is_live", [](const Forest& f, std::uint32_t h) { return f.is_live(heap_id(h)); }, py::arg("heap"))
      .def(
          "key",
          [](const Forest& f, std::uint32_t x) {
            const NodeId n = node_id(f, x);
            if (!f.node(n).alive) throw HeapError(HeapError::Code::DeadNode, "node is not live");
            return f.node(n).key;
          },
          py::arg("node"))
      .def(
          "potential", [](const Forest& f, std::uint32_t h) { return coords_dict(f.coords(heap_id(h))); },
          py::arg("heap"), "weighted potential coordinates of a heap")
      .def(
          "recomputed_potential",
          [](const Forest& f, std::uint32_t h) { return coords_dict(f.compute_phi(heap_id(h)).coords(f.weights())); },
          py::arg("heap"))
      .def(
          "check",
          [](const Forest& f, std::uint32_t h, bool consolidated) {
            const CheckReport r =
                check_structure(f, heap_id(h), consolidated ? CheckMode::AfterAmortized : CheckMode::AnyTime);
            std::vector<std::string> out;
            for (const Finding& fd : r.findings) out.push_back(fd.id + ": " + fd.detail);
            return out;
          },
          py::arg("heap"), py::arg("consolidated") = false, "structural findings, empty when the heap is sound")
      .def("counters", [](const Forest& f) { return counters_dict(f.counters()); });

  m.def(
      "fuzz",
      [](const std::string& variant, const std::string& policy, std::uint64_t seed, std::uint64_t ops,
         std::uint64_t check_every, bool verify_phi) {
        FuzzConfig cfg;
        cfg.variant = parse_variant(variant);
        cfg.policy = parse_policy(policy);
        cfg.seed = seed;
        cfg.ops = ops;
        cfg.check_every = check_every;
        cfg.verify_phi = verify_phi;
        cfg.fail_fast = false;
        const FuzzSummary s = fuzz_run(cfg);
        py::dict d;
        d["ops"] = s.ops_executed;
        d["checks"] = s.checks_run;
        d["hard_findings"] = s.findings.hard_total();
        d["divergences"] = s.findings.divergences;
        d["soft_notes"] = s.findings.table_bound_soft;
        d["messages"] = s.messages;
        d["counters"] = counters_dict(s.counters);
        return d;
      },
      py::arg("variant") = "nomeld", py::arg("policy") = "amortized", py::arg("seed") = 0, py::arg("ops") = 10000,
      py::arg("check_every") = 0, py::arg("verify_phi") = false);

  m.def(
      "run_trace",
      [](const std::string& text, const std::string& variant, const std::string& policy) {
        std::istringstream in(text);
        return run_trace(parse_trace(in), parse_variant(variant), parse_policy(policy)).outputs;
      },
      py::arg("text"), py::arg("variant") = "nomeld", py::arg("policy") = "amortized",
      "replays trace text and returns the deletemin/findmin output lines");

  m.def(
      "dijkstra",
      [](std::uint32_t n, std::uint64_t edges, std::uint64_t seed, const std::string& variant,
         const std::string& policy) {
        const Graph g = random_graph(n, edges, seed);
        const BenchResult r = bench_dijkstra(g, parse_variant(variant), parse_policy(policy));
        py::dict d;
        d["checksum"] = r.checksum;
        d["expected"] = r.expected;
        d["counters"] = counters_dict(r.metrics.counters);
        return d;
      },
      py::arg("n"), py::arg("edges"), py::arg("seed") = 0, py::arg("variant") = "nomeld",
      py::arg("policy") = "amortized");
}
