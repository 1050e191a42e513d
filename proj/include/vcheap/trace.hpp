#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcheap/forest.hpp"
#include "vcheap/metrics.hpp"

namespace vcheap {

/// One line of a trace file.
///
///   insert <key> [@heap]
///   deletemin [@heap]
///   findmin [@heap]
///   decreasekey <handle> <key>
///   meld <heap> <heap>
///   newheap
///
/// Handles are the 0-based index of the insert that created the node. Heaps
/// are numbered in newheap order; heap 0 exists implicitly. After a meld both
/// heap refs name the result. Blank lines and text after '#' are ignored.
struct TraceOp {
  enum class Kind : std::uint8_t { Insert, DeleteMin, FindMin, DecreaseKey, Meld, NewHeap };
  Kind kind = Kind::FindMin;
  std::int64_t key = 0;
  std::uint64_t a = 0;  // heap ref (insert/deletemin/findmin/meld) or handle (decreasekey)
  std::uint64_t b = 0;  // second heap ref (meld)
  int line = 0;

  friend bool operator==(const TraceOp& x, const TraceOp& y) {
    return x.kind == y.kind && x.key == y.key && x.a == y.a && x.b == y.b;
  }
};

class TraceError : public std::runtime_error {
 public:
  TraceError(int line, const std::string& what, bool usage)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line), usage(usage) {}
  int line;
  bool usage;  // malformed input rather than a semantic failure
};

std::vector<TraceOp> parse_trace(std::istream& in);
std::vector<TraceOp> read_trace_file(const std::string& path);
std::string format_op(const TraceOp& op);
void write_trace(std::ostream& out, const std::vector<TraceOp>& ops, const std::string& header = {});

struct TraceResult {
  std::vector<std::string> outputs;  // one line per deletemin/findmin
  MetricsRow metrics;
};

/// Executes the ops on a fresh forest. Each output line is also written to `echo` when given.
TraceResult run_trace(const std::vector<TraceOp>& ops, Variant variant, Policy policy,
                      ForestOptions options = {}, std::ostream* echo = nullptr);

}  // namespace vcheap
