#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vcheap/types.hpp"

namespace vcheap {

/// Coefficients of the potential function. The Meld variant weighs
/// 3|GR|+4|GC|+5|AR|+6|AC|+10|LR|+11|LC|; the no-Meld variant |AR|+2|AC|+3|LR|+4|LC|.
struct PhiWeights {
  std::int64_t gr, gc, ar, ac, lr, lc;

  static constexpr PhiWeights for_variant(Variant v) {
    return v == Variant::Meld ? PhiWeights{3, 4, 5, 6, 10, 11} : PhiWeights{0, 0, 1, 2, 3, 4};
  }
};

/// Per-coordinate potential values (or differences of them).
struct PhiCoords {
  std::int64_t g = 0, a = 0, l = 0;

  [[nodiscard]] constexpr std::int64_t total() const { return g + a + l; }
  [[nodiscard]] constexpr std::int64_t operator[](Slot s) const {
    return s == Slot::G ? g : s == Slot::A ? a : l;
  }
  constexpr PhiCoords& operator+=(const PhiCoords& o) {
    g += o.g, a += o.a, l += o.l;
    return *this;
  }
  friend constexpr PhiCoords operator+(PhiCoords x, const PhiCoords& y) { return x += y; }
  friend constexpr PhiCoords operator-(const PhiCoords& x, const PhiCoords& y) {
    return {x.g - y.g, x.a - y.a, x.l - y.l};
  }
  friend constexpr bool operator==(const PhiCoords&, const PhiCoords&) = default;
};

/// Registry and cache populations of one heap. `lc_weighted` counts each LC
/// entry with weight loss(node) when the node currently is L' (loss >= 2), else 1.
struct PhiSnapshot {
  std::int64_t gr = 0, gc = 0, ar = 0, ac = 0, lr = 0, lc_weighted = 0;

  [[nodiscard]] PhiCoords coords(const PhiWeights& w) const {
    return {w.gr * gr + w.gc * gc, w.ar * ar + w.ac * ac, w.lr * lr + w.lc * lc_weighted};
  }
  [[nodiscard]] std::int64_t phi(const PhiWeights& w) const { return coords(w).total(); }
  friend bool operator==(const PhiSnapshot&, const PhiSnapshot&) = default;
};

std::string to_string(const PhiSnapshot& s);

/// Every way a single cache reduction step can resolve.
enum class ReductionCase : std::uint8_t {
  AcDiscardStale,
  AcDiscardPlaced,
  AcPlaced,
  AcMatched,
  AcMatchedDeferred,  // the survivor's degree reduction found three deferred children
  GcDiscardStale,
  GcDiscardPlaced,
  GcPlaced,
  GcMatched,
  LcDiscardStale,
  LcDiscardPlaced,
  LPrimeParentGInGR,
  LPrimeParentGInGC,
  LPrimeParentAInAR,
  LPrimeParentAInAC,
  LPrimeParentLInLR,
  LPrimeParentLstarInLC,
  LPrimeParentN,
  LPrimeParentNDeferred,  // parent's degree reduction found three deferred children
  LPlaced,
  LMatchParentGInGR,
  LMatchParentGInGC,
  LMatchParentAInAR,
  LMatchParentAInAC,
  LMatchParentLInLR,
  LMatchParentLstarInLC,
  LMatchParentN,
  LMatchParentMatched,  // the loser hangs below the other matched node
  Count_,
};

inline constexpr std::size_t kReductionCaseCount = static_cast<std::size_t>(ReductionCase::Count_);

std::string_view to_string(ReductionCase c);
Slot cache_of(ReductionCase c);

/// A named row of the transformation tables: it is covered once any of its cases fired.
struct CoverageRow {
  std::string name;
  std::vector<ReductionCase> cases;
};

/// Rows every fuzz campaign of the given variant is expected to hit.
const std::vector<CoverageRow>& required_coverage(Variant v);

struct OpCounters {
  std::uint64_t comparisons = 0;
  std::uint64_t links = 0;
  std::uint64_t reduction_steps = 0;
  std::array<std::uint64_t, kReductionCaseCount> by_case{};
  std::uint64_t nontree_writes = 0;
  std::uint64_t degree_reduction_calls = 0;
  std::uint64_t degree_reduction_steps = 0;  // calls that restructured three deferred children
  std::uint64_t conversions = 0;             // implicit -> explicit deferral
  std::uint64_t inserts = 0, delete_mins = 0, decrease_keys = 0, find_mins = 0, melds = 0;

  [[nodiscard]] std::uint64_t hits(ReductionCase c) const {
    return by_case[static_cast<std::size_t>(c)];
  }
  OpCounters& operator+=(const OpCounters& o);
};

enum class Method : std::uint8_t { Insert, FindMin, DeleteMin, DecreaseKey, Meld };
std::string_view to_string(Method m);

/// Result of one cache reduction step, with the exact potential around it.
struct ReductionOutcome {
  Slot cache = Slot::A;
  ReductionCase rcase = ReductionCase::AcDiscardStale;
  NodeId node;
  PhiCoords before, after;
};

/// What one public method did to the potential of the heap it returned into.
struct MethodReport {
  Method method = Method::FindMin;
  HeapId heap;
  std::int64_t n_before = 0;  // heap size at entry (Meld: size of the surviving heap afterwards)
  std::int64_t n_after = 0;
  PhiCoords start, end;
  PhiCoords injected;  // end - start minus everything the reduction steps contributed
  std::uint64_t steps = 0;
  std::uint64_t writes = 0;  // non-tree pointer writes outside reduction steps
  std::uint64_t comparisons = 0;
};

class Observer {
 public:
  virtual ~Observer() = default;
  virtual void on_reduction(HeapId /*heap*/, const ReductionOutcome& /*outcome*/) {}
  virtual void on_method(const MethodReport& /*report*/) {}
};

/// R(n) = floor(6 + 1.2 log2 max(n, 2)): the largest admissible rank.
std::int64_t rank_bound(std::int64_t n);

/// Upper bounds on what a public method may inject into the potential.
struct MethodBound {
  std::int64_t phi;
  PhiCoords coords;
  std::int64_t writes;
};

MethodBound method_bound(Variant v, Method m, std::int64_t n_before);

struct BoundCheck {
  std::vector<std::string> hard;  // potential injected above the table bound
  std::vector<std::string> soft;  // per-coordinate or write-count excess
  [[nodiscard]] bool ok() const { return hard.empty(); }
};

/// Compares an observed method report against the per-method table rows.
BoundCheck assert_table_bounds(Variant v, const MethodReport& report);

}  // namespace vcheap
