#include "vcheap/accounting.hpp"

#include <cmath>
#include <sstream>

namespace vcheap {

std::string to_string(const PhiSnapshot& s) {
  std::ostringstream os;
  os << "{gr=" << s.gr << " gc=" << s.gc << " ar=" << s.ar << " ac=" << s.ac << " lr=" << s.lr
     << " lc=" << s.lc_weighted << "}";
  return os.str();
}

std::string_view to_string(ReductionCase c) {
  switch (c) {
    case ReductionCase::AcDiscardStale: return "ac_discard_stale";
    case ReductionCase::AcDiscardPlaced: return "ac_discard_placed";
    case ReductionCase::AcPlaced: return "ac_placed";
    case ReductionCase::AcMatched: return "ac_matched";
    case ReductionCase::AcMatchedDeferred: return "ac_matched_deferred";
    case ReductionCase::GcDiscardStale: return "gc_discard_stale";
    case ReductionCase::GcDiscardPlaced: return "gc_discard_placed";
    case ReductionCase::GcPlaced: return "gc_placed";
    case ReductionCase::GcMatched: return "gc_matched";
    case ReductionCase::LcDiscardStale: return "lc_discard_stale";
    case ReductionCase::LcDiscardPlaced: return "lc_discard_placed";
    case ReductionCase::LPrimeParentGInGR: return "lprime_parent_g_in_gr";
    case ReductionCase::LPrimeParentGInGC: return "lprime_parent_g_in_gc";
    case ReductionCase::LPrimeParentAInAR: return "lprime_parent_a_in_ar";
    case ReductionCase::LPrimeParentAInAC: return "lprime_parent_a_in_ac";
    case ReductionCase::LPrimeParentLInLR: return "lprime_parent_l_in_lr";
    case ReductionCase::LPrimeParentLstarInLC: return "lprime_parent_lstar_in_lc";
    case ReductionCase::LPrimeParentN: return "lprime_parent_n";
    case ReductionCase::LPrimeParentNDeferred: return "lprime_parent_n_deferred";
    case ReductionCase::LPlaced: return "l_placed";
    case ReductionCase::LMatchParentGInGR: return "lmatch_parent_g_in_gr";
    case ReductionCase::LMatchParentGInGC: return "lmatch_parent_g_in_gc";
    case ReductionCase::LMatchParentAInAR: return "lmatch_parent_a_in_ar";
    case ReductionCase::LMatchParentAInAC: return "lmatch_parent_a_in_ac";
    case ReductionCase::LMatchParentLInLR: return "lmatch_parent_l_in_lr";
    case ReductionCase::LMatchParentLstarInLC: return "lmatch_parent_lstar_in_lc";
    case ReductionCase::LMatchParentN: return "lmatch_parent_n";
    case ReductionCase::LMatchParentMatched: return "lmatch_parent_matched";
    case ReductionCase::Count_: break;
  }
  return "?";
}

Slot cache_of(ReductionCase c) {
  if (c <= ReductionCase::AcMatchedDeferred) return Slot::A;
  if (c <= ReductionCase::GcMatched) return Slot::G;
  return Slot::L;
}

const std::vector<CoverageRow>& required_coverage(Variant v) {
  using C = ReductionCase;
  static const std::vector<CoverageRow> no_meld = {
      {"|AC| type != A", {C::AcDiscardStale}},
      {"|AC| type A no match", {C::AcPlaced}},
      {"|AC| type A matched", {C::AcMatched}},
      {"|LC| type != L*", {C::LcDiscardStale}},
      {"|LC| L' parent A in AR", {C::LPrimeParentAInAR}},
      {"|LC| L' parent A in AC", {C::LPrimeParentAInAC}},
      {"|LC| L' parent L in LR", {C::LPrimeParentLInLR}},
      {"|LC| L' parent L* in LC", {C::LPrimeParentLstarInLC}},
      {"|LC| L' parent N", {C::LPrimeParentN}},
      {"|LC| L no match", {C::LPlaced}},
      {"|LC| L matched parent A in AR", {C::LMatchParentAInAR}},
      {"|LC| L matched parent A in AC", {C::LMatchParentAInAC}},
      {"|LC| L matched parent L in LR", {C::LMatchParentLInLR}},
      {"|LC| L matched parent L* in LC", {C::LMatchParentLstarInLC}},
      {"|LC| L matched parent N", {C::LMatchParentN}},
  };
  static const std::vector<CoverageRow> meld = {
      {"|AC| discard", {C::AcDiscardStale, C::AcDiscardPlaced}},
      {"|AC| type A no match", {C::AcPlaced}},
      {"|AC| matched, no 3 deferred children", {C::AcMatched}},
      {"|AC| matched, 3 deferred children", {C::AcMatchedDeferred}},
      {"|GC| discard", {C::GcDiscardStale, C::GcDiscardPlaced}},
      {"|GC| type G no match", {C::GcPlaced}},
      {"|GC| type G matched", {C::GcMatched}},
      {"|LC| discard", {C::LcDiscardStale, C::LcDiscardPlaced}},
      {"|LC| L' parent G in GR", {C::LPrimeParentGInGR}},
      {"|LC| L' parent G in GC", {C::LPrimeParentGInGC}},
      {"|LC| L' parent A in AR", {C::LPrimeParentAInAR}},
      {"|LC| L' parent A in AC", {C::LPrimeParentAInAC}},
      {"|LC| L' parent L in LR", {C::LPrimeParentLInLR}},
      {"|LC| L' parent L* in LC", {C::LPrimeParentLstarInLC}},
      {"|LC| L' parent N, no 3 deferred children", {C::LPrimeParentN}},
      {"|LC| L' parent N, 3 deferred children", {C::LPrimeParentNDeferred}},
      {"|LC| L no match", {C::LPlaced}},
      {"|LC| L matched parent G in GR", {C::LMatchParentGInGR}},
      {"|LC| L matched parent G in GC", {C::LMatchParentGInGC}},
      {"|LC| L matched parent A in AR", {C::LMatchParentAInAR}},
      {"|LC| L matched parent A in AC", {C::LMatchParentAInAC}},
      {"|LC| L matched parent L in LR", {C::LMatchParentLInLR}},
      {"|LC| L matched parent L* in LC", {C::LMatchParentLstarInLC}},
      {"|LC| L matched parent N", {C::LMatchParentN}},
  };
  return v == Variant::Meld ? meld : no_meld;
}

OpCounters& OpCounters::operator+=(const OpCounters& o) {
  comparisons += o.comparisons;
  links += o.links;
  reduction_steps += o.reduction_steps;
  for (std::size_t i = 0; i < kReductionCaseCount; ++i) by_case[i] += o.by_case[i];
  nontree_writes += o.nontree_writes;
  degree_reduction_calls += o.degree_reduction_calls;
  degree_reduction_steps += o.degree_reduction_steps;
  conversions += o.conversions;
  inserts += o.inserts;
  delete_mins += o.delete_mins;
  decrease_keys += o.decrease_keys;
  find_mins += o.find_mins;
  melds += o.melds;
  return *this;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Insert: return "insert";
    case Method::FindMin: return "find_min";
    case Method::DeleteMin: return "delete_min";
    case Method::DecreaseKey: return "decrease_key";
    case Method::Meld: return "meld";
  }
  return "?";
}

std::int64_t rank_bound(std::int64_t n) {
  const double m = static_cast<double>(n < 2 ? 2 : n);
  return static_cast<std::int64_t>(std::floor(6.0 + 1.2 * std::log2(m)));
}

MethodBound method_bound(Variant v, Method m, std::int64_t n_before) {
  const std::int64_t r = rank_bound(n_before);
  if (v == Variant::NoMeld) {
    switch (m) {
      case Method::Insert: return {3, {0, 3, 0}, 3};
      case Method::FindMin: return {0, {0, 0, 0}, 0};
      case Method::DeleteMin: return {2 * r, {0, 2 * r, 0}, 1 + r};
      case Method::DecreaseKey: return {8, {0, 3, 5}, 5};
      case Method::Meld: break;
    }
    return {0, {}, 0};
  }
  const std::int64_t r2 = rank_bound(2 * n_before);
  switch (m) {
    case Method::Insert: return {16, {4, 12, 0}, 5};
    case Method::FindMin: return {0, {0, 0, 0}, 0};
    case Method::DeleteMin:
      // heap size decrement + root removal + phase 0 + phase 2
      return {12 * r2 + 12 * r + 44, {12 * r2 + 20 + 4 * r, 24 + 12 * r, 0}, 21 + 6 * r2 + 4 * r};
    case Method::DecreaseKey: return {28, {8, 13, 12}, 8};
    case Method::Meld: return {14, {8, 6, 0}, 5};
  }
  return {0, {}, 0};
}

BoundCheck assert_table_bounds(Variant v, const MethodReport& report) {
  BoundCheck out;
  const MethodBound b = method_bound(v, report.method, report.n_before);
  const std::string row = std::string(to_string(report.method)) + " (n=" + std::to_string(report.n_before) + ")";
  if (report.injected.total() > b.phi) {
    out.hard.push_back(row + ": injected dPhi " + std::to_string(report.injected.total()) + " > " +
                       std::to_string(b.phi));
  }
  const char* names[] = {"G", "A", "L"};
  const Slot slots[] = {Slot::G, Slot::A, Slot::L};
  for (int i = 0; i < kSlotCount; ++i) {
    if (report.injected[slots[i]] > b.coords[slots[i]]) {
      out.soft.push_back(row + ": injected dPhi_" + names[i] + " " +
                         std::to_string(report.injected[slots[i]]) + " > " +
                         std::to_string(b.coords[slots[i]]));
    }
  }
  if (static_cast<std::int64_t>(report.writes) > b.writes) {
    out.soft.push_back(row + ": non-tree writes " + std::to_string(report.writes) + " > " +
                       std::to_string(b.writes));
  }
  return out;
}

}  // namespace vcheap
