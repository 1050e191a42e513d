#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vcheap/types.hpp"

namespace vcheap {

/// LIFO buffer of violations not yet placed into a registry. Entries may be
/// stale or duplicated; the reducer validates each one when it is popped.
class ViolationCache {
 public:
  void push(NodeId x) { entries_.push_back(x); }

  NodeId pop() {
    const NodeId x = entries_.back();
    entries_.pop_back();
    return x;
  }

  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] std::span<const NodeId> entries() const { return entries_; }

  void release() {
    entries_.clear();
    entries_.shrink_to_fit();
  }

 private:
  std::vector<NodeId> entries_;
};

}  // namespace vcheap
