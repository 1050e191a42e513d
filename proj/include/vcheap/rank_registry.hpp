#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vcheap/types.hpp"

namespace vcheap {

/// Rank-indexed array of optional node handles, one per violation type.
///
/// Capacity doubles incrementally: once a write touches the upper half of the
/// current array, a twice-as-large array is allocated and every later write
/// migrates two more slots into it. Reads consult whichever array holds the
/// authoritative copy of a slot, so no write ever pays for a full copy unless a
/// rank outruns the migration (then the copy is finished eagerly).
class RankRegistry {
 public:
  explicit RankRegistry(std::size_t initial_capacity = 8);

  [[nodiscard]] NodeId get(std::uint32_t rank) const;
  void set(std::uint32_t rank, NodeId x);
  void clear(std::uint32_t rank) { set(rank, NodeId{}); }

  [[nodiscard]] std::size_t occupied() const { return occupied_; }
  [[nodiscard]] std::size_t capacity() const { return active_.size(); }
  [[nodiscard]] bool migrating() const { return !next_.empty(); }

  /// Calls f(rank, node) for every occupied slot in increasing rank order.
  template <class F>
  void for_each(F&& f) const {
    const std::size_t limit = migrating() ? next_.size() : active_.size();
    for (std::size_t r = 0; r < limit; ++r) {
      const NodeId x = get(static_cast<std::uint32_t>(r));
      if (x.valid()) f(static_cast<std::uint32_t>(r), x);
    }
  }

  /// Drops every slot and returns to the initial capacity.
  void reset();

 private:
  NodeId& cell(std::size_t rank);
  void start_migration();
  void migrate_some(std::size_t count);
  void finish_migration();

  std::size_t initial_capacity_;
  std::vector<NodeId> active_;
  std::vector<NodeId> next_;
  std::size_t migrated_ = 0;
  std::size_t occupied_ = 0;
};

}  // namespace vcheap
