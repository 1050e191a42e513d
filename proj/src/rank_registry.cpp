#include "vcheap/rank_registry.hpp"

#include <algorithm>
#include <utility>

namespace vcheap {

RankRegistry::RankRegistry(std::size_t initial_capacity)
    : initial_capacity_(std::max<std::size_t>(initial_capacity, 2)),
      active_(initial_capacity_) {}

NodeId RankRegistry::get(std::uint32_t rank) const {
  const std::size_t cap = active_.size();
  if (!migrating()) return rank < cap ? active_[rank] : NodeId{};
  if (rank < migrated_) return next_[rank];
  if (rank < cap) return active_[rank];
  return rank < next_.size() ? next_[rank] : NodeId{};
}

NodeId& RankRegistry::cell(std::size_t rank) {
  if (!migrating()) return active_[rank];
  if (rank < migrated_) return next_[rank];
  if (rank < active_.size()) return active_[rank];
  return next_[rank];
}

void RankRegistry::set(std::uint32_t rank, NodeId x) {
  if (migrating()) {
    if (rank >= active_.size()) finish_migration();
    else migrate_some(2);
  }
  while (rank >= active_.size()) {
    // Outran the incremental schedule: grow eagerly.
    start_migration();
    finish_migration();
  }
  if (!migrating() && 2 * static_cast<std::size_t>(rank) >= active_.size()) start_migration();

  NodeId& c = cell(rank);
  if (c.valid() && !x.valid()) --occupied_;
  if (!c.valid() && x.valid()) ++occupied_;
  c = x;
}

void RankRegistry::start_migration() {
  next_.assign(active_.size() * 2, NodeId{});
  migrated_ = 0;
}

void RankRegistry::migrate_some(std::size_t count) {
  const std::size_t cap = active_.size();
  for (; count > 0 && migrated_ < cap; --count, ++migrated_) next_[migrated_] = active_[migrated_];
  if (migrated_ == cap) {
    active_ = std::move(next_);
    next_.clear();
    migrated_ = 0;
  }
}

void RankRegistry::finish_migration() {
  if (migrating()) migrate_some(active_.size());
}

void RankRegistry::reset() {
  active_.assign(initial_capacity_, NodeId{});
  next_.clear();
  next_.shrink_to_fit();
  migrated_ = 0;
  occupied_ = 0;
}

}  // namespace vcheap
