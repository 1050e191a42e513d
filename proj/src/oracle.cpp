#include "vcheap/verification.hpp"

namespace vcheap {

void OracleHeap::insert(Entry e) {
  set_.insert(e);
  keys_[e.uid] = e.key;
}

std::optional<Entry> OracleHeap::min() const {
  if (set_.empty()) return std::nullopt;
  return *set_.begin();
}

Entry OracleHeap::pop_min() {
  if (set_.empty()) throw HeapError(HeapError::Code::EmptyHeap, "delete_min on an empty heap");
  const Entry e = *set_.begin();
  set_.erase(set_.begin());
  keys_.erase(e.uid);
  return e;
}

void OracleHeap::decrease_key(std::uint64_t uid, std::int64_t key) {
  const auto it = keys_.find(uid);
  if (it == keys_.end()) throw HeapError(HeapError::Code::DeadNode, "decrease_key on a node that is not live");
  if (key > it->second) throw HeapError(HeapError::Code::KeyIncrease, "decrease_key would increase the key");
  set_.erase(Entry{it->second, uid});
  set_.insert(Entry{key, uid});
  it->second = key;
}

void OracleHeap::absorb(OracleHeap& other) {
  set_.merge(other.set_);
  keys_.merge(other.keys_);
  other.set_.clear();
  other.keys_.clear();
}

}  // namespace vcheap
