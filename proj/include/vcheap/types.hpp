#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vcheap {

/// Which public interface a forest supports.
enum class Variant : std::uint8_t { NoMeld, Meld };

/// How much cache reduction work a public method performs before returning.
enum class Policy : std::uint8_t {
  Amortized,        ///< drain every cache before returning
  WorstCaseLedger,  ///< reduce only while a potential coordinate grew and its cache is nonempty
  WorstCaseSimple,  ///< keep GC/AC drained, two LC steps per decrease-key
};

/// Violation type carried by a node. L and L' are both `Lstar`; the subtype follows from the loss.
enum class ViolationTag : std::uint8_t { N, A, G, Lstar };

/// Structural role of a node below its parent. Root status and implicit deferral override it.
enum class NodeKind : std::uint8_t { RankChild, NonrankChild, ExplicitDeferred };

/// Index of a violation type that owns a registry and a cache.
enum class Slot : std::uint8_t { G = 0, A = 1, L = 2 };
inline constexpr int kSlotCount = 3;

namespace detail {

template <class Tag>
struct Handle {
  static constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t value = kNil;

  constexpr Handle() = default;
  constexpr explicit Handle(std::uint32_t v) : value(v) {}
  [[nodiscard]] constexpr bool valid() const { return value != kNil; }
  constexpr explicit operator bool() const { return valid(); }
  friend constexpr auto operator<=>(Handle, Handle) = default;
};

}  // namespace detail

struct NodeTag;
struct HeapTag;
using NodeId = detail::Handle<NodeTag>;
using HeapId = detail::Handle<HeapTag>;

/// A key together with its tie-breaking uid. Ordered lexicographically.
struct Entry {
  std::int64_t key = 0;
  std::uint64_t uid = 0;
  friend constexpr auto operator<=>(const Entry&, const Entry&) = default;
};

class HeapError : public std::runtime_error {
 public:
  enum class Code {
    EmptyHeap,
    KeyIncrease,
    DeadNode,
    ForeignNode,
    RetiredHeap,
    SelfMeld,
    Unsupported,
    InvalidHeap,
  };

  HeapError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] Code code() const { return code_; }

 private:
  Code code_;
};

std::string_view to_string(Variant v);
std::string_view to_string(Policy p);
std::string_view to_string(ViolationTag t);
Variant parse_variant(std::string_view s);
Policy parse_policy(std::string_view s);

}  // namespace vcheap

template <class Tag>
struct std::hash<vcheap::detail::Handle<Tag>> {
  std::size_t operator()(vcheap::detail::Handle<Tag> h) const noexcept {
    return std::hash<std::uint32_t>{}(h.value);
  }
};
