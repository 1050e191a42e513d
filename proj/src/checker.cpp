#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "vcheap/verification.hpp"

namespace vcheap {

double BoundFns::meld_degree(std::int64_t n, std::int64_t p, bool solid_loss0) {
  const double span = static_cast<double>(std::max<std::int64_t>(2 * n - p, 1));
  return (solid_loss0 ? 23.0 : 22.0) + 4.0 * std::log2(span);
}

bool CheckReport::has(std::string_view id) const {
  for (const Finding& f : findings) {
    if (f.id == id) return true;
  }
  return false;
}

std::string CheckReport::summary(std::size_t limit) const {
  if (findings.empty()) return "ok";
  std::ostringstream os;
  os << findings.size() << " finding(s)";
  for (std::size_t i = 0; i < findings.size() && i < limit; ++i) {
    const Finding& f = findings[i];
    os << "\n  " << f.id;
    for (NodeId x : f.nodes) os << " #" << x.value;
    if (!f.detail.empty()) os << ": " << f.detail;
    if (!f.path.empty()) os << " [path " << f.path << "]";
  }
  return os.str();
}

namespace {

class Checker {
 public:
  Checker(const Forest& f, HeapId h, CheckMode mode) : f_(f), h_(h), mode_(mode), r_(f.record(h)) {}

  CheckReport run() {
    if (r_.discarded || r_.size < 0) {
      add("live-record", {}, "heap is retired");
      return std::move(report_);
    }
    walk_roots();
    check_registries();
    check_cache_membership();
    check_potential();
    if (f_.variant() == Variant::Meld) check_node_list();
    if (mode_ == CheckMode::AfterAmortized) check_amortized();
    return std::move(report_);
  }

 private:
  std::string path_to(NodeId x) const {
    std::vector<std::int64_t> keys;
    for (NodeId y = x; y && keys.size() < 64; y = f_.node(y).parent) keys.push_back(f_.node(y).key);
    std::string s;
    for (auto it = keys.rbegin(); it != keys.rend(); ++it) s += (s.empty() ? "" : ">") + std::to_string(*it);
    return s;
  }

  void add(std::string id, std::vector<NodeId> nodes, std::string detail) {
    Finding fd{std::move(id), std::move(nodes), {}, std::move(detail)};
    if (!fd.nodes.empty() && fd.nodes[0].value < f_.node_capacity()) fd.path = path_to(fd.nodes[0]);
    report_.findings.push_back(std::move(fd));
  }

  bool valid_node(NodeId x) const { return x.valid() && x.value < f_.node_capacity(); }

  // Walks one sibling list; returns its members or flags malformation.
  std::vector<NodeId> siblings(NodeId head, NodeId parent) {
    std::vector<NodeId> out;
    if (!head) return out;
    if (!valid_node(head)) {
      add("sibling-list", {parent}, "dangling list head");
      return out;
    }
    NodeId prev = f_.node(head).left;
    for (NodeId c = head; c;) {
      if (!valid_node(c) || seen_.contains(c) || out.size() > f_.node_capacity()) {
        add("sibling-list", {parent, c}, "cycle or dangling sibling link");
        return out;
      }
      out.push_back(c);
      seen_.insert(c);
      if (c != head && f_.node(c).left != prev) add("sibling-list", {c}, "left link does not mirror right link");
      prev = c;
      c = f_.node(c).right;
    }
    if (f_.node(head).left != out.back()) add("sibling-list", {head}, "left of leftmost is not the rightmost");
    return out;
  }

  void walk_roots() {
    const auto roots = siblings(r_.roots, NodeId{});
    if ((r_.size == 0) != roots.empty()) add("root-list", {}, "root list emptiness disagrees with size");
    if (roots.size() > 1) add("single-root", roots, std::to_string(roots.size()) + " roots");
    for (NodeId x : roots) {
      const Node& nd = f_.node(x);
      if (nd.parent.valid()) add("root-parent", {x}, "root has a parent link");
      if (f_.is_deferred(x)) add("root-solid", {x}, "root is deferred");
      if (nd.loss != 0) add("root-loss", {x}, "root has loss " + std::to_string(nd.loss));
      visit(x, 0);
    }
    if (static_cast<std::int64_t>(visited_) != r_.size) {
      add("size", {}, "reached " + std::to_string(visited_) + " nodes, size is " + std::to_string(r_.size));
    }
  }

  void visit(NodeId root, int) {
    std::vector<NodeId> stack{root};
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      ++visited_;
      check_node(x);
      const Node& nd = f_.node(x);
      const auto kids = siblings(nd.child, x);
      std::uint32_t rank_children = 0;
      bool deferred_seen = false;
      std::size_t degree = kids.size();
      for (NodeId c : kids) {
        const Node& cn = f_.node(c);
        if (cn.parent != x) add("parent-link", {c, x}, "child does not point back to its parent");
        if (!(nd.entry() < cn.entry())) add("heap-order", {x, c}, "child key not greater than parent key");
        const bool deferred = f_.is_deferred(c);
        if (deferred) {
          deferred_seen = true;
        } else {
          if (deferred_seen) add("solid-prefix", {x, c}, "solid child right of a deferred child");
          if (f_.is_implicitly_deferred(x)) add("implicit-solid-child", {x, c}, "implicitly deferred node has a solid child");
          if (f_.is_rank_child(c)) {
            ++rank_children;
            if (f_.is_deferred(x)) add("deferred-rank-child", {x, c}, "deferred node has a solid rank child");
          }
        }
        stack.push_back(c);
      }
      if (!f_.is_implicitly_deferred(x) && rank_children != nd.rank) {
        add("rank", {x}, "rank " + std::to_string(nd.rank) + " but " + std::to_string(rank_children) +
                              " rank children");
      }
      max_degree_ = std::max(max_degree_, degree);
      degree_of_[x] = degree;
    }
  }

  void check_node(NodeId x) {
    const Node& nd = f_.node(x);
    if (!nd.alive) add("alive", {x}, "dead node reachable");
    if (f_.variant() == Variant::Meld) {
      const HeapId o = nd.owner;
      if (!o.valid() || o.value >= f_.record_count()) {
        add("owner", {x}, "dangling owner");
        return;
      }
      const HeapRecord& orec = f_.record(o);
      if (orec.discarded) add("owner", {x}, "owner record already discarded");
      if (o != h_ && orec.size >= 0) add("owner", {x}, "node owned by another live heap");
      ++owned_[o];
    } else if (nd.owner != h_) {
      add("owner", {x}, "node owned by another heap");
    }
    if (f_.is_implicitly_deferred(x)) return;  // stored tag/loss are meaningless until conversion

    if (f_.is_deferred(x)) {
      if (nd.tag != ViolationTag::N) add("deferred-tag", {x}, "deferred node has a violation tag");
      if (nd.loss != 0) add("deferred-loss", {x}, "deferred node has loss");
      return;
    }
    if (f_.variant() == Variant::NoMeld && nd.tag == ViolationTag::G) add("no-g", {x}, "tag G in the no-Meld variant");
    if (nd.tag != ViolationTag::N) ++tag_count_[static_cast<int>(slot_of(nd.tag))];
    total_loss_ += nd.loss;
    max_rank_ = std::max<std::int64_t>(max_rank_, nd.rank);
    const bool rank_root = f_.is_rank_root(x);
    switch (nd.tag) {
      case ViolationTag::A:
      case ViolationTag::G:
        if (!rank_root) add("tag-kind", {x}, std::string("tag ") + std::string(to_string(nd.tag)) + " on a rank child");
        if (nd.loss != 0) add("tag-loss", {x}, "rank root with loss");
        break;
      case ViolationTag::Lstar:
        if (!f_.is_rank_child(x)) add("tag-kind", {x}, "tag L* on a node that is not a rank child");
        if (nd.loss == 0) add("tag-loss", {x}, "tag L* with loss 0");
        break;
      case ViolationTag::N:
        if (nd.loss != 0) add("tag-loss", {x}, "loss " + std::to_string(nd.loss) + " but tag N");
        if (rank_root) add("tag-kind", {x}, "rank root without a rank-root tag");
        break;
    }
    if (nd.tag != ViolationTag::N) tagged_.push_back(x);
  }

  void check_registries() {
    static constexpr ViolationTag kTagOf[] = {ViolationTag::G, ViolationTag::A, ViolationTag::Lstar};
    for (int s = 0; s < kSlotCount; ++s) {
      std::int64_t count = 0;
      r_.registries[s].for_each([&](std::uint32_t rank, NodeId x) {
        ++count;
        if (!valid_node(x) || !seen_.contains(x)) {
          add("registry", {x}, "slot names a node outside the heap");
          return;
        }
        const Node& nd = f_.node(x);
        if (nd.rank != rank) add("registry", {x}, "slot rank " + std::to_string(rank) + " != node rank");
        if (nd.tag != kTagOf[s]) add("registry", {x}, "slot type disagrees with the node tag");
        if (s == static_cast<int>(Slot::L) && nd.loss != 1) add("registry", {x}, "LR slot holds a node with loss != 1");
        if (f_.is_deferred(x)) add("registry", {x}, "deferred node placed in a registry");
      });
      if (count != static_cast<std::int64_t>(r_.registries[s].occupied())) {
        add("registry", {}, "occupancy counter disagrees with the slots");
      }
    }
  }

  void check_cache_membership() {
    std::array<std::unordered_set<NodeId>, kSlotCount> in_cache;
    for (int s = 0; s < kSlotCount; ++s) {
      for (NodeId x : r_.caches[s].entries()) in_cache[s].insert(x);
    }
    for (NodeId x : tagged_) {
      const Node& nd = f_.node(x);
      const int s = static_cast<int>(slot_of(nd.tag));
      if (r_.registries[s].get(nd.rank) != x && !in_cache[s].contains(x)) {
        add("cache-membership", {x}, "violation neither placed nor cached");
      }
    }
  }

  void check_potential() {
    const PhiSnapshot scanned = f_.compute_phi(h_);
    if (!(scanned == r_.counts)) {
      add("potential", {}, "running " + to_string(r_.counts) + " != scanned " + to_string(scanned));
    }
  }

  void check_node_list() {
    std::unordered_set<NodeId> listed;
    std::int64_t pos = 0;
    const NodeId head = r_.nodes;
    NodeId prev = head ? f_.node(head).list_prev : NodeId{};
    for (NodeId x = head; x; x = f_.node(x).list_next) {
      if (!valid_node(x) || listed.contains(x) || pos > r_.size) {
        add("node-list", {x}, "cycle or dangling node-list link");
        return;
      }
      listed.insert(x);
      ++pos;
      if (x != head && f_.node(x).list_prev != prev) add("node-list", {x}, "prev link does not mirror next link");
      prev = x;
      if (!seen_.contains(x)) add("node-list", {x}, "listed node not in the heap");
      const Node& nd = f_.node(x);
      const bool solid_loss0 = !f_.is_deferred(x) && nd.loss == 0;
      const auto it = degree_of_.find(x);
      if (it != degree_of_.end()) {
        const double bound = BoundFns::meld_degree(r_.size, pos, solid_loss0);
        if (static_cast<double>(it->second) > bound) {
          add("degree", {x}, "degree " + std::to_string(it->second) + " at list position " + std::to_string(pos) +
                                 " exceeds " + std::to_string(bound));
        }
      }
    }
    if (head && f_.node(head).list_prev != prev) add("node-list", {head}, "prev of head is not the tail");
    if (pos != r_.size) add("node-list", {}, "node list has " + std::to_string(pos) + " nodes, size " + std::to_string(r_.size));
    for (const auto& [o, count] : owned_) {
      const HeapRecord& orec = f_.record(o);
      if (orec.refcount != count) {
        add("refcount", {}, "heap " + std::to_string(o.value) + " refcount " + std::to_string(orec.refcount) +
                                " but owns " + std::to_string(count) + " reachable nodes");
      }
    }
    if (r_.refcount != 0 && !owned_.contains(h_)) add("refcount", {}, "refcount without owned nodes");
  }

  void check_amortized() {
    for (int s = 0; s < kSlotCount; ++s) {
      if (!r_.caches[s].empty()) add("caches-empty", {}, "cache not drained after an amortized method");
    }
    const std::int64_t R = BoundFns::rank(r_.size);
    if (total_loss_ > R + 1) add("total-loss", {}, "total loss " + std::to_string(total_loss_) + " > R(n)+1");
    if (tag_count_[static_cast<int>(Slot::A)] > R + 1) {
      add("count-a", {}, std::to_string(tag_count_[static_cast<int>(Slot::A)]) + " A-tagged nodes > R(n)+1");
    }
    if (tag_count_[static_cast<int>(Slot::G)] > R + 1) {
      add("count-g", {}, std::to_string(tag_count_[static_cast<int>(Slot::G)]) + " G-tagged nodes > R(n)+1");
    }
    if (max_rank_ > R) add("max-rank", {}, "rank " + std::to_string(max_rank_) + " > R(n)=" + std::to_string(R));
    if (f_.variant() == Variant::NoMeld &&
        static_cast<std::int64_t>(max_degree_) > BoundFns::no_meld_degree(r_.size)) {
      add("degree", {}, "degree " + std::to_string(max_degree_) + " > 2R(n)+1");
    }
    const PhiCoords c = r_.counts.coords(f_.weights());
    const PhiWeights& w = f_.weights();
    if (c.g > w.gr * (R + 1) || c.a > w.ar * (R + 1) || c.l > w.lr * (R + 1)) {
      add("equilibrium", {}, "potential above its equilibrium value");
    }
  }

  const Forest& f_;
  HeapId h_;
  CheckMode mode_;
  const HeapRecord& r_;
  CheckReport report_;
  std::unordered_set<NodeId> seen_;
  std::unordered_map<NodeId, std::size_t> degree_of_;
  std::unordered_map<HeapId, std::uint64_t> owned_;
  std::vector<NodeId> tagged_;
  std::size_t visited_ = 0;
  std::size_t max_degree_ = 0;
  std::int64_t max_rank_ = 0;
  std::int64_t total_loss_ = 0;
  std::array<std::int64_t, kSlotCount> tag_count_{};
};

}  // namespace

CheckReport check_structure(const Forest& f, HeapId h, CheckMode mode) {
  return Checker(f, h, mode).run();
}

}  // namespace vcheap
