#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"

using namespace vtest;

TEST_SUITE("heap-core") {

TEST_CASE("make_heap gives empty independent records") {
  Forest f(Variant::NoMeld);
  const HeapId a = f.make_heap(Policy::Amortized);
  const HeapId b = f.make_heap(Policy::WorstCaseLedger);
  CHECK(f.size(a) == 0);
  CHECK_FALSE(f.find_min(a).has_value());
  CHECK(f.record(b).ledger.start == PhiCoords{});
  CHECK(f.record(b).ledger.reduced == PhiCoords{});
  f.insert(a, 4);
  CHECK(f.size(a) == 1);
  CHECK(f.size(b) == 0);
}

TEST_CASE("insert then find_min") {
  for (Variant v : {Variant::NoMeld, Variant::Meld}) {
    Forest f(v);
    const HeapId h = f.make_heap();
    f.insert(h, 5);
    CHECK(f.entry(*f.find_min(h)).key == 5);

    const HeapId g = f.make_heap();
    for (std::int64_t k : {3, 1, 2}) f.insert(g, k);
    CHECK(f.entry(*f.find_min(g)).key == 1);
  }
}

TEST_CASE("find_min on a single root does no work") {
  Forest f(Variant::NoMeld);
  const HeapId h = f.make_heap();
  f.insert(h, 9);
  const auto links = f.counters().links;
  const auto before = phi(f, h);
  CHECK(f.find_min(h).has_value());
  CHECK(f.counters().links == links);
  CHECK(phi(f, h) == before);
}

TEST_CASE("find_min over five roots links four times") {
  for (Variant v : {Variant::NoMeld, Variant::Meld}) {
    Forest f(v);
    const HeapId h = f.make_heap();
    for (std::int64_t k : {50, 10, 40, 20, 30}) f.add_root_for_testing(h, k);
    REQUIRE(root_count(f, h) == 5);
    const auto links = f.counters().links;
    const NodeId m = *f.find_min(h);
    CHECK(f.counters().links - links == 4);
    CHECK(root_count(f, h) == 1);
    CHECK(f.entry(m).key == 10);
  }
}

TEST_CASE("delete_min drains in ascending order") {
  for (Variant v : {Variant::NoMeld, Variant::Meld}) {
    for (Policy p : {Policy::Amortized, Policy::WorstCaseLedger, Policy::WorstCaseSimple}) {
      Forest f(v);
      const HeapId h = f.make_heap(p);
      f.insert(h, 1);
      CHECK(f.delete_min(h).key == 1);
      CHECK(f.size(h) == 0);
      CHECK_THROWS_AS(f.delete_min(h), HeapError);

      std::vector<std::int64_t> keys(100);
      std::iota(keys.begin(), keys.end(), 1);
      std::shuffle(keys.begin(), keys.end(), std::mt19937_64(7));
      for (std::int64_t k : keys) f.insert(h, k);
      for (std::int64_t want = 1; want <= 100; ++want) REQUIRE(f.delete_min(h).key == want);
    }
  }
}

TEST_CASE("decrease_key of a leaf below the root makes it the minimum") {
  Forest f(Variant::NoMeld);
  const HeapId h = f.make_heap();
  std::vector<NodeId> xs;
  for (std::int64_t k = 10; k < 30; ++k) xs.push_back(f.insert(h, k));
  f.delete_min(h);
  const NodeId leaf = xs.back();
  REQUIRE(f.node(leaf).parent.valid());
  f.decrease_key(h, leaf, 0);
  CHECK(*f.find_min(h) == leaf);
}

TEST_CASE("decrease_key rejects increases, dead nodes and foreign heaps") {
  Forest f(Variant::NoMeld);
  const HeapId h = f.make_heap();
  const HeapId g = f.make_heap();
  const NodeId x = f.insert(h, 5);
  const NodeId y = f.insert(g, 5);
  CHECK_THROWS_AS(f.decrease_key(h, x, 6), HeapError);
  CHECK_THROWS_AS(f.decrease_key(h, y, 1), HeapError);
  f.decrease_key(h, x, 5);  // equal key: no-op
  CHECK(f.entry(x).key == 5);
  f.delete_min(h);
  CHECK_THROWS_AS(f.decrease_key(h, x, 1), HeapError);
}

TEST_CASE("cutting a rank child of a rank child records a loss") {
  Forest f(Variant::NoMeld);
  const HeapId h = f.make_heap();
  const NodeId root = binomial(f, h, 3);
  const NodeId p = child_with_key(f, root, 4);  // rank 2 rank child
  const NodeId x = child_with_key(f, p, 6);     // rank 1 rank child
  REQUIRE(f.node(p).loss == 0);
  REQUIRE(f.is_rank_child(p));
  REQUIRE(f.is_rank_child(x));

  f.remove_child(h, p, x);
  CHECK(f.node(p).loss == 1);
  CHECK(f.node(p).tag == ViolationTag::Lstar);
  CHECK(f.node(p).rank == 1);
  CHECK(cache_top(f, h, Slot::L) == p);

  // Through the public method the reductions may place p, but the loss stays.
  Forest g(Variant::NoMeld);
  const HeapId k = g.make_heap();
  const NodeId r2 = binomial(g, k, 3);
  const NodeId p2 = child_with_key(g, r2, 4);
  g.decrease_key(k, child_with_key(g, p2, 6), -1);
  CHECK(g.node(p2).loss == 1);
  CHECK(g.node(p2).tag == ViolationTag::Lstar);
}

TEST_CASE("set_violation_type") {
  Forest f(Variant::NoMeld, {.verify_phi = true});
  const HeapId h = f.make_heap();

  SUBCASE("N to A pushes onto AC") {
    const NodeId x = f.add_root_for_testing(h, 1);
    const auto before = f.coords(h);
    f.set_violation_type(h, x, ViolationTag::A);
    CHECK((f.coords(h) - before).a == 2);
    CHECK(cache_top(f, h, Slot::A) == x);
  }

  SUBCASE("A in its slot to N clears the slot without a push") {
    const NodeId x = f.add_root_for_testing(h, 1);
    f.set_violation_type(h, x, ViolationTag::A);
    f.reduce_step(h, Slot::A);
    REQUIRE(slot_holder(f, h, Slot::A, 0) == x);
    const auto before = phi(f, h);
    f.set_violation_type(h, x, ViolationTag::N);
    CHECK_FALSE(slot_holder(f, h, Slot::A, 0).valid());
    CHECK(cache_size(f, h, Slot::A) == 0);
    CHECK(phi(f, h) - before <= 0);
  }

  SUBCASE("a placed L that takes a second loss moves to LC") {
    const NodeId root = binomial(f, h, 3);
    const NodeId p = child_with_key(f, root, 4);
    f.remove_child(h, p, child_with_key(f, p, 5));  // loss 1, rank 1
    f.reduce_step(h, Slot::L);
    REQUIRE(slot_holder(f, h, Slot::L, 1) == p);
    f.remove_child(h, p, child_with_key(f, p, 6));  // loss 2
    CHECK(f.node(p).loss == 2);
    CHECK_FALSE(slot_holder(f, h, Slot::L, 1).valid());
    CHECK(cache_top(f, h, Slot::L) == p);
  }
}

TEST_CASE("rank_decrement") {
  Forest f(Variant::NoMeld, {.verify_phi = true});
  const HeapId h = f.make_heap();
  const NodeId root = binomial(f, h, 3);
  const NodeId p = child_with_key(f, root, 4);

  SUBCASE("rank child with loss 0 costs four") {
    const auto before = f.coords(h);
    f.rank_decrement(h, p, Forest::DecrementCause::ChildRemoval);
    CHECK(f.node(p).loss == 1);
    CHECK((f.coords(h) - before).l == 4);
  }

  SUBCASE("rank child with loss 2 takes no cache action") {
    f.rank_decrement(h, p, Forest::DecrementCause::ChildRemoval);
    f.rank_decrement(h, p, Forest::DecrementCause::ChildRemoval);
    REQUIRE(f.node(p).loss == 2);
    const auto lc = cache_size(f, h, Slot::L);
    const auto lr = f.running_phi(h).lr;
    const auto before = phi(f, h);
    f.rank_decrement(h, p, Forest::DecrementCause::ChildRemoval);
    CHECK(f.node(p).loss == 3);
    CHECK(cache_size(f, h, Slot::L) == lc);
    CHECK(f.running_phi(h).lr == lr);
    // Per-entry weighting: each LC entry naming p now weighs one more.
    CHECK(phi(f, h) - before == 4 * static_cast<std::int64_t>(f.node(p).lc_refs));
  }

  SUBCASE("rank root is re-cached as A") {
    REQUIRE(slot_holder(f, h, Slot::A, 3) == root);
    const auto before = phi(f, h);
    f.rank_decrement(h, root, Forest::DecrementCause::ChildRemoval);
    CHECK(f.node(root).tag == ViolationTag::A);
    CHECK(cache_top(f, h, Slot::A) == root);
    CHECK(phi(f, h) - before <= 1);
  }
}

TEST_CASE("add_solid_child") {
  Forest f(Variant::NoMeld, {.verify_phi = true});
  const HeapId h = f.make_heap();

  SUBCASE("below a rank child it is a plain splice") {
    const NodeId root = binomial(f, h, 3);
    const NodeId p = child_with_key(f, root, 4);
    const NodeId c = f.add_root_for_testing(h, 100);
    const auto before = phi(f, h);
    const auto rank = f.node(p).rank;
    f.link(h, p, c);
    CHECK(f.node(c).parent == p);
    CHECK(f.node(p).rank == rank);
    CHECK(phi(f, h) == before);
  }

  SUBCASE("first link of two singletons") {
    const NodeId a = f.add_root_for_testing(h, 1);
    const NodeId b = f.add_root_for_testing(h, 2);
    f.link(h, a, b);
    CHECK(f.node(a).rank == 1);
    CHECK(f.is_rank_child(b));
  }
}

TEST_CASE("remove_child") {
  Forest f(Variant::NoMeld, {.verify_phi = true});
  const HeapId h = f.make_heap();
  const NodeId root = binomial(f, h, 2);

  SUBCASE("nonrank child leaves the rank alone") {
    const NodeId c = f.add_root_for_testing(h, 100);
    f.link(h, root, c);
    REQUIRE_FALSE(f.is_rank_child(c));
    const auto rank = f.node(root).rank;
    f.remove_child(h, root, c);
    CHECK(f.node(root).rank == rank);
    CHECK_FALSE(f.node(c).parent.valid());
  }

  SUBCASE("rank child of a root re-caches the root as A") {
    f.remove_child(h, root, child_with_key(f, root, 2));
    CHECK(f.node(root).rank == 1);
    CHECK(f.node(root).tag == ViolationTag::A);
    CHECK(cache_top(f, h, Slot::A) == root);
  }

  SUBCASE("rank child of a rank child adds a loss") {
    const NodeId p = child_with_key(f, root, 2);
    f.remove_child(h, p, child_with_key(f, p, 3));
    CHECK(f.node(p).loss == 1);
  }
}

TEST_CASE("link") {
  SUBCASE("equal ranks make a rank child") {
    Forest f(Variant::NoMeld);
    const HeapId h = f.make_heap();
    const NodeId a = f.add_root_for_testing(h, 3);
    const NodeId b = f.add_root_for_testing(h, 7);
    CHECK(f.link(h, b, a) == a);
    CHECK(f.node(b).parent == a);
    CHECK(f.node(a).rank == 1);
    CHECK(f.node(b).tag == ViolationTag::N);
    CHECK(f.is_rank_child(b));
  }

  SUBCASE("unequal ranks make a nonrank child that stays a rank root") {
    for (Variant v : {Variant::NoMeld, Variant::Meld}) {
      Forest f(v);
      const HeapId h = f.make_heap();
      const NodeId a = binomial(f, h, 2, 3);
      const NodeId b = f.add_root_for_testing(h, 70);
      f.link(h, a, b);
      CHECK(f.node(b).parent == a);
      CHECK(f.node(a).rank == 2);
      CHECK(f.is_rank_root(b));
      if (v == Variant::Meld) CHECK(f.node(a).child == b);  // leftmost
    }
  }

  SUBCASE("equal keys fall back to uids") {
    Forest f(Variant::NoMeld);
    const HeapId h = f.make_heap();
    const NodeId a = f.add_root_for_testing(h, 5);
    const NodeId b = f.add_root_for_testing(h, 5);
    REQUIRE(f.entry(a).uid < f.entry(b).uid);
    CHECK(f.link(h, b, a) == a);
    CHECK(f.node(b).parent == a);
    CHECK_FALSE(f.node(a).parent.valid());
  }
}

TEST_CASE("AC reduction steps") {
  Forest f(Variant::NoMeld, {.verify_phi = true});
  const HeapId h = f.make_heap();
  const NodeId x = f.add_root_for_testing(h, 1);
  const NodeId y = f.add_root_for_testing(h, 2);

  SUBCASE("stale entry") {
    f.set_violation_type(h, x, ViolationTag::A);
    f.node_for_testing(x).tag = ViolationTag::N;
    const auto out = f.reduce_step(h, Slot::A);
    CHECK(out.rcase == ReductionCase::AcDiscardStale);
    CHECK((out.after - out.before).total() == -2);
  }

  SUBCASE("placement then match") {
    f.set_violation_type(h, x, ViolationTag::A);
    f.set_violation_type(h, y, ViolationTag::A);
    const auto first = f.reduce_step(h, Slot::A);
    CHECK(first.rcase == ReductionCase::AcPlaced);
    CHECK((first.after - first.before).total() == -1);
    const auto ar = f.running_phi(h).ar;
    const auto second = f.reduce_step(h, Slot::A);
    CHECK(second.rcase == ReductionCase::AcMatched);
    CHECK((second.after - second.before).total() <= -1);
    CHECK(f.running_phi(h).ar == ar - 1);
    CHECK(f.node(y).parent == x);
  }
}

TEST_CASE("LC reduction steps") {
  Forest f(Variant::NoMeld, {.verify_phi = true});
  const HeapId h = f.make_heap();
  const NodeId root = binomial(f, h, 4);
  const NodeId c3 = child_with_key(f, root, 8);
  const NodeId d2 = child_with_key(f, c3, 12);
  const NodeId c2 = child_with_key(f, root, 4);

  SUBCASE("stale entry") {
    f.remove_child(h, d2, child_with_key(f, d2, 13));
    f.node_for_testing(d2).tag = ViolationTag::N;
    const auto out = f.reduce_step(h, Slot::L);
    CHECK(out.rcase == ReductionCase::LcDiscardStale);
    CHECK((out.after - out.before).total() == -4);
  }

  SUBCASE("placement, then a match below an N parent") {
    f.remove_child(h, d2, child_with_key(f, d2, 13));
    f.remove_child(h, c2, child_with_key(f, c2, 5));
    const auto first = f.reduce_step(h, Slot::L);
    CHECK(first.node == c2);
    CHECK(first.rcase == ReductionCase::LPlaced);
    CHECK((first.after - first.before).total() == -1);

    const auto second = f.reduce_step(h, Slot::L);
    CHECK(second.rcase == ReductionCase::LMatchParentN);
    CHECK((second.after - second.before).total() == -3);
    CHECK(f.node(d2).parent == c2);
    CHECK(f.node(c3).loss == 1);
    CHECK(f.node(c3).tag == ViolationTag::Lstar);
    CHECK(cache_top(f, h, Slot::L) == c3);
  }
}

TEST_CASE("one-node loss reduction") {
  Forest f(Variant::NoMeld, {.verify_phi = true});
  const HeapId h = f.make_heap();
  const NodeId root = binomial(f, h, 4);

  SUBCASE("parent is a rank child") {
    const NodeId p = child_with_key(f, root, 8);  // rank 3
    const NodeId x = child_with_key(f, p, 12);    // rank 2
    f.remove_child(h, x, child_with_key(f, x, 13));
    f.remove_child(h, x, child_with_key(f, x, 14));
    REQUIRE(f.node(x).loss == 2);
    REQUIRE(f.node(p).loss == 0);
    const std::uint64_t loss_before = f.node(x).loss + f.node(p).loss;
    f.one_node_loss_reduction(h, x);
    CHECK(f.node(x).tag == ViolationTag::A);
    CHECK(f.is_rank_root(x));
    CHECK(f.node(p).rank == 2);
    CHECK(f.node(p).loss == 1);
    CHECK(f.node(x).loss + f.node(p).loss < loss_before);
  }

  SUBCASE("parent is a rank root in its slot") {
    const NodeId x = child_with_key(f, root, 4);
    f.remove_child(h, x, child_with_key(f, x, 5));
    f.remove_child(h, x, child_with_key(f, x, 6));
    REQUIRE(slot_holder(f, h, Slot::A, 4) == root);
    const auto before = f.running_phi(h);
    f.one_node_loss_reduction(h, x);
    const auto after = f.running_phi(h);
    CHECK(after.ar - before.ar == -1);
    CHECK(after.ac - before.ac == 2);
    CHECK(f.node(root).tag == ViolationTag::A);
  }
}

TEST_CASE("reduce_until") {
  Forest f(Variant::NoMeld);
  const HeapId h = f.make_heap();
  CHECK(f.reduce_until(h, Forest::ReduceMode::DrainAll) == 0);
  const NodeId root = binomial(f, h, 4);
  f.remove_child(h, child_with_key(f, root, 4), child_with_key(f, child_with_key(f, root, 4), 5));
  f.remove_child(h, child_with_key(f, root, 8), child_with_key(f, child_with_key(f, root, 8), 9));
  f.reduce_until(h, Forest::ReduceMode::DrainAll);
  const PhiSnapshot s = f.compute_phi(h);
  CHECK(s.ac == 0);
  CHECK(s.lc_weighted == 0);
  CHECK(s.phi(f.weights()) == s.ar + 3 * s.lr);
}

}  // TEST_SUITE
