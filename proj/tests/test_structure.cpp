#include "doctest.h"

#include "ccel/structure.hpp"
#include "testutil.hpp"

using namespace ccel;

namespace {
FiniteCcelStructure e0_structure() {
  // size 5, E0 convex with blocks [[0,1],[2],[3,4]]
  return FiniteCcelStructure::create(
      5, {},
      {{"E0", true, Partition::from_blocks(5, {{0, 1}, {2}, {3, 4}})}});
}
}  // namespace

TEST_CASE("structure validation accepts contiguous convex blocks") {
  auto s = e0_structure();
  CHECK(s.size() == 5);
  CHECK(s.equiv("E0").block_count() == 3);
}

TEST_CASE("structure validation rejects a non-contiguous convex block") {
  CHECK_THROWS_WITH_AS(
      FiniteCcelStructure::create(
          3, {}, {{"E0", true, Partition::from_blocks(3, {{0, 2}, {1}})}}),
      doctest::Contains("non-contiguous convex block"), ValidationError);
}

TEST_CASE("structure validation accepts a non-convex block when not flagged") {
  auto s = FiniteCcelStructure::create(
      3, {}, {{"E0", false, Partition::from_blocks(3, {{0, 2}, {1}})}});
  CHECK_FALSE(s.equiv_convex("E0"));
}

TEST_CASE("partition validation rejects overlap and gaps") {
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0, 1}, {1, 2}}), ValidationError);
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0, 1}}), ValidationError);
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0, 1}, {2}, {}}), ValidationError);
}

TEST_CASE("duplicate and reserved names are rejected") {
  CHECK_THROWS_WITH_AS(
      FiniteCcelStructure::create(
          2, {{"P0", {true, false}}, {"P0", {false, false}}}, {}),
      doctest::Contains("duplicate name"), ValidationError);
  CHECK_THROWS_AS(FiniteCcelStructure::create(
                      2, {}, {{"eq", true, Partition::equality(2)}}),
                  ValidationError);
}

TEST_CASE("class_successor walks consecutive blocks") {
  auto s = e0_structure();
  auto next = class_successor(s, "E0", 0, 1);
  REQUIRE(next.has_value());
  CHECK(next->min_element == 2);

  auto self = class_successor(s, "E0", 0, 0);
  REQUIRE(self.has_value());
  CHECK(self->min_element == 0);

  CHECK_FALSE(class_successor(s, "E0", 0, 3).has_value());
}

TEST_CASE("class_successor rejects unknown and non-convex equivalences") {
  auto s = FiniteCcelStructure::create(
      3, {}, {{"R", false, Partition::from_blocks(3, {{0, 2}, {1}})}});
  CHECK_THROWS_AS(class_successor(s, "nope", 0, 1), EvalError);
  CHECK_THROWS_AS(class_successor(s, "R", 0, 1), ValidationError);
}

TEST_CASE("class_successor composes with the inverse shift, exhaustively") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& p : testutil::all_convex_partitions(n)) {
      auto s = FiniteCcelStructure::create(n, {}, {{"E", true, p}});
      for (int a = 0; a < n; ++a) {
        auto same = class_successor(s, "E", a, 0);
        REQUIRE(same.has_value());
        CHECK(same->min_element == p.block(p.block_index_of(a)).front());
        for (int k = -n; k <= n; ++k) {
          auto fwd = class_successor(s, "E", a, k);
          if (!fwd) continue;
          auto back = class_successor(s, "E", fwd->min_element, -k);
          REQUIRE(back.has_value());
          CHECK(back->min_element == p.block(p.block_index_of(a)).front());
        }
      }
    }
  }
}

TEST_CASE("convex_closure merges one hull step to a fixpoint") {
  auto r = Partition::from_blocks(4, {{0, 2}, {1}, {3}});
  auto e = convex_closure(r);
  CHECK(e == Partition::from_blocks(4, {{0, 1, 2}, {3}}));
}

TEST_CASE("convex_closure of a convex partition is itself") {
  auto r = Partition::from_blocks(5, {{0, 1}, {2}, {3, 4}});
  CHECK(convex_closure(r) == r);
  CHECK(convex_closure(Partition::equality(3)) == Partition::equality(3));
}

TEST_CASE("convex_closure is convex, coarsens, minimal and idempotent") {
  for (int n = 1; n <= 8; ++n) {
    auto convex_all = testutil::all_convex_partitions(n);
    for (const auto& r : testutil::all_partitions(n)) {
      auto e = convex_closure(r);
      CHECK(e.is_convex());
      CHECK(r.refines(e));
      CHECK(convex_closure(e) == e);
      // Minimality oracle: no strictly finer convex coarsening of r exists.
      for (const auto& c : convex_all) {
        if (!r.refines(c)) continue;
        CHECK(e.refines(c));
      }
    }
  }
}
