#include "doctest.h"

#include <random>
#include <set>

#include "ccel/decompose.hpp"
#include "testutil.hpp"

using namespace ccel;

namespace {

FiniteCcelStructure plain(int n) { return FiniteCcelStructure::create(n, {}, {}); }

FiniteCcelStructure with_e0(int n, const Partition& p) {
  return FiniteCcelStructure::create(n, {}, {{"E0", true, p}});
}

BoolMatrix from_heights(const std::vector<int>& h) {
  // column y = {0 .. h[y]-1}
  BoolMatrix m(static_cast<int>(h.size()));
  for (int y = 0; y < m.n; ++y)
    for (int x = 0; x < h[y]; ++x) m.set(x, y, true);
  return m;
}

std::vector<bool> column_mask(const BoolMatrix& m, int y) {
  std::vector<bool> out(m.n, false);
  for (int x : m.column(y)) out[x] = true;
  return out;
}

}  // namespace

TEST_CASE("initial form: weak order gives the identity case") {
  // x <= y on size 5
  BoolMatrix m = from_heights({1, 2, 3, 4, 5});
  auto form = initial_successor_form(m, 2);
  CHECK(form.equiv == Partition::equality(5));
  CHECK(form.shift == 0);
  CHECK(form.shape == SCmpKind::BelowEq);
}

TEST_CASE("initial form: strict order gives the strict shape at shift zero") {
  // x < y on size 5, anchor 3
  BoolMatrix m = from_heights({0, 1, 2, 3, 4});
  auto form = initial_successor_form(m, 3);
  CHECK(form.equiv == Partition::equality(5));
  CHECK(form.shift == 0);
  CHECK(form.shape == SCmpKind::BelowStrict);
}

TEST_CASE("initial form: block-max family reproduces its equivalence") {
  // column y = {x : x <= max of y's block} for E0 = [[0,1],[2],[3,4]]
  Partition e0 = Partition::from_blocks(5, {{0, 1}, {2}, {3, 4}});
  BoolMatrix m = from_heights({2, 2, 3, 5, 5});
  auto form = initial_successor_form(m, 0);
  // Oracle, run by hand: rows 0,1 = all columns; row 2 = {2,3,4}; rows 3,4 =
  // {3,4}, so row equality rebuilds E0; the column at 0 is {0,1}, one block.
  CHECK(form.equiv == e0);
  CHECK(form.shift == 0);
  CHECK(form.shape == SCmpKind::BelowEq);
  std::vector<bool> expect{true, true, false, false, false};
  CHECK(form.evaluate(0) == expect);
}

TEST_CASE("initial form: empty column yields the empty strict form") {
  BoolMatrix m(3);
  auto form = initial_successor_form(m, 1);
  CHECK(form.shape == SCmpKind::BelowStrict);
  CHECK(form.evaluate(1) == std::vector<bool>{false, false, false});
}

TEST_CASE("initial form rejects non-monotone input with a violating pair") {
  BoolMatrix m(3);
  m.set(0, 0, true);  // column 0 = {0}, column 1 = {}: not nested
  m.set(0, 2, true);
  CHECK_THROWS_AS(initial_successor_form(m, 0), NotMonotone);
  BoolMatrix gap(2);
  gap.set(1, 0, true);  // column 0 = {1}: not an initial segment
  CHECK_THROWS_AS(initial_successor_form(gap, 0), NotMonotone);
}

TEST_CASE("monotonize turns initial-segment columns into a running union") {
  BoolMatrix m(3);
  m.set(0, 0, true);
  auto mono = monotonize(m);
  CHECK(mono.at(0, 0));
  CHECK(mono.at(0, 1));
  CHECK(mono.at(0, 2));
  CHECK_NOTHROW(require_monotone(mono));
}

TEST_CASE("monotone decomposition: one case when all columns share a form") {
  BoolMatrix m = from_heights({1, 2, 3, 4});  // x <= y
  auto cl = monotone_decompose(m);
  CHECK(cl.cases.size() == 1);
  CHECK(cl.cases[0].guard == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("monotone decomposition: split shapes produce two cases") {
  // D(y) = {x : x <= y} for y < 2 and {x : x < y} for y >= 2 on size 4.
  BoolMatrix m = from_heights({1, 2, 2, 3});
  auto cl = monotone_decompose(m);
  REQUIRE(cl.cases.size() == 2);
  CHECK(cl.cases[0].guard == std::vector<int>{0, 1});
  CHECK(cl.cases[0].form.shape == SCmpKind::BelowEq);
  CHECK(cl.cases[1].guard == std::vector<int>{2, 3});
  CHECK(cl.cases[1].form.shape == SCmpKind::BelowStrict);
}

TEST_CASE("monotone decomposition: all-false matrix is a single empty case") {
  BoolMatrix m(3);
  auto cl = monotone_decompose(m);
  REQUIRE(cl.cases.size() == 1);
  CHECK(cl.cases[0].guard == std::vector<int>{0, 1, 2});
  CHECK(cl.cases[0].form.evaluate(0) == std::vector<bool>{false, false, false});
}

TEST_CASE("monotone decomposition case count is bounded by distinct fibers") {
  // Bounded by distinct (column, anchor-membership) pairs: the same column
  // needs two shapes when it occurs at anchors inside and outside it.
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 8; ++n)
    for (int trial = 0; trial < 50; ++trial) {
      BoolMatrix m = from_heights(testutil::random_monotone_heights(n, rng));
      auto cl = monotone_decompose(m);
      std::set<std::pair<std::vector<bool>, bool>> fibers;
      for (int y = 0; y < n; ++y)
        fibers.insert({column_mask(m, y), m.at(y, y)});
      CHECK(cl.cases.size() <= fibers.size());
    }
}

TEST_CASE("function decomposition: identity is one case at shift zero") {
  std::vector<int> f{0, 1, 2, 3, 4};
  auto cl = function_decompose(5, f);
  REQUIRE(cl.cases.size() == 1);
  CHECK(cl.cases[0].equiv == Partition::equality(5));
  CHECK(cl.cases[0].shift == 0);
  CHECK(cl.cases[0].guard == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("function decomposition: block maximum splits by being the max") {
  // f(a) = max of a's block under E0 = [[0,1],[2],[3,4]]
  std::vector<int> f{1, 1, 2, 4, 4};
  auto cl = function_decompose(5, f);
  REQUIRE(cl.cases.size() == 2);
  // guards split by "a is its block maximum" vs not
  CHECK(cl.cases[0].guard == std::vector<int>{0, 3});
  CHECK(cl.cases[0].shift == 1);
  CHECK(cl.cases[0].equiv == Partition::equality(5));
  CHECK(cl.cases[1].guard == std::vector<int>{1, 2, 4});
  CHECK(cl.cases[1].shift == 0);
}

TEST_CASE("function decomposition: constant uses predecessor shifts") {
  std::vector<int> f{0, 0, 0};
  auto cl = function_decompose(3, f);
  REQUIRE(cl.cases.size() == 2);
  CHECK(cl.cases[0].guard == std::vector<int>{0});
  CHECK(cl.cases[0].shift == 0);
  CHECK(cl.cases[1].guard == std::vector<int>{1, 2});
  CHECK(cl.cases[1].shift == -1);
  CHECK(cl.cases[1].equiv == Partition::from_blocks(3, {{0}, {1, 2}}));
  // Exhaustive oracle: each point's pair must be among all (E, N) with
  // S[E,N](a) = {f(a)}.
  for (const auto& c : cl.cases)
    for (int a : c.guard) {
      bool found = false;
      for (const auto& e : testutil::all_convex_partitions(3))
        for (int shift = -3; shift <= 3; ++shift) {
          auto idx = successor_block(e, a, shift);
          if (idx && e.block(*idx) == std::vector<int>{f[a]} && e == c.equiv &&
              shift == c.shift)
            found = true;
        }
      CHECK(found);
    }
}

TEST_CASE("function decomposition reassembles arbitrary functions") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 7; ++n)
    for (int trial = 0; trial < 60; ++trial) {
      auto f = testutil::random_function(n, rng);
      auto cl = function_decompose(n, f);  // self-verifying
      int guarded = 0;
      for (const auto& c : cl.cases) guarded += static_cast<int>(c.guard.size());
      CHECK(guarded == n);
    }
}

TEST_CASE("convex normal form: band over a declared equivalence") {
  auto s = with_e0(5, Partition::from_blocks(5, {{0, 1}, {2}, {3, 4}}));
  auto band = convex_normal_form(s, {2, 3, 4}, {2}, 5);
  std::vector<bool> expect{false, false, true, true, true};
  CHECK(band.evaluate() == expect);
  // The weak band from {2} through one block up of E0 also verifies.
  BandForm alt;
  alt.lower = {Partition::equality(5), 0, SCmpKind::AboveEq};
  alt.lower_anchor = 2;
  alt.upper = {s.equiv("E0"), 1, SCmpKind::BelowEq};
  alt.upper_anchor = 2;
  CHECK(alt.evaluate() == expect);
}

TEST_CASE("convex normal form: whole domain via the full relation") {
  auto s = plain(4);
  auto band = convex_normal_form(s, {0, 1, 2, 3}, {0}, 4);
  CHECK(band.evaluate() == std::vector<bool>{true, true, true, true});
  CHECK(band.lower.equiv == Partition::full(4));
  CHECK(band.upper.equiv == Partition::full(4));
}

TEST_CASE("convex normal form: empty set gets an empty band") {
  auto s = plain(4);
  auto band = convex_normal_form(s, {}, {0}, 4);
  CHECK(band.evaluate() == std::vector<bool>{false, false, false, false});
}

TEST_CASE("convex normal form: errors") {
  auto s = plain(4);
  CHECK_THROWS_AS(convex_normal_form(s, {0, 2}, {0}, 4), ValidationError);
  CHECK_THROWS_AS(convex_normal_form(s, {1, 2}, {}, 4), ValidationError);
  // Shift bound too small to reach the set from the anchor.
  CHECK_THROWS_WITH_AS(convex_normal_form(s, {3}, {0}, 1),
                       doctest::Contains("shift bound"), ValidationError);
}

TEST_CASE("convex normal form verifies over random inputs") {
  std::mt19937_64 rng(13);
  for (int n = 1; n <= 8; ++n) {
    auto convex = testutil::all_convex_partitions(n);
    for (int trial = 0; trial < 40; ++trial) {
      auto s = with_e0(n, convex[rng() % convex.size()]);
      auto set = testutil::random_convex_set(n, rng);
      std::vector<int> params{static_cast<int>(rng() % n)};
      auto band = convex_normal_form(s, set, params, n);
      std::vector<bool> expect(n, false);
      for (int e : set) expect[e] = true;
      CHECK(band.evaluate() == expect);
    }
  }
}

TEST_CASE("one-param: a singleton at the anchor is the doubly-complemented point") {
  auto s = plain(5);
  BoolMatrix m(5);
  for (int y = 0; y < 5; ++y) m.set(y, y, true);  // D(y) = {y}
  auto rep = one_param_decompose(s, m, 2);
  CHECK(rep.expr.kind == BcExpression::Kind::Complement);
  std::vector<bool> expect{false, false, true, false, false};
  CHECK(evaluate_bc(rep.expr, s, rep.partitions, 2) == expect);
}

TEST_CASE("one-param: the open upper interval is its own leaf") {
  auto s = plain(5);
  BoolMatrix m(5);
  for (int y = 0; y < 5; ++y)
    for (int x = y + 1; x < 5; ++x) m.set(x, y, true);  // D(y) = (y, inf)
  auto rep = one_param_decompose(s, m, 1);
  CHECK(rep.expr.kind == BcExpression::Kind::IntervalAbove);
}

TEST_CASE("one-param: block minus the anchor exercises the end-part case") {
  Partition e0 = Partition::from_blocks(6, {{0, 1, 2}, {3, 4, 5}});
  auto s = with_e0(6, e0);
  BoolMatrix m(6);
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) m.set(x, y, e0.same_block(x, y) && x != y);
  auto rep = one_param_decompose(s, m, 1);
  std::vector<bool> expect{true, false, true, false, false, false};
  CHECK(evaluate_bc(rep.expr, s, rep.partitions, 1) == expect);
  // Hand-run of the construction: above the anchor, the counts over {0,1}
  // are 2 at x=2 and 1 from 3 on, so the first peel is {3,4,5} (band
  // S[E0,0](1) < x <= S[full,0](1), an end part of the single full block)
  // and the second is {2}, an end part of the anchor's E0 block.
  REQUIRE(rep.peels_above.size() == 2);
  CHECK(rep.peels_above[0].segment == std::vector<int>{3, 4, 5});
  CHECK(rep.peels_above[0].end_part_case);
  CHECK(rep.partitions[rep.peels_above[0].upper_partition_id].partition ==
        Partition::full(6));
  CHECK(rep.peels_above[1].segment == std::vector<int>{2});
  CHECK(rep.peels_above[1].end_part_case);
  CHECK(rep.partitions[rep.peels_above[1].upper_partition_id].partition == e0);
}

TEST_CASE("one-param: a whole block above the anchor is taken as one piece") {
  Partition e0 = Partition::from_blocks(5, {{0}, {1, 2}, {3, 4}});
  auto s = with_e0(5, e0);
  BoolMatrix m(5);
  for (int y = 0; y < 5; ++y)
    for (int x : {1, 2}) m.set(x, y, true);  // every column is {1,2}
  auto rep = one_param_decompose(s, m, 0);
  std::vector<bool> expect{false, true, true, false, false};
  CHECK(evaluate_bc(rep.expr, s, rep.partitions, 0) == expect);
  // The peel (0, 2] is bounded above by one shift of E0 and starts beyond
  // the anchor's block, so it is consumed as whole blocks.
  bool saw_whole_block = false;
  for (const auto& p : rep.peels_above)
    if (!p.end_part_case && p.segment == std::vector<int>{1, 2}) {
      saw_whole_block = true;
      CHECK(rep.partitions[p.upper_partition_id].partition == e0);
    }
  CHECK(saw_whole_block);
}

TEST_CASE("one-param decomposition re-evaluates on random matrices") {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 8; ++n) {
    auto convex = testutil::all_convex_partitions(n);
    for (int trial = 0; trial < 60; ++trial) {
      auto s = with_e0(n, convex[rng() % convex.size()]);
      BoolMatrix m(n);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) m.set(x, y, rng() % 2 == 0);
      int anchor = static_cast<int>(rng() % n);
      CHECK_NOTHROW(one_param_decompose(s, m, anchor));
    }
  }
}

TEST_CASE("almost-convex split: convex input needs one color") {
  auto r = Partition::from_blocks(4, {{0}, {1, 2}, {3}});
  auto res = almost_convex_split(r);
  CHECK(res.coarsening == r);
  REQUIRE(res.colors.size() == 1);
  CHECK(res.colors[0] == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("almost-convex split: equality under the full coarsening") {
  auto res = almost_convex_split(Partition::equality(3), Partition::full(3));
  CHECK(res.colors.size() == 3);
}

TEST_CASE("almost-convex split: two colors for an uneven refinement") {
  auto r = Partition::from_blocks(4, {{0}, {1}, {2, 3}});
  auto e = Partition::from_blocks(4, {{0, 1}, {2, 3}});
  auto res = almost_convex_split(r, e);
  REQUIRE(res.colors.size() == 2);
  CHECK(res.colors[0] == std::vector<int>{0, 2, 3});
  CHECK(res.colors[1] == std::vector<int>{1});
}

TEST_CASE("almost-convex split colors are minimal, exhaustively") {
  for (int n = 1; n <= 6; ++n)
    for (const auto& r : testutil::all_partitions(n)) {
      auto res = almost_convex_split(r);
      int k = static_cast<int>(res.colors.size());
      // Pigeonhole floor: some coarse block holds `needed` r-blocks, so no
      // coloring with fewer colors can separate them.
      int needed = 0;
      for (const auto& big : res.coarsening.blocks()) {
        std::set<int> rblocks;
        for (int x : big) rblocks.insert(r.block_index_of(x));
        needed = std::max(needed, static_cast<int>(rblocks.size()));
      }
      CHECK(k == needed);
    }
}

TEST_CASE("almost-convex split rejects a non-coarsening") {
  auto r = Partition::from_blocks(3, {{0, 1}, {2}});
  CHECK_THROWS_AS(almost_convex_split(r, Partition::equality(3)),
                  ValidationError);
}
