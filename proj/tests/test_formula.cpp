#include "doctest.h"

#include <random>

#include "ccel/formula.hpp"

using namespace ccel;

namespace {
Signature sig_e0p0() {
  Signature sig;
  sig.preds = {"P0"};
  sig.equivs = {{"E0", true}, {"R", false}};
  return sig;
}

// Random AST over a small signature, for the round-trip property.
FormulaPtr random_ast(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 11 : 6);
  std::vector<std::string> vars{"x", "y", "z", "u"};
  auto v = [&] { return vars[rng() % vars.size()]; };
  switch (pick(rng)) {
    case 0:
      return Formula::less(v(), v());
    case 1:
      return Formula::var_eq(v(), v());
    case 2:
      return Formula::pred("P0", v());
    case 3:
      return Formula::equiv("E0", v(), v());
    case 4:
      return Formula::s_rel("E0", int(rng() % 7) - 3, v(), v());
    case 5:
      return Formula::s_cmp(static_cast<SCmpKind>(rng() % 4), "E0",
                            int(rng() % 7) - 3, v(), v());
    case 6:
      return Formula::truth(rng() % 2 == 0);
    case 7:
      return Formula::negate(random_ast(rng, depth - 1));
    case 8:
      return Formula::conj(random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 9:
      return Formula::disj(random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 10:
      return Formula::implies(random_ast(rng, depth - 1),
                              random_ast(rng, depth - 1));
    default:
      return (rng() % 2 ? Formula::exists(v(), random_ast(rng, depth - 1))
                        : Formula::forall(v(), random_ast(rng, depth - 1)));
  }
}
}  // namespace

TEST_CASE("parsing a quantified formula finds the right free variables") {
  auto f = parse_formula("exists z. (x < z & z < y)", sig_e0p0());
  CHECK(f->kind == Formula::Kind::Exists);
  CHECK(free_vars(f) == std::set<std::string>{"x", "y"});
}

TEST_CASE("parsing a successor comparison atom") {
  auto f = parse_formula("x <= S[E0,2](y)", sig_e0p0());
  CHECK(f->kind == Formula::Kind::SCmp);
  CHECK(f->cmp == SCmpKind::BelowEq);
  CHECK(f->shift == 2);
  CHECK(free_vars(f) == std::set<std::string>{"x", "y"});
}

TEST_CASE("syntax error reports its offset") {
  try {
    parse_formula("x <", sig_e0p0());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
  }
}

TEST_CASE("unknown symbols and bad successor atoms are rejected") {
  CHECK_THROWS_AS(parse_formula("Q0(x)", sig_e0p0()), ParseError);
  CHECK_THROWS_AS(parse_formula("S[Zed,1](x,y)", sig_e0p0()), ParseError);
  // R is declared but not convex, so successor atoms over it are illegal.
  CHECK_THROWS_AS(parse_formula("x < S[R,1](y)", sig_e0p0()), ParseError);
  // Plain membership over a non-convex equivalence stays legal.
  CHECK(parse_formula("R(x,y)", sig_e0p0())->kind == Formula::Kind::Equiv);
}

TEST_CASE("rendering matches the published surface syntax") {
  CHECK(render_formula(Formula::less("x", "y")) == "x < y");
  CHECK(render_formula(Formula::negate(Formula::var_eq("x", "y"))) ==
        "!(x = y)");
  CHECK(render_formula(Formula::s_cmp(SCmpKind::AboveStrict, "E0", -1, "x",
                                      "y")) == "S[E0,-1](y) < x");
  CHECK(render_formula(Formula::s_rel("E0", 2, "x", "y")) == "S[E0,2](x, y)");
}

TEST_CASE("parse/render round-trip is the identity on 1000 random ASTs") {
  std::mt19937_64 rng(0);
  Signature sig = sig_e0p0();
  for (int i = 0; i < 1000; ++i) {
    FormulaPtr f = random_ast(rng, 3);
    FormulaPtr back = parse_formula(render_formula(f), sig);
    CHECK(structurally_equal(f, back));
  }
}

TEST_CASE("substitution avoids capture") {
  Signature sig = sig_e0p0();
  auto f = parse_formula("exists z. (x < z)", sig);
  auto g = substitute_free(f, {{"x", "z"}});
  // z must not be captured by the binder.
  CHECK(free_vars(g) == std::set<std::string>{"z"});
  CHECK(g->name != "z");
}

TEST_CASE("quantifier depth and shift magnitude") {
  Signature sig = sig_e0p0();
  auto f = parse_formula("forall x. exists y. (x < S[E0,-3](y))", sig);
  CHECK(quantifier_depth(f) == 2);
  CHECK(max_shift_magnitude(f) == 3);
}
