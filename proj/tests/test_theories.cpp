#include "doctest.h"

#include "ccel/theories.hpp"

using namespace ccel;

namespace {
FormulaPtr fp(const TheoryFamily& fam, const std::string& text) {
  return parse_formula(text, fam.signature());
}
const TheoryFamily T2 = TheoryFamily::parse("t:2");
const TheoryFamily T3 = TheoryFamily::parse("t:3");
const TheoryFamily LEX = TheoryFamily::parse("lex-dense");
const TheoryFamily ZETA = TheoryFamily::parse("lex-zeta");
const TheoryFamily CD2 = TheoryFamily::parse("colored-dense:2");
}  // namespace

TEST_CASE("family descriptors round-trip") {
  for (const char* d : {"colored-dense:2", "t:3", "lex-dense", "lex-zeta"})
    CHECK(TheoryFamily::parse(d).descriptor() == d);
  CHECK_THROWS_AS(TheoryFamily::parse("t:1"), ValidationError);
  CHECK_THROWS_AS(TheoryFamily::parse("qqq"), ValidationError);
}

TEST_CASE("three pairwise-separated classes need three classes") {
  auto c = [&](const TheoryFamily& fam) {
    return fp(fam, "x < y & y < z & !E0(x,y) & !E0(y,z) & !E0(x,z)");
  };
  CHECK_FALSE(atomic_type_sat(T2, c(T2)));
  CHECK(atomic_type_sat(T3, c(T3)));
}

TEST_CASE("a separation cycle of odd length also overflows two classes") {
  // five points, consecutive separations arranged in a cycle
  auto f = fp(T2,
              "!E0(a,b) & !E0(b,c) & !E0(c,d) & !E0(d,e) & !E0(e,a)");
  CHECK_FALSE(atomic_type_sat(T2, f));
  CHECK(atomic_type_sat(T3, fp(T3,
      "!E0(a,b) & !E0(b,c) & !E0(c,d) & !E0(d,e) & !E0(e,a)")));
}

TEST_CASE("distance literals add up over the quotient") {
  CHECK(atomic_type_sat(
      ZETA, fp(ZETA, "S[E0,1](x,y) & S[E0,1](y,z) & S[E0,2](x,z)")));
  CHECK_FALSE(atomic_type_sat(
      ZETA, fp(ZETA, "S[E0,1](x,y) & S[E0,1](y,z) & S[E0,3](x,z)")));
}

TEST_CASE("convexity forces the middle point into the class") {
  CHECK_FALSE(
      atomic_type_sat(LEX, fp(LEX, "x < y & y < z & E0(x,z) & !E0(x,y)")));
  CHECK(atomic_type_sat(LEX, fp(LEX, "x < y & y < z & E0(x,z) & E0(x,y)")));
  // without convexity the same pattern is satisfiable
  CHECK(atomic_type_sat(T2, fp(T2, "x < y & y < z & E0(x,z) & !E0(x,y)")));
}

TEST_CASE("positive comparison atoms can force class merges") {
  // y < x with x weakly below y's class squeezes both into one class
  auto f = fp(LEX, "y < x & x <= S[E0,0](y)");
  CHECK(atomic_type_sat(LEX, f));
}

TEST_CASE("illegal atoms are rejected per family") {
  CHECK_THROWS_AS(atomic_type_sat(LEX, Formula::pred("P0", "x")),
                  ValidationError);
  CHECK_THROWS_AS(atomic_type_sat(CD2, Formula::equiv("E0", "x", "y")),
                  ValidationError);
  // successor atoms over the non-convex equivalence of t:n
  CHECK_THROWS_AS(atomic_type_sat(T2, Formula::s_rel("E0", 1, "x", "y")),
                  ValidationError);
}

TEST_CASE("colored order constraints respect color exclusivity") {
  CHECK(atomic_type_sat(CD2, fp(CD2, "P0(x) & !P1(x)")));
  CHECK_FALSE(atomic_type_sat(CD2, fp(CD2, "P0(x) & P1(x)")));
  CHECK_FALSE(atomic_type_sat(CD2, fp(CD2, "!P0(x) & !P1(x)")));
  CHECK(atomic_type_sat(CD2, fp(CD2, "P0(x) & P1(y) & x < y")));
}

TEST_CASE("order negations stay consistent") {
  CHECK(atomic_type_sat(LEX, fp(LEX, "!(x < y) & !(y < x)")));
  CHECK_FALSE(atomic_type_sat(LEX, fp(LEX, "!(x < y) & !(y < x) & !(x = y)")));
  CHECK_FALSE(atomic_type_sat(LEX, fp(LEX, "x < y & y < z & z < x")));
}

TEST_CASE("type counts match the family structure") {
  CHECK(enumerate_types(LEX, {"x"}).size() == 1);
  CHECK(enumerate_types(ZETA, {"x"}).size() == 1);
  CHECK(enumerate_types(CD2, {"x"}).size() == 2);
  auto ascending_count = [](const TheoryFamily& fam) {
    int count = 0;
    for (const auto& t : enumerate_types(fam, {"x", "y"}))
      if (witness_evaluate(fam, parse_formula("x < y", fam.signature()), t))
        ++count;
    return count;
  };
  CHECK(ascending_count(LEX) == 2);
  for (const char* d : {"t:2", "t:3", "t:5"}) {
    auto fam = TheoryFamily::parse(d);
    CHECK(enumerate_types(fam, {"x", "y"}).size() == 5);
  }
}

TEST_CASE("quantifier elimination matches hand results") {
  // the one-point rule
  auto qf = eliminate_quantifiers(LEX, fp(LEX, "exists z. (z = x & z < y)"));
  for (const auto& t : enumerate_types(LEX, {"x", "y"}))
    CHECK(witness_evaluate(LEX, qf, t) ==
          witness_evaluate(LEX, fp(LEX, "x < y"), t));

  // a point separated from both endpoints exists in t:2 only when the
  // endpoints share their class
  auto f = fp(T2, "exists z. (x < z & z < y & !E0(z,x) & !E0(z,y))");
  auto expect = fp(T2, "x < y & E0(x,y)");
  auto qf2 = eliminate_quantifiers(T2, f);
  for (const auto& t : enumerate_types(T2, {"x", "y"}))
    CHECK(witness_evaluate(T2, qf2, t) == witness_evaluate(T2, expect, t));

  // dense classes have no last element
  CHECK(decide_sentence(LEX, fp(LEX, "forall x. exists z. (E0(z,x) & x < z)")));
}

TEST_CASE("sentences decide across the families") {
  const char* density =
      "forall x. forall y. (x < y -> exists z. (x < z & z < y))";
  for (const auto& fam : {CD2, T2, T3, LEX, ZETA})
    CHECK(decide_sentence(fam, fp(fam, density)));

  const char* three =
      "exists x. exists y. exists z. (!E0(x,y) & !E0(y,z) & !E0(x,z))";
  CHECK_FALSE(decide_sentence(T2, fp(T2, three)));
  CHECK(decide_sentence(T3, fp(T3, three)));

  CHECK(decide_sentence(ZETA, fp(ZETA, "forall x. exists y. S[E0,1](x,y)")));
  CHECK_FALSE(decide_sentence(LEX, fp(LEX, "exists x. exists y. S[E0,1](x,y)")));
}

TEST_CASE("witness evaluation agrees with elimination on a battery sample") {
  for (const auto& fam : {CD2, T2, LEX, ZETA}) {
    auto battery = binary_battery(fam);
    std::size_t step = battery.size() / 10 + 1;
    for (std::size_t i = 0; i < battery.size(); i += step) {
      const auto& phi = battery[i];
      int bound = fam.kind == FamilyKind::LexOverZeta
                      ? (max_shift_magnitude(phi) > 0 ? 6 : 3)
                      : 0;
      auto qf = eliminate_quantifiers(fam, phi, bound);
      std::vector<std::string> vars(free_vars(phi).begin(),
                                    free_vars(phi).end());
      for (const auto& t : enumerate_types(fam, vars, bound))
        CHECK(witness_evaluate(fam, qf, t) == witness_evaluate(fam, phi, t));
    }
  }
}

TEST_CASE("atomic types decide every battery formula") {
  for (const auto& fam : {T2, LEX}) {
    auto battery = binary_battery(fam);
    for (std::size_t i = 0; i < battery.size(); i += 7) {
      const auto& phi = battery[i];
      std::vector<std::string> vars(free_vars(phi).begin(),
                                    free_vars(phi).end());
      for (const auto& t : enumerate_types(fam, vars)) {
        bool pos = witness_evaluate(fam, phi, t);
        bool neg = witness_evaluate(fam, Formula::negate(phi), t);
        CHECK(pos != neg);
      }
    }
  }
}

TEST_CASE("the monotonicity schema holds on a sample") {
  for (const auto& fam : {T2, LEX, CD2}) {
    auto battery = binary_battery(fam);
    for (std::size_t i = 0; i < battery.size(); i += 11)
      CHECK(decide_sentence(fam, monotonicity_schema(fam, battery[i])));
  }
}

TEST_CASE("elimination reports an undersized distance budget") {
  auto f = fp(ZETA, "S[E0,5](x,y)");
  CHECK_THROWS_AS(eliminate_quantifiers(ZETA, f, 2), DistanceBudgetError);
  CHECK_NOTHROW(eliminate_quantifiers(ZETA, f, 6));
}

TEST_CASE("every enumerated type is satisfiable as a constraint") {
  for (const auto& fam : {T2, LEX, ZETA, CD2})
    for (const auto& t : enumerate_types(fam, {"x", "y"}))
      CHECK(atomic_type_sat(fam, t.to_formula(fam)));
}

TEST_CASE("batteries are large enough and binary") {
  for (const auto& fam : {CD2, T2, T3, LEX, ZETA}) {
    auto b = binary_battery(fam);
    CHECK(b.size() >= 50);
    for (const auto& phi : b) {
      CHECK(quantifier_depth(phi) <= 2);
      for (const auto& v : free_vars(phi)) CHECK((v == "x" || v == "y"));
    }
    CHECK(formula_battery(fam).size() >= b.size());
  }
}
