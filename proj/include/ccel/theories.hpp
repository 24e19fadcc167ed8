#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccel/formula.hpp"

namespace ccel {

enum class FamilyKind {
  ColoredDense,  // dense order, c >= 1 colors, each color dense
  DenseClasses,  // one equivalence with n >= 2 classes, each dense
  LexDense,      // one convex equivalence, dense quotient, dense classes
  LexOverZeta,   // one convex equivalence, discrete quotient, dense classes
};

struct TheoryFamily {
  FamilyKind kind = FamilyKind::LexDense;
  int param = 0;  // c for ColoredDense, n for DenseClasses

  // Descriptors: colored-dense:c, t:n, lex-dense, lex-zeta.
  static TheoryFamily parse(const std::string& descriptor);
  std::string descriptor() const;
  Signature signature() const;
  bool has_equiv() const {
    return kind != FamilyKind::ColoredDense;
  }
  bool equiv_convex() const {
    return kind == FamilyKind::LexDense || kind == FamilyKind::LexOverZeta;
  }
};

// Cell layout shared by atomic types and the witness evaluator. Cells are
// strictly increasing positions; class labels are convex runs for the lex
// families and free labels otherwise; gaps are quotient distances between
// consecutive class groups, truncated at bound+1 (meaning "beyond bound").
struct SymConfig {
  int cells = 0;
  std::vector<int> class_of_cell;  // equivalence families only
  std::vector<int> color_of_cell;  // ColoredDense only
  std::vector<int> gaps;           // LexOverZeta: one per group boundary
  int bound = 0;

  std::vector<int> group_of_cell() const;  // lex families
  bool truncated() const;
  std::string key() const;
};

// A maximal atomic pattern over named variables: the weak order of the
// variables plus the family decoration.
struct AtomicType {
  std::vector<std::string> vars;  // sorted
  std::vector<int> cell_of;       // aligned with vars
  SymConfig config;

  std::string key() const;
  // Conjunction of literals pinning this pattern (within the bound).
  FormulaPtr to_formula(const TheoryFamily& fam) const;
  // Drops variables outside `keep` and canonicalizes labels and gaps.
  AtomicType restrict_to(const std::vector<std::string>& keep) const;
};

// All satisfiable atomic patterns over the given variables. Distance bound 0
// picks the default for the family (irrelevant outside LexOverZeta).
std::vector<AtomicType> enumerate_types(const TheoryFamily& fam,
                                        const std::vector<std::string>& vars,
                                        int distance_bound = 0);

// Satisfiability of a conjunction of literals in the family's canonical
// model: order consistency, class pattern consistency (with the class budget
// for DenseClasses and convexity for the lex families), color consistency,
// and integer distance consistency over the quotient for LexOverZeta.
bool atomic_type_sat(const TheoryFamily& fam, const FormulaPtr& conjunction);

// Truth of a formula in the canonical model under the assignment described
// by an atomic type; quantifiers recurse over canonical extensions of the
// configuration (each gap, each anchor, each class/color/distance option).
bool witness_evaluate(const TheoryFamily& fam, const FormulaPtr& f,
                      const AtomicType& context);

// Sentence variant over the empty configuration.
bool witness_decide(const TheoryFamily& fam, const FormulaPtr& sentence);

// Raised when a successor shift in the input exceeds the distance budget.
class DistanceBudgetError : public ValidationError {
public:
  DistanceBudgetError(int required, int budget)
      : ValidationError("distance budget " + std::to_string(budget) +
                        " too small; the formula needs at least " +
                        std::to_string(required)),
        required(required), budget(budget) {}
  int required, budget;
};

// Equivalent quantifier-free formula: a disjunction of complete atomic
// patterns over the free variables. distance_bound 0 = auto.
FormulaPtr eliminate_quantifiers(const TheoryFamily& fam, const FormulaPtr& f,
                                 int distance_bound = 0);

bool decide_sentence(const TheoryFamily& fam, const FormulaPtr& sentence,
                     int distance_bound = 0);

int default_distance_bound(const TheoryFamily& fam, const FormulaPtr& f);

// Binary formulas phi(x, y) exercising each family's signature; at least 50
// entries, quantifier depth at most 2.
std::vector<FormulaPtr> binary_battery(const TheoryFamily& fam);
// Superset with unary and ternary entries for elimination cross-checks.
std::vector<FormulaPtr> formula_battery(const TheoryFamily& fam);

// The closure sentence asserting that moving the parameter of phi(x, y) up,
// within the same unary pattern, can only grow the set of upper bounds it
// leaves behind: every upper bound of phi(U, a') bounds phi(U, a) when
// a <= a' share their unary pattern.
FormulaPtr monotonicity_schema(const TheoryFamily& fam, const FormulaPtr& phi_xy);

}  // namespace ccel
