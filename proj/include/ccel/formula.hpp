#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ccel/errors.hpp"

namespace ccel {

// Predicate / equivalence names visible to the parser. The convex flag gates
// successor atoms. "eq" and "full" are implicit convex equivalences and are
// not listed here.
struct Signature {
  std::vector<std::string> preds;
  struct Equiv {
    std::string name;
    bool convex = false;
  };
  std::vector<Equiv> equivs;

  bool has_pred(const std::string& n) const;
  bool has_equiv(const std::string& n) const;   // includes eq/full
  bool equiv_convex(const std::string& n) const;
  // Convex equivalence names, built-ins included, coarsest first by
  // declaration then eq last.
  std::vector<std::string> convex_equiv_names() const;
};

// Comparison of an element against a shifted class boundary.
//   BelowStrict: x <  S[E,n](y)   -- x strictly below the shifted class
//   BelowEq:     x <= S[E,n](y)   -- strictly below or inside
//   AboveStrict: S[E,n](y) <  x
//   AboveEq:     S[E,n](y) <= x
// All four are false when the shifted class does not exist.
enum class SCmpKind { BelowStrict, BelowEq, AboveStrict, AboveEq };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind {
    True,
    False,
    Less,     // v0 < v1
    VarEq,    // v0 = v1
    Pred,     // name(v0)
    Equiv,    // name(v0, v1)
    SRel,     // S[name,shift](v0, v1): v1 lies in the shift-th class from v0's
    SCmp,     // comparison atom; v0 compared element, v1 base
    Not,      // lhs
    And,      // lhs, rhs
    Or,       // lhs, rhs
    Implies,  // lhs, rhs
    Exists,   // name = bound variable, lhs = body
    Forall,
  };

  Kind kind;
  std::string name;  // pred/equiv name or bound variable
  int shift = 0;
  SCmpKind cmp = SCmpKind::BelowStrict;
  std::string v0, v1;
  FormulaPtr lhs, rhs;

  static FormulaPtr truth(bool value);
  static FormulaPtr less(std::string a, std::string b);
  static FormulaPtr var_eq(std::string a, std::string b);
  static FormulaPtr pred(std::string name, std::string v);
  static FormulaPtr equiv(std::string name, std::string a, std::string b);
  static FormulaPtr s_rel(std::string name, int shift, std::string base,
                          std::string member);
  static FormulaPtr s_cmp(SCmpKind cmp, std::string name, int shift,
                          std::string elem, std::string base);
  static FormulaPtr negate(FormulaPtr f);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr exists(std::string var, FormulaPtr body);
  static FormulaPtr forall(std::string var, FormulaPtr body);
  static FormulaPtr conj_all(std::vector<FormulaPtr> fs);  // True when empty
  static FormulaPtr disj_all(std::vector<FormulaPtr> fs);  // False when empty

  bool is_atom() const;
};

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);
std::set<std::string> free_vars(const FormulaPtr& f);
int quantifier_depth(const FormulaPtr& f);
int max_shift_magnitude(const FormulaPtr& f);

// Capture-avoiding substitution of free variables.
FormulaPtr substitute_free(const FormulaPtr& f,
                           const std::vector<std::pair<std::string, std::string>>& renames);

// A variable name not free or bound anywhere in the given formulas.
std::string fresh_var(const std::vector<FormulaPtr>& around,
                      const std::string& stem = "w");

FormulaPtr parse_formula(std::string_view text, const Signature& sig);
std::string render_formula(const FormulaPtr& f);

}  // namespace ccel
