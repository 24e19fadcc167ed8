#pragma once

#include <map>
#include <string>
#include <vector>

#include "ccel/formula.hpp"
#include "ccel/structure.hpp"

namespace ccel {

using Assignment = std::map<std::string, int>;

// Tarski truth over the finite domain; quantifiers range over 0..size-1.
// Successor atoms follow the empty-class convention: every comparison
// against a nonexistent shifted class is false.
bool evaluate(const FiniteCcelStructure& s, const FormulaPtr& f,
              const Assignment& assignment);

// {a : evaluate(f, object_var := a, params)}
std::vector<int> definable_set(const FiniteCcelStructure& s, const FormulaPtr& f,
                               const std::string& object_var,
                               const Assignment& params);

// Rewrites a successor atom (SRel or SCmp) into its definition over
// {<, =, equivalence} with fresh bound variables; other nodes are rebuilt
// with rewritten children.
FormulaPtr expand_s_atoms(const FormulaPtr& f);

// Truth pattern of a tuple against all parameter tuples drawn from a set.
struct PhiType {
  std::vector<int> param_set;  // C, ascending
  int param_arity = 0;
  std::vector<bool> pattern;   // indexed by param tuples in lexicographic order

  bool operator==(const PhiType& o) const {
    return param_set == o.param_set && param_arity == o.param_arity &&
           pattern == o.pattern;
  }
};

PhiType phi_type(const FiniteCcelStructure& s, const FormulaPtr& f,
                 const std::vector<std::string>& object_vars,
                 const std::vector<int>& object_tuple,
                 const std::vector<std::string>& param_vars,
                 const std::vector<int>& param_set);

struct CutReport {
  int cut_size = 0;
  int count = 0;
  // One object tuple per distinct pattern, in first-seen (lexicographic) order.
  std::vector<std::vector<int>> representatives;
};

// Distinct phi_type values over C = {0..cut_size-1} among object tuples drawn
// from the complement, enumerated lexicographically.
CutReport count_types_over_cut(const FiniteCcelStructure& s, const FormulaPtr& f,
                               const std::vector<std::string>& object_vars,
                               const std::vector<std::string>& param_vars,
                               int cut_size);

// Boolean matrix view of a binary relation on the domain.
struct BoolMatrix {
  int n = 0;
  std::vector<bool> cells;  // row-major: at(x, y) = cells[x * n + y]

  BoolMatrix() = default;
  explicit BoolMatrix(int size) : n(size), cells(size * size, false) {}
  bool at(int x, int y) const { return cells[x * n + y]; }
  void set(int x, int y, bool v) { cells[x * n + y] = v; }
  std::vector<int> column(int y) const {
    std::vector<int> out;
    for (int x = 0; x < n; ++x)
      if (at(x, y)) out.push_back(x);
    return out;
  }
};

BoolMatrix matrix_of(const FiniteCcelStructure& s, const FormulaPtr& f,
                     const std::string& xvar, const std::string& yvar);

// Number of distinct object-point patterns over parameters {0..a} among
// points in [b, n); the cut-restricted type count used by the decomposition
// routines.
int n_phi(const BoolMatrix& m, int a, int b);

}  // namespace ccel
