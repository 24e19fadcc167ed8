#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccel/semantics.hpp"
#include "ccel/structure.hpp"

namespace ccel {

// Raised when a matrix handed to a monotone-only routine is not monotone.
// Carries one violating pair of columns or one non-initial column.
class NotMonotone : public ValidationError {
public:
  NotMonotone(const std::string& what, int col_a, int col_b)
      : ValidationError(what), col_a(col_a), col_b(col_b) {}
  int col_a, col_b;
};

// One-sided comparison against a shifted block of a concrete convex
// partition, anchored at a parameter element.
//   BelowEq:     x <= S[E,N](a)
//   BelowStrict: x <  S[E,N](a)
//   AboveEq:     S[E,N](a) <= x
//   AboveStrict: S[E,N](a) <  x
struct SuccessorForm {
  Partition equiv;
  int shift = 0;
  SCmpKind shape = SCmpKind::BelowEq;

  std::vector<bool> evaluate(int anchor) const;  // membership over the domain
  bool operator==(const SuccessorForm& o) const {
    return equiv == o.equiv && shift == o.shift && shape == o.shape;
  }
};

// Columns of a monotone matrix must be initial segments, nested increasingly
// in the column index.
void require_monotone(const BoolMatrix& m);

// Running-union guard for families whose columns are initial segments but not
// nested: column y becomes the union of all columns at or below y.
BoolMatrix monotonize(const BoolMatrix& m);

// The one-parameter initial-part form: equivalence from row equality, shift
// counted through the blocks meeting the column. Verified by evaluation.
SuccessorForm initial_successor_form(const BoolMatrix& monotone, int anchor);

struct CaseList {
  struct Case {
    std::vector<int> guard;  // parameter values sharing this form
    SuccessorForm form;
  };
  std::vector<Case> cases;
};

// Guards group parameters by identical successor form; their disjunction
// re-evaluates to the matrix.
CaseList monotone_decompose(const BoolMatrix& m);

// Per-guard payload for unary functions: {f(a)} is the single block shift
// blocks away from a's block.
struct FunctionCaseList {
  struct Case {
    std::vector<int> guard;
    Partition equiv;
    int shift = 0;
  };
  std::vector<Case> cases;
};

FunctionCaseList function_decompose(int size, const std::vector<int>& f);

// Two one-sided forms around anchors drawn from the allowed parameter set.
struct BandForm {
  SuccessorForm lower;  // an Above* shape
  int lower_anchor = 0;
  SuccessorForm upper;  // a Below* shape
  int upper_anchor = 0;

  std::vector<bool> evaluate() const;
  std::string pretty(const FiniteCcelStructure& s) const;
};

// Canonical band describing a convex set: smallest total shift first, then
// both-weak shapes before strict ones, then coarser partitions. Partitions
// are drawn from the structure's convex equivalences plus eq and full.
// Throws ValidationError when no band exists within max_shift.
BandForm convex_normal_form(const FiniteCcelStructure& s,
                            const std::vector<int>& convex_set,
                            const std::vector<int>& params, int max_shift);

// Boolean-combination tree over interval and block leaves.
struct BcExpression {
  enum class Kind {
    Empty,
    IntervalAbove,  // (anchor, +inf)
    IntervalBelow,  // (-inf, anchor)
    UnarySet,       // named predicate
    Block,          // block of a constructed partition
    Union,
    Intersect,
    Complement,
  };
  Kind kind = Kind::Empty;
  std::string pred;       // UnarySet
  int partition_id = -1;  // Block: index into OneParamReport::partitions
  int block_index = -1;
  std::vector<BcExpression> children;

  static BcExpression empty() { return {}; }
  static BcExpression interval_above();
  static BcExpression interval_below();
  static BcExpression block(int partition_id, int block_index);
  static BcExpression unite(std::vector<BcExpression> parts);
  static BcExpression intersect(std::vector<BcExpression> parts);
  static BcExpression complement(BcExpression part);
};

struct ConstructedPartition {
  std::string label;  // provenance of the construction step
  Partition partition;
  bool convex = false;
};

struct OneParamReport {
  int anchor = 0;
  BcExpression expr;
  std::vector<ConstructedPartition> partitions;
  // Peel diagnostics: one entry per peeled segment, top down; true when the
  // segment was handled as an end part of the anchor's block.
  struct Peel {
    std::vector<int> segment;
    bool end_part_case = false;
    int upper_partition_id = -1;  // the block-listing side of the band
  };
  std::vector<Peel> peels_above, peels_below;
};

std::vector<bool> evaluate_bc(const BcExpression& e,
                              const FiniteCcelStructure& s,
                              const std::vector<ConstructedPartition>& parts,
                              int anchor);

std::string render_bc(const BcExpression& e,
                      const std::vector<ConstructedPartition>& parts);

// Decomposition of one column of an arbitrary boolean matrix into a Boolean
// combination of the two anchor intervals and blocks of constructed
// partitions. Verified by evaluation; verification failure is a bug and
// throws VerifyError.
OneParamReport one_param_decompose(const FiniteCcelStructure& s,
                                   const BoolMatrix& m, int anchor);

struct SplitResult {
  Partition coarsening;
  std::vector<std::vector<int>> colors;
};

// Separates the blocks of r inside each block of a convex coarsening with as
// few colors as the largest block requires. The coarsening defaults to the
// convex closure of r.
SplitResult almost_convex_split(const Partition& r,
                                const std::optional<Partition>& coarsening =
                                    std::nullopt);

}  // namespace ccel
