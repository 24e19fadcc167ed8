#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccel/formula.hpp"

namespace ccel {

// A unary condition on x optionally conjoined with a band between two shifted
// class boundaries around y. Shifts m, n are non-negative magnitudes; the
// band shape fixes their signs.
struct UConvexAtom {
  enum class Band {
    None,  // purely unary
    LeLt,  // S[-m,E1](y) <= x <  S[-n,E2](y)
    LeLe,  // S[-m,E1](y) <= x <= S[+n,E2](y)
    LtLe,  // S[+m,E1](y) <  x <= S[+n,E2](y)
  };

  std::optional<FormulaPtr> unary;  // psi(x); empty means no unary part
  Band band = Band::None;
  std::string e1, e2;
  int m = 0, n = 0;

  // The atom as a formula in the two given variables.
  FormulaPtr to_formula(const std::string& x, const std::string& y) const;
  std::string key() const;  // structural identity for deduplication
};

// Complete, duplicate-free list of u-convex atoms over the signature's convex
// equivalences (eq and full always included) with shift magnitudes bounded by
// max_shift. The default unary basis is every named predicate, its negation,
// and the trivially true condition.
std::vector<UConvexAtom> enumerate_uconvex_atoms(
    const Signature& sig, int max_shift,
    const std::vector<FormulaPtr>& unary_basis = {});

std::vector<FormulaPtr> default_unary_basis(const Signature& sig,
                                            const std::string& var = "x");

}  // namespace ccel
