#include "ccel/uconvex.hpp"

#include <set>

namespace ccel {

FormulaPtr UConvexAtom::to_formula(const std::string& x,
                                   const std::string& y) const {
  std::vector<FormulaPtr> parts;
  if (unary) parts.push_back(substitute_free(*unary, {{"x", x}}));
  switch (band) {
    case Band::None:
      break;
    case Band::LeLt:
      parts.push_back(Formula::s_cmp(SCmpKind::AboveEq, e1, -m, x, y));
      parts.push_back(Formula::s_cmp(SCmpKind::BelowStrict, e2, -n, x, y));
      break;
    case Band::LeLe:
      parts.push_back(Formula::s_cmp(SCmpKind::AboveEq, e1, -m, x, y));
      parts.push_back(Formula::s_cmp(SCmpKind::BelowEq, e2, n, x, y));
      break;
    case Band::LtLe:
      parts.push_back(Formula::s_cmp(SCmpKind::AboveStrict, e1, m, x, y));
      parts.push_back(Formula::s_cmp(SCmpKind::BelowEq, e2, n, x, y));
      break;
  }
  return Formula::conj_all(std::move(parts));
}

std::string UConvexAtom::key() const {
  std::string k = unary ? render_formula(*unary) : "<none>";
  k += '|';
  switch (band) {
    case Band::None:
      k += "none";
      break;
    case Band::LeLt:
      k += "lelt";
      break;
    case Band::LeLe:
      k += "lele";
      break;
    case Band::LtLe:
      k += "ltle";
      break;
  }
  if (band != Band::None)
    k += '|' + e1 + '|' + e2 + '|' + std::to_string(m) + '|' + std::to_string(n);
  return k;
}

std::vector<FormulaPtr> default_unary_basis(const Signature& sig,
                                            const std::string& var) {
  std::vector<FormulaPtr> basis;
  for (const auto& p : sig.preds) {
    basis.push_back(Formula::pred(p, var));
    basis.push_back(Formula::negate(Formula::pred(p, var)));
  }
  basis.push_back(Formula::truth(true));
  return basis;
}

std::vector<UConvexAtom> enumerate_uconvex_atoms(
    const Signature& sig, int max_shift,
    const std::vector<FormulaPtr>& unary_basis) {
  std::vector<FormulaPtr> basis =
      unary_basis.empty() ? default_unary_basis(sig) : unary_basis;
  std::vector<std::string> equivs = sig.convex_equiv_names();

  std::vector<UConvexAtom> out;
  std::set<std::string> seen;
  auto push = [&](UConvexAtom a) {
    if (seen.insert(a.key()).second) out.push_back(std::move(a));
  };

  for (const auto& psi : basis) {
    UConvexAtom plain;
    plain.unary = psi;
    push(std::move(plain));
  }
  for (const auto& psi : basis) {
    std::optional<FormulaPtr> upart;
    if (psi->kind != Formula::Kind::True) upart = psi;
    for (auto band :
         {UConvexAtom::Band::LeLt, UConvexAtom::Band::LeLe, UConvexAtom::Band::LtLe}) {
      for (const auto& e1 : equivs)
        for (const auto& e2 : equivs)
          for (int m = 0; m <= max_shift; ++m)
            for (int n = 0; n <= max_shift; ++n) {
              UConvexAtom a;
              a.unary = upart;
              a.band = band;
              a.e1 = e1;
              a.e2 = e2;
              a.m = m;
              a.n = n;
              push(std::move(a));
            }
    }
  }
  return out;
}

}  // namespace ccel
