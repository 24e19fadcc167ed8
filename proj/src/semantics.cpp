#include "ccel/semantics.hpp"

#include <algorithm>
#include <set>

namespace ccel {

namespace {

int lookup(const Assignment& a, const std::string& v) {
  auto it = a.find(v);
  if (it == a.end()) throw EvalError("unbound free variable '" + v + "'");
  return it->second;
}

bool eval_rec(const FiniteCcelStructure& s, const Formula& f, Assignment& env) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Less:
      return lookup(env, f.v0) < lookup(env, f.v1);
    case K::VarEq:
      return lookup(env, f.v0) == lookup(env, f.v1);
    case K::Pred: {
      const auto& members = s.pred(f.name);
      return members[lookup(env, f.v0)];
    }
    case K::Equiv:
      return s.equiv(f.name).same_block(lookup(env, f.v0), lookup(env, f.v1));
    case K::SRel: {
      auto cls = class_successor(s, f.name, lookup(env, f.v0), f.shift);
      if (!cls) return false;
      const Partition& p = s.equiv(f.name);
      return p.same_block(cls->min_element, lookup(env, f.v1));
    }
    case K::SCmp: {
      int x = lookup(env, f.v0);
      auto cls = class_successor(s, f.name, lookup(env, f.v1), f.shift);
      if (!cls) return false;
      const Partition& p = s.equiv(f.name);
      const auto& block = p.block(p.block_index_of(cls->min_element));
      switch (f.cmp) {
        case SCmpKind::BelowStrict:
          return x < block.front();
        case SCmpKind::BelowEq:
          return x <= block.back();
        case SCmpKind::AboveStrict:
          return x > block.back();
        case SCmpKind::AboveEq:
          return x >= block.front();
      }
      return false;
    }
    case K::Not:
      return !eval_rec(s, *f.lhs, env);
    case K::And:
      return eval_rec(s, *f.lhs, env) && eval_rec(s, *f.rhs, env);
    case K::Or:
      return eval_rec(s, *f.lhs, env) || eval_rec(s, *f.rhs, env);
    case K::Implies:
      return !eval_rec(s, *f.lhs, env) || eval_rec(s, *f.rhs, env);
    case K::Exists:
    case K::Forall: {
      auto saved = env.find(f.name);
      int old = saved == env.end() ? -1 : saved->second;
      bool had = saved != env.end();
      bool exists = f.kind == K::Exists;
      bool result = !exists;
      for (int v = 0; v < s.size(); ++v) {
        env[f.name] = v;
        bool sub = eval_rec(s, *f.lhs, env);
        if (exists && sub) {
          result = true;
          break;
        }
        if (!exists && !sub) {
          result = false;
          break;
        }
      }
      if (had)
        env[f.name] = old;
      else
        env.erase(f.name);
      return result;
    }
  }
  return false;
}

}  // namespace

bool evaluate(const FiniteCcelStructure& s, const FormulaPtr& f,
              const Assignment& assignment) {
  for (const auto& v : free_vars(f))
    if (!assignment.count(v))
      throw EvalError("unbound free variable '" + v + "'");
  Assignment env = assignment;
  return eval_rec(s, *f, env);
}

std::vector<int> definable_set(const FiniteCcelStructure& s, const FormulaPtr& f,
                               const std::string& object_var,
                               const Assignment& params) {
  std::vector<int> out;
  Assignment env = params;
  for (int a = 0; a < s.size(); ++a) {
    env[object_var] = a;
    if (evaluate(s, f, env)) out.push_back(a);
  }
  return out;
}

namespace {

// Hands out variable names unused anywhere in the original formula.
class FreshNamer {
public:
  explicit FreshNamer(const FormulaPtr& context) {
    for (const auto& v : free_vars(context)) used_.insert(v);
    collect_bound(context);
  }
  std::string next(const std::string& stem) {
    for (;;) {
      std::string cand = stem + std::to_string(counter_++);
      if (used_.insert(cand).second) return cand;
    }
  }

private:
  void collect_bound(const FormulaPtr& f) {
    if (!f) return;
    if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall)
      used_.insert(f->name);
    collect_bound(f->lhs);
    collect_bound(f->rhs);
  }
  std::set<std::string> used_;
  int counter_ = 0;
};

// y lies in the class immediately after x's class: strictly above, in a
// different class, with no element between them outside both classes.
FormulaPtr s_step(const std::string& equiv, const std::string& x,
                  const std::string& y, const std::string& w) {
  FormulaPtr sep = Formula::exists(
      w, Formula::conj_all({Formula::less(x, w), Formula::less(w, y),
                            Formula::negate(Formula::equiv(equiv, w, x)),
                            Formula::negate(Formula::equiv(equiv, w, y))}));
  return Formula::conj_all({Formula::less(x, y),
                            Formula::negate(Formula::equiv(equiv, x, y)),
                            Formula::negate(sep)});
}

// S[equiv,shift](base, member) as a first-order formula over {<, =, equiv}.
FormulaPtr expand_s_rel(const std::string& equiv, int shift,
                        const std::string& base, const std::string& member,
                        FreshNamer& names) {
  if (shift == 0) return Formula::equiv(equiv, base, member);
  if (shift < 0) return expand_s_rel(equiv, -shift, member, base, names);
  std::string cur = base;
  std::vector<FormulaPtr> chain;
  std::vector<std::string> binders;
  for (int i = 1; i < shift; ++i) {
    std::string nxt = names.next("s");
    chain.push_back(s_step(equiv, cur, nxt, names.next("s")));
    binders.push_back(nxt);
    cur = nxt;
  }
  chain.push_back(s_step(equiv, cur, member, names.next("s")));
  FormulaPtr body = Formula::conj_all(chain);
  for (auto it = binders.rbegin(); it != binders.rend(); ++it)
    body = Formula::exists(*it, body);
  return body;
}

}  // namespace

FormulaPtr expand_s_atoms(const FormulaPtr& f) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::SRel: {
      FreshNamer names(f);
      return expand_s_rel(f->name, f->shift, f->v0, f->v1, names);
    }
    case K::SCmp: {
      // x < S[E,n](y) := exists z S(y,z) and forall z (S(y,z) -> x < z);
      // x <= adds membership; the above-forms mirror.
      FreshNamer names(f);
      std::string z = names.next("z");
      FormulaPtr member_z = expand_s_rel(f->name, f->shift, f->v1, z, names);
      FormulaPtr member_x = expand_s_rel(f->name, f->shift, f->v1, f->v0, names);
      FormulaPtr nonempty = Formula::exists(z, member_z);
      auto bounded = [&](bool below) {
        FormulaPtr cmp = below ? Formula::less(f->v0, z) : Formula::less(z, f->v0);
        return Formula::conj(nonempty,
                             Formula::forall(z, Formula::implies(member_z, cmp)));
      };
      switch (f->cmp) {
        case SCmpKind::BelowStrict:
          return bounded(true);
        case SCmpKind::BelowEq:
          return Formula::disj(bounded(true), member_x);
        case SCmpKind::AboveStrict:
          return bounded(false);
        case SCmpKind::AboveEq:
          return Formula::disj(bounded(false), member_x);
      }
      return f;
    }
    case K::Not:
      return Formula::negate(expand_s_atoms(f->lhs));
    case K::And:
      return Formula::conj(expand_s_atoms(f->lhs), expand_s_atoms(f->rhs));
    case K::Or:
      return Formula::disj(expand_s_atoms(f->lhs), expand_s_atoms(f->rhs));
    case K::Implies:
      return Formula::implies(expand_s_atoms(f->lhs), expand_s_atoms(f->rhs));
    case K::Exists:
      return Formula::exists(f->name, expand_s_atoms(f->lhs));
    case K::Forall:
      return Formula::forall(f->name, expand_s_atoms(f->lhs));
    default:
      return f;
  }
}

namespace {

// Enumerates tuples from `pool` of length `arity` in lexicographic order.
bool next_tuple(std::vector<int>& idx, int pool_size) {
  for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
    if (++idx[i] < pool_size) return true;
    idx[i] = 0;
  }
  return false;
}

}  // namespace

PhiType phi_type(const FiniteCcelStructure& s, const FormulaPtr& f,
                 const std::vector<std::string>& object_vars,
                 const std::vector<int>& object_tuple,
                 const std::vector<std::string>& param_vars,
                 const std::vector<int>& param_set) {
  if (object_vars.size() != object_tuple.size())
    throw EvalError("object tuple arity mismatch");
  PhiType t;
  t.param_set = param_set;
  std::sort(t.param_set.begin(), t.param_set.end());
  t.param_arity = static_cast<int>(param_vars.size());
  Assignment env;
  for (std::size_t i = 0; i < object_vars.size(); ++i)
    env[object_vars[i]] = object_tuple[i];
  int c = static_cast<int>(t.param_set.size());
  if (t.param_arity == 0) {
    t.pattern.push_back(evaluate(s, f, env));
    return t;
  }
  if (c == 0) return t;  // no parameter tuples: empty pattern
  std::vector<int> idx(t.param_arity, 0);
  do {
    for (int i = 0; i < t.param_arity; ++i)
      env[param_vars[i]] = t.param_set[idx[i]];
    t.pattern.push_back(evaluate(s, f, env));
  } while (next_tuple(idx, c));
  return t;
}

CutReport count_types_over_cut(const FiniteCcelStructure& s, const FormulaPtr& f,
                               const std::vector<std::string>& object_vars,
                               const std::vector<std::string>& param_vars,
                               int cut_size) {
  if (cut_size < 0 || cut_size > s.size())
    throw EvalError("cut size out of range");
  CutReport report;
  report.cut_size = cut_size;
  std::vector<int> cut(cut_size);
  for (int i = 0; i < cut_size; ++i) cut[i] = i;
  std::vector<int> complement;
  for (int i = cut_size; i < s.size(); ++i) complement.push_back(i);
  if (complement.empty() || object_vars.empty()) return report;

  std::vector<PhiType> seen;
  std::vector<int> idx(object_vars.size(), 0);
  do {
    std::vector<int> tuple;
    tuple.reserve(idx.size());
    for (int i : idx) tuple.push_back(complement[i]);
    PhiType t = phi_type(s, f, object_vars, tuple, param_vars, cut);
    bool found = false;
    for (const auto& prev : seen)
      if (prev == t) {
        found = true;
        break;
      }
    if (!found) {
      seen.push_back(t);
      report.representatives.push_back(tuple);
    }
  } while (next_tuple(idx, static_cast<int>(complement.size())));
  report.count = static_cast<int>(seen.size());
  return report;
}

BoolMatrix matrix_of(const FiniteCcelStructure& s, const FormulaPtr& f,
                     const std::string& xvar, const std::string& yvar) {
  BoolMatrix m(s.size());
  Assignment env;
  for (int x = 0; x < s.size(); ++x) {
    env[xvar] = x;
    for (int y = 0; y < s.size(); ++y) {
      env[yvar] = y;
      m.set(x, y, evaluate(s, f, env));
    }
  }
  return m;
}

int n_phi(const BoolMatrix& m, int a, int b) {
  if (b < 0 || b >= m.n || a < 0 || a >= m.n) throw EvalError("n_phi out of range");
  std::set<std::vector<bool>> patterns;
  for (int x = b; x < m.n; ++x) {
    std::vector<bool> row;
    row.reserve(a + 1);
    for (int c = 0; c <= a; ++c) row.push_back(m.at(x, c));
    patterns.insert(std::move(row));
  }
  return static_cast<int>(patterns.size());
}

}  // namespace ccel
