#include "ccel/theories.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace ccel {

TheoryFamily TheoryFamily::parse(const std::string& d) {
  TheoryFamily fam;
  auto colon = d.find(':');
  std::string head = d.substr(0, colon);
  std::string tail = colon == std::string::npos ? "" : d.substr(colon + 1);
  auto num = [&](int lo) {
    int v = 0;
    try {
      v = std::stoi(tail);
    } catch (...) {
      throw ValidationError("bad family parameter '" + tail + "'");
    }
    if (v < lo)
      throw ValidationError("family parameter must be at least " +
                            std::to_string(lo));
    return v;
  };
  if (head == "colored-dense") {
    fam.kind = FamilyKind::ColoredDense;
    fam.param = num(1);
  } else if (head == "t") {
    fam.kind = FamilyKind::DenseClasses;
    fam.param = num(2);
  } else if (head == "lex-dense") {
    fam.kind = FamilyKind::LexDense;
  } else if (head == "lex-zeta") {
    fam.kind = FamilyKind::LexOverZeta;
  } else {
    throw ValidationError("unknown theory family '" + d + "'");
  }
  return fam;
}

std::string TheoryFamily::descriptor() const {
  switch (kind) {
    case FamilyKind::ColoredDense:
      return "colored-dense:" + std::to_string(param);
    case FamilyKind::DenseClasses:
      return "t:" + std::to_string(param);
    case FamilyKind::LexDense:
      return "lex-dense";
    case FamilyKind::LexOverZeta:
      return "lex-zeta";
  }
  return "?";
}

Signature TheoryFamily::signature() const {
  Signature sig;
  if (kind == FamilyKind::ColoredDense) {
    for (int k = 0; k < param; ++k) sig.preds.push_back("P" + std::to_string(k));
  } else {
    sig.equivs.push_back({"E0", equiv_convex()});
  }
  return sig;
}

// --- configurations ----------------------------------------------------------

std::vector<int> SymConfig::group_of_cell() const {
  std::vector<int> out(cells, 0);
  int g = 0;
  for (int c = 1; c < cells; ++c) {
    if (class_of_cell[c] != class_of_cell[c - 1]) ++g;
    out[c] = g;
  }
  return out;
}

bool SymConfig::truncated() const {
  for (int g : gaps)
    if (g > bound) return true;
  return false;
}

std::string SymConfig::key() const {
  std::string k = std::to_string(cells) + ";";
  std::map<int, int> relabel;
  for (int c : class_of_cell) {
    auto [it, fresh] = relabel.emplace(c, static_cast<int>(relabel.size()));
    k += std::to_string(it->second) + ",";
  }
  k += ";";
  for (int c : color_of_cell) k += std::to_string(c) + ",";
  k += ";";
  for (int g : gaps) k += std::to_string(std::min(g, bound + 1)) + ",";
  return k;
}

std::string AtomicType::key() const {
  std::string k;
  for (std::size_t i = 0; i < vars.size(); ++i)
    k += vars[i] + "=" + std::to_string(cell_of[i]) + ",";
  return k + "|" + config.key();
}

namespace {

// Signed quotient distance between two cells' groups; `beyond` marks a path
// through a truncated gap, in which case only |distance| > bound is known.
struct Dist {
  int value = 0;
  bool beyond = false;
};

int group_of(const SymConfig& cfg, int cell) {
  int g = 0;
  for (int c = 1; c <= cell; ++c)
    if (cfg.class_of_cell[c] != cfg.class_of_cell[c - 1]) ++g;
  return g;
}

Dist group_distance(const SymConfig& cfg, int cell_from, int cell_to) {
  int a = group_of(cfg, cell_from), b = group_of(cfg, cell_to);
  Dist d;
  int lo = std::min(a, b), hi = std::max(a, b);
  for (int g = lo; g < hi; ++g) {
    if (cfg.gaps[g] > cfg.bound) d.beyond = true;
    d.value += cfg.gaps[g];
  }
  if (b < a) d.value = -d.value;
  return d;
}

int var_cell(const AtomicType& t, const std::string& v) {
  for (std::size_t i = 0; i < t.vars.size(); ++i)
    if (t.vars[i] == v) return t.cell_of[i];
  throw EvalError("unbound free variable '" + v + "'");
}

// Truth of one atom against a configuration; `cell` resolves variables.
bool eval_atom_on_config(const TheoryFamily& fam, const SymConfig& cfg,
                         const Formula& atom,
                         const std::function<int(const std::string&)>& cell) {
  using K = Formula::Kind;
  switch (atom.kind) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Less:
      return cell(atom.v0) < cell(atom.v1);
    case K::VarEq:
      return cell(atom.v0) == cell(atom.v1);
    case K::Pred: {
      if (fam.kind != FamilyKind::ColoredDense)
        throw EvalError("unknown predicate '" + atom.name + "'");
      int k = -1;
      if (atom.name.size() > 1 && atom.name[0] == 'P')
        k = std::atoi(atom.name.c_str() + 1);
      if (k < 0 || k >= fam.param)
        throw EvalError("unknown predicate '" + atom.name + "'");
      return cfg.color_of_cell[cell(atom.v0)] == k;
    }
    case K::Equiv: {
      int a = cell(atom.v0), b = cell(atom.v1);
      if (atom.name == "eq") return a == b;
      if (atom.name == "full") return true;
      if (!fam.has_equiv() || atom.name != "E0")
        throw EvalError("unknown equivalence '" + atom.name + "'");
      return cfg.class_of_cell[a] == cfg.class_of_cell[b];
    }
    case K::SRel:
    case K::SCmp: {
      const std::string& e = atom.name;
      bool named = e == "E0";
      if (!named && e != "eq" && e != "full")
        throw EvalError("unknown equivalence '" + e + "'");
      if (named && !fam.equiv_convex())
        throw ValidationError("successor atom over non-convex equivalence");
      int shift = atom.shift;
      if (atom.kind == K::SRel) {
        int base = cell(atom.v0), member = cell(atom.v1);
        if (e == "eq") return shift == 0 && base == member;
        if (e == "full") return shift == 0;
        if (fam.kind == FamilyKind::LexDense)
          return shift == 0 &&
                 cfg.class_of_cell[base] == cfg.class_of_cell[member];
        Dist d = group_distance(cfg, base, member);
        if (d.beyond) return false;  // the true distance exceeds the bound
        return d.value == shift;
      }
      // Comparison atoms: v0 is the compared element, v1 the base.
      int x = cell(atom.v0), base = cell(atom.v1);
      if (e != "E0" || fam.kind != FamilyKind::LexOverZeta) {
        // Dense at the relevant level: nonzero shifts name no class.
        if (shift != 0) return false;
        if (e == "full")
          // the order has no endpoints, so only the membership disjunct holds
          return atom.cmp == SCmpKind::BelowEq || atom.cmp == SCmpKind::AboveEq;
        bool below, inside;
        if (e == "eq") {
          below = x < base;
          inside = x == base;
        } else {
          inside = cfg.class_of_cell[x] == cfg.class_of_cell[base];
          below = !inside && x < base;
        }
        switch (atom.cmp) {
          case SCmpKind::BelowStrict:
            return below;
          case SCmpKind::BelowEq:
            return below || inside;
          case SCmpKind::AboveStrict:
            return !below && !inside;
          case SCmpKind::AboveEq:
            return !below;
        }
        return false;
      }
      // LexOverZeta with the named equivalence: every shifted class exists.
      Dist d = group_distance(cfg, base, x);  // idx(x) - idx(base)
      if (d.beyond) {
        bool positive = d.value > 0;
        switch (atom.cmp) {
          case SCmpKind::BelowStrict:
          case SCmpKind::BelowEq:
            return !positive;
          case SCmpKind::AboveStrict:
          case SCmpKind::AboveEq:
            return positive;
        }
        return false;
      }
      switch (atom.cmp) {
        case SCmpKind::BelowStrict:
          return d.value < shift;
        case SCmpKind::BelowEq:
          return d.value <= shift;
        case SCmpKind::AboveStrict:
          return d.value > shift;
        case SCmpKind::AboveEq:
          return d.value >= shift;
      }
      return false;
    }
    default:
      throw EvalError("not an atom");
  }
}

int family_default_bound(const TheoryFamily& fam) {
  return fam.kind == FamilyKind::LexOverZeta ? 4 : 1;
}

}  // namespace

int default_distance_bound(const TheoryFamily& fam, const FormulaPtr& f) {
  if (fam.kind != FamilyKind::LexOverZeta) return family_default_bound(fam);
  int frees = static_cast<int>(free_vars(f).size());
  return 2 * (quantifier_depth(f) + frees) + max_shift_magnitude(f);
}

// --- atomic type enumeration ---------------------------------------------------

namespace {

void weak_orders(int k, std::vector<std::vector<int>>& out) {
  // cell assignments built by placing variables one at a time
  std::vector<int> cur;
  std::function<void(int, int)> place = [&](int i, int cells) {
    if (i == k) {
      out.push_back(cur);
      return;
    }
    for (int c = 0; c < cells; ++c) {  // join an existing cell
      cur.push_back(c);
      place(i + 1, cells);
      cur.pop_back();
    }
    for (int slot = 0; slot <= cells; ++slot) {  // open a new cell
      for (int& c : cur)
        if (c >= slot) ++c;
      cur.push_back(slot);
      place(i + 1, cells + 1);
      cur.pop_back();
      for (int& c : cur)
        if (c >= slot) --c;
    }
  };
  place(0, 0);
}

void class_patterns(FamilyKind kind, int param, int cells,
                    std::vector<std::vector<int>>& out) {
  if (cells == 0) {
    out.push_back({});
    return;
  }
  if (kind == FamilyKind::DenseClasses) {
    // restricted growth strings with at most `param` labels
    std::vector<int> cur(cells, 0);
    std::function<void(int, int)> rec = [&](int i, int used) {
      if (i == cells) {
        out.push_back(cur);
        return;
      }
      for (int label = 0; label < std::min(used + 1, param); ++label) {
        cur[i] = label;
        rec(i + 1, std::max(used, label + 1));
      }
    };
    rec(0, 0);
  } else {
    // consecutive groupings: one boundary bit per adjacent pair
    for (int mask = 0; mask < (1 << (cells - 1)); ++mask) {
      std::vector<int> labels(cells, 0);
      int g = 0;
      for (int c = 1; c < cells; ++c) {
        if (mask & (1 << (c - 1))) ++g;
        labels[c] = g;
      }
      out.push_back(labels);
    }
  }
}

}  // namespace

std::vector<AtomicType> enumerate_types(const TheoryFamily& fam,
                                        const std::vector<std::string>& vars,
                                        int distance_bound) {
  int bound = distance_bound > 0 ? distance_bound : family_default_bound(fam);
  std::vector<std::string> names = vars;
  std::sort(names.begin(), names.end());
  int k = static_cast<int>(names.size());

  std::vector<std::vector<int>> orders;
  weak_orders(k, orders);
  {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> unique_orders;
    for (auto& o : orders)
      if (seen.insert(o).second) unique_orders.push_back(o);
    orders = std::move(unique_orders);
  }

  std::vector<AtomicType> out;
  for (const auto& cell_of : orders) {
    int cells =
        cell_of.empty()
            ? 0
            : *std::max_element(cell_of.begin(), cell_of.end()) + 1;
    AtomicType base;
    base.vars = names;
    base.cell_of = cell_of;
    base.config.cells = cells;
    base.config.bound = bound;

    if (fam.kind == FamilyKind::ColoredDense) {
      std::vector<int> colors(cells, 0);
      std::function<void(int)> rec = [&](int i) {
        if (i == cells) {
          AtomicType t = base;
          t.config.color_of_cell = colors;
          out.push_back(std::move(t));
          return;
        }
        for (int c = 0; c < fam.param; ++c) {
          colors[i] = c;
          rec(i + 1);
        }
      };
      rec(0);
      continue;
    }

    std::vector<std::vector<int>> classes;
    class_patterns(fam.kind, fam.param, cells, classes);
    for (const auto& labels : classes) {
      AtomicType t = base;
      t.config.class_of_cell = labels;
      if (fam.kind != FamilyKind::LexOverZeta) {
        out.push_back(std::move(t));
        continue;
      }
      int groups = labels.empty() ? 0 : labels.back() + 1;
      int boundaries = std::max(0, groups - 1);
      std::vector<int> gaps(boundaries, 1);
      std::function<void(int)> rec = [&](int i) {
        if (i == boundaries) {
          AtomicType g = t;
          g.config.gaps = gaps;
          out.push_back(std::move(g));
          return;
        }
        for (int v = 1; v <= bound + 1; ++v) {
          gaps[i] = v;
          rec(i + 1);
        }
      };
      rec(0);
    }
  }
  return out;
}

// --- rendering and restriction ----------------------------------------------------

FormulaPtr AtomicType::to_formula(const TheoryFamily& fam) const {
  std::vector<FormulaPtr> lits;
  std::vector<std::string> rep(config.cells);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    int c = cell_of[i];
    if (rep[c].empty())
      rep[c] = vars[i];
    else
      lits.push_back(Formula::var_eq(rep[c], vars[i]));
  }
  for (int c = 0; c + 1 < config.cells; ++c)
    lits.push_back(Formula::less(rep[c], rep[c + 1]));
  if (fam.kind == FamilyKind::ColoredDense) {
    for (int c = 0; c < config.cells; ++c)
      lits.push_back(
          Formula::pred("P" + std::to_string(config.color_of_cell[c]), rep[c]));
  } else if (fam.kind == FamilyKind::DenseClasses) {
    for (int c = 0; c < config.cells; ++c)
      for (int d = c + 1; d < config.cells; ++d) {
        FormulaPtr atom = Formula::equiv("E0", rep[c], rep[d]);
        bool same = config.class_of_cell[c] == config.class_of_cell[d];
        lits.push_back(same ? atom : Formula::negate(atom));
      }
  } else if (config.cells > 0) {
    // lex families: adjacent-cell relations pin everything by additivity
    for (int c = 0; c + 1 < config.cells; ++c) {
      bool same = config.class_of_cell[c] == config.class_of_cell[c + 1];
      if (same) {
        lits.push_back(Formula::equiv("E0", rep[c], rep[c + 1]));
        continue;
      }
      if (fam.kind == FamilyKind::LexDense) {
        lits.push_back(
            Formula::negate(Formula::equiv("E0", rep[c], rep[c + 1])));
        continue;
      }
      Dist d = group_distance(config, c, c + 1);
      if (!d.beyond) {
        lits.push_back(Formula::s_rel("E0", d.value, rep[c], rep[c + 1]));
      } else {
        for (int k = 0; k <= config.bound; ++k)
          lits.push_back(
              Formula::negate(Formula::s_rel("E0", k, rep[c], rep[c + 1])));
      }
    }
  }
  return Formula::conj_all(std::move(lits));
}

AtomicType AtomicType::restrict_to(const std::vector<std::string>& keep) const {
  std::set<std::string> keepset(keep.begin(), keep.end());
  AtomicType out;
  out.config.bound = config.bound;
  std::vector<bool> cell_kept(config.cells, false);
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (keepset.count(vars[i])) cell_kept[cell_of[i]] = true;
  std::vector<int> new_cell(config.cells, -1);
  int next = 0;
  for (int c = 0; c < config.cells; ++c)
    if (cell_kept[c]) new_cell[c] = next++;
  out.config.cells = next;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (keepset.count(vars[i])) {
      out.vars.push_back(vars[i]);
      out.cell_of.push_back(new_cell[cell_of[i]]);
    }
  if (!config.color_of_cell.empty())
    for (int c = 0; c < config.cells; ++c)
      if (cell_kept[c])
        out.config.color_of_cell.push_back(config.color_of_cell[c]);
  std::vector<int> kept_cells;
  for (int c = 0; c < config.cells; ++c)
    if (cell_kept[c]) kept_cells.push_back(c);
  if (!config.class_of_cell.empty()) {
    std::vector<int> labels;
    for (int c : kept_cells) labels.push_back(config.class_of_cell[c]);
    std::map<int, int> relabel;
    for (int& l : labels) {
      auto [it, fresh] = relabel.emplace(l, static_cast<int>(relabel.size()));
      l = it->second;
    }
    out.config.class_of_cell = labels;
  }
  if (!config.gaps.empty()) {
    // sum gaps across dropped boundaries between surviving groups
    auto groups = config.group_of_cell();
    std::vector<int> new_gaps;
    for (std::size_t i = 0; i + 1 < kept_cells.size(); ++i) {
      int ga = groups[kept_cells[i]], gb = groups[kept_cells[i + 1]];
      if (ga == gb) continue;
      if (config.class_of_cell[kept_cells[i]] ==
          config.class_of_cell[kept_cells[i + 1]])
        continue;
      int total = 0;
      bool beyond = false;
      for (int g = ga; g < gb; ++g) {
        total += config.gaps[g];
        if (config.gaps[g] > config.bound) beyond = true;
      }
      if (beyond || total > config.bound) total = config.bound + 1;
      new_gaps.push_back(total);
    }
    out.config.gaps = std::move(new_gaps);
  }
  return out;
}

// --- witness evaluation ----------------------------------------------------------

namespace {

// Bindings as a stack of (name, cell); lookups scan backwards so shadowing
// binders win.
using Env = std::vector<std::pair<std::string, int>>;

int env_cell(const Env& env, const std::string& v) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == v) return it->second;
  throw EvalError("unbound free variable '" + v + "'");
}

// Visits the canonical one-point extensions of a configuration: join an
// existing cell, or insert a fresh cell into a slot with every class, color
// or quotient-distance option the family admits. The visitor returns true to
// stop early.
void for_each_extension(const TheoryFamily& fam, const SymConfig& cfg,
                        const std::function<bool(const SymConfig&, int)>& visit) {
  for (int c = 0; c < cfg.cells; ++c)
    if (visit(cfg, c)) return;

  for (int slot = 0; slot <= cfg.cells; ++slot) {
    if (fam.kind == FamilyKind::ColoredDense) {
      for (int color = 0; color < fam.param; ++color) {
        SymConfig next = cfg;
        next.cells++;
        next.color_of_cell.insert(next.color_of_cell.begin() + slot, color);
        if (visit(next, slot)) return;
      }
      continue;
    }
    if (fam.kind == FamilyKind::DenseClasses) {
      int used = 0;
      for (int l : cfg.class_of_cell) used = std::max(used, l + 1);
      int options = std::min(used + 1, fam.param);
      for (int label = 0; label < options; ++label) {
        SymConfig next = cfg;
        next.cells++;
        next.class_of_cell.insert(next.class_of_cell.begin() + slot, label);
        if (visit(next, slot)) return;
      }
      continue;
    }
    // lex families
    int left = slot - 1, right = slot;
    bool has_left = left >= 0, has_right = right < cfg.cells;
    int lclass = has_left ? cfg.class_of_cell[left] : -1;
    int rclass = has_right ? cfg.class_of_cell[right] : -1;
    int fresh = 0;
    for (int l : cfg.class_of_cell) fresh = std::max(fresh, l + 1);

    auto try_insert = [&](int label, std::vector<int> gaps) {
      SymConfig next = cfg;
      next.cells++;
      next.class_of_cell.insert(next.class_of_cell.begin() + slot, label);
      next.gaps = std::move(gaps);
      return visit(next, slot);
    };

    if (has_left && has_right && lclass == rclass) {
      if (try_insert(lclass, cfg.gaps)) return;  // interior: class forced
      continue;
    }
    if (has_left && try_insert(lclass, cfg.gaps)) return;
    if (has_right && try_insert(rclass, cfg.gaps)) return;
    if (fam.kind == FamilyKind::LexDense) {
      if (try_insert(fresh, {})) return;
      continue;
    }
    // LexOverZeta fresh class: extend an end or split a boundary gap.
    int big = cfg.bound + 1;
    if (!has_left || !has_right) {
      if (!has_left && !has_right) {
        if (try_insert(fresh, {})) return;  // very first point
        continue;
      }
      for (int g = 1; g <= big; ++g) {
        std::vector<int> gaps = cfg.gaps;
        if (!has_left)
          gaps.insert(gaps.begin(), g);
        else
          gaps.push_back(g);
        if (try_insert(fresh, std::move(gaps))) return;
      }
      continue;
    }
    auto groups = cfg.group_of_cell();
    int boundary = groups[right] - 1;
    int g0 = cfg.gaps[boundary];
    for (int g1 = 1; g1 <= big; ++g1)
      for (int g2 = 1; g2 <= big; ++g2) {
        bool ok;
        if (g0 <= cfg.bound)
          ok = g1 <= cfg.bound && g2 <= cfg.bound && g1 + g2 == g0;
        else
          ok = g1 == big || g2 == big || g1 + g2 >= cfg.bound + 1;
        if (!ok) continue;
        std::vector<int> gaps = cfg.gaps;
        gaps[boundary] = g1;
        gaps.insert(gaps.begin() + boundary + 1, g2);
        if (try_insert(fresh, std::move(gaps))) return;
      }
  }
}

bool witness_rec(const TheoryFamily& fam, const Formula& f, const SymConfig& cfg,
                 Env& env) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Not:
      return !witness_rec(fam, *f.lhs, cfg, env);
    case K::And:
      return witness_rec(fam, *f.lhs, cfg, env) &&
             witness_rec(fam, *f.rhs, cfg, env);
    case K::Or:
      return witness_rec(fam, *f.lhs, cfg, env) ||
             witness_rec(fam, *f.rhs, cfg, env);
    case K::Implies:
      return !witness_rec(fam, *f.lhs, cfg, env) ||
             witness_rec(fam, *f.rhs, cfg, env);
    case K::Exists:
    case K::Forall: {
      bool exists = f.kind == K::Exists;
      bool result = !exists;
      for_each_extension(fam, cfg, [&](const SymConfig& next, int slot) {
        // shift bindings at or above a freshly inserted cell
        bool fresh_cell = next.cells != cfg.cells;
        if (fresh_cell)
          for (auto& [v, c] : env)
            if (c >= slot) ++c;
        env.emplace_back(f.name, slot);
        bool sub = witness_rec(fam, *f.lhs, next, env);
        env.pop_back();
        if (fresh_cell)
          for (auto& [v, c] : env)
            if (c > slot) --c;
        if (exists && sub) {
          result = true;
          return true;
        }
        if (!exists && !sub) {
          result = false;
          return true;
        }
        return false;
      });
      return result;
    }
    default:
      return eval_atom_on_config(
          fam, cfg, f, [&](const std::string& v) { return env_cell(env, v); });
  }
}

}  // namespace

bool witness_evaluate(const TheoryFamily& fam, const FormulaPtr& f,
                      const AtomicType& context) {
  Env env;
  for (std::size_t i = 0; i < context.vars.size(); ++i)
    env.emplace_back(context.vars[i], context.cell_of[i]);
  for (const auto& v : free_vars(f)) env_cell(env, v);  // bindings must exist
  return witness_rec(fam, *f, context.config, env);
}

bool witness_decide(const TheoryFamily& fam, const FormulaPtr& sentence) {
  if (!free_vars(sentence).empty()) throw EvalError("sentence expected");
  AtomicType empty;
  empty.config.bound = family_default_bound(fam);
  return witness_evaluate(fam, sentence, empty);
}

// --- literal satisfiability ---------------------------------------------------------

namespace {

struct Literal {
  const Formula* atom;
  bool positive;
};

void flatten_conjunction(const FormulaPtr& f, std::vector<Literal>& out) {
  if (f->kind == Formula::Kind::And) {
    flatten_conjunction(f->lhs, out);
    flatten_conjunction(f->rhs, out);
    return;
  }
  if (f->kind == Formula::Kind::Not) {
    if (!f->lhs->is_atom())
      throw ValidationError("constraint must be a conjunction of literals");
    out.push_back({f->lhs.get(), false});
    return;
  }
  if (!f->is_atom())
    throw ValidationError("constraint must be a conjunction of literals");
  out.push_back({f.get(), true});
}

void check_atom_legal(const TheoryFamily& fam, const Formula& atom) {
  using K = Formula::Kind;
  switch (atom.kind) {
    case K::Pred:
      if (fam.kind != FamilyKind::ColoredDense)
        throw ValidationError("illegal atom for family: predicate " + atom.name);
      return;
    case K::Equiv:
      if (atom.name != "eq" && atom.name != "full" &&
          (!fam.has_equiv() || atom.name != "E0"))
        throw ValidationError("illegal atom for family: equivalence " +
                              atom.name);
      return;
    case K::SRel:
    case K::SCmp:
      if (atom.name == "eq" || atom.name == "full") return;
      if (atom.name != "E0" || !fam.equiv_convex())
        throw ValidationError("illegal atom for family: successor over " +
                              atom.name);
      return;
    default:
      return;
  }
}

// Cells forced by the order literals: mutual weak reachability collapses,
// strict edges or disequalities inside a component refute.
struct OrderSkeleton {
  std::vector<std::string> vars;  // sorted
  std::vector<int> cell_of_var;
  int cells = 0;
  std::vector<std::vector<bool>> before;    // weak reachability
  std::vector<std::pair<int, int>> strict;  // strict edges between cells
  bool contradictory = false;

  int index(const std::string& v) const {
    return static_cast<int>(
        std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
  }
};

OrderSkeleton order_skeleton(const std::vector<Literal>& lits,
                             const std::set<std::string>& varset) {
  OrderSkeleton sk;
  sk.vars.assign(varset.begin(), varset.end());
  int n = static_cast<int>(sk.vars.size());
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  std::vector<std::pair<int, int>> strict, diseq;
  for (int i = 0; i < n; ++i) le[i][i] = true;
  for (const auto& lit : lits) {
    const Formula& a = *lit.atom;
    if (a.kind == Formula::Kind::Less) {
      int u = sk.index(a.v0), v = sk.index(a.v1);
      if (lit.positive) {
        le[u][v] = true;
        strict.push_back({u, v});
      } else {
        le[v][u] = true;  // total order: not (u < v) means v <= u
      }
    } else if (a.kind == Formula::Kind::VarEq) {
      int u = sk.index(a.v0), v = sk.index(a.v1);
      if (lit.positive)
        le[u][v] = le[v][u] = true;
      else
        diseq.push_back({u, v});
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (le[i][k])
        for (int j = 0; j < n; ++j)
          if (le[k][j]) le[i][j] = true;
  sk.cell_of_var.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (sk.cell_of_var[i] != -1) continue;
    int c = sk.cells++;
    for (int j = 0; j < n; ++j)
      if (le[i][j] && le[j][i]) sk.cell_of_var[j] = c;
  }
  for (auto [u, v] : strict)
    if (sk.cell_of_var[u] == sk.cell_of_var[v]) sk.contradictory = true;
  for (auto [u, v] : diseq)
    if (sk.cell_of_var[u] == sk.cell_of_var[v]) sk.contradictory = true;
  sk.before.assign(sk.cells, std::vector<bool>(sk.cells, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (le[i][j]) sk.before[sk.cell_of_var[i]][sk.cell_of_var[j]] = true;
  for (auto [u, v] : strict)
    sk.strict.push_back({sk.cell_of_var[u], sk.cell_of_var[v]});
  return sk;
}

void linear_extensions(const OrderSkeleton& sk,
                       const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> order;
  std::vector<bool> placed(sk.cells, false);
  bool stop = false;
  std::function<void()> rec = [&]() {
    if (stop) return;
    if (static_cast<int>(order.size()) == sk.cells) {
      if (visit(order)) stop = true;
      return;
    }
    for (int c = 0; c < sk.cells && !stop; ++c) {
      if (placed[c]) continue;
      bool ok = true;
      for (int d = 0; d < sk.cells && ok; ++d)
        if (d != c && !placed[d] && sk.before[d][c]) ok = false;
      if (!ok) continue;
      placed[c] = true;
      order.push_back(c);
      rec();
      order.pop_back();
      placed[c] = false;
    }
  };
  rec();
}

// Integer difference constraints with disequality branching.
struct DiffSystem {
  int n = 0;
  std::vector<std::tuple<int, int, int>> edges;   // g_v - g_u <= w
  std::vector<std::tuple<int, int, int>> diseqs;  // g_v - g_u != w

  bool feasible_core() const {
    std::vector<long long> dist(n, 0);  // virtual source at distance 0
    for (int round = 0; round <= n + 1; ++round) {
      bool changed = false;
      for (auto [u, v, w] : edges)
        if (dist[u] + w < dist[v]) {
          dist[v] = dist[u] + w;
          changed = true;
        }
      if (!changed) return true;
    }
    return false;  // still relaxing: negative cycle
  }

  bool feasible(std::size_t depth = 0) const {
    if (!feasible_core()) return false;
    if (depth == diseqs.size()) return true;
    auto [u, v, w] = diseqs[depth];
    DiffSystem left = *this;
    left.edges.push_back({u, v, w - 1});
    if (left.feasible(depth + 1)) return true;
    DiffSystem right = *this;
    right.edges.push_back({v, u, -(w + 1)});
    return right.feasible(depth + 1);
  }
};

}  // namespace

bool atomic_type_sat(const TheoryFamily& fam, const FormulaPtr& conjunction) {
  std::vector<Literal> lits;
  flatten_conjunction(conjunction, lits);
  std::vector<Literal> kept;
  for (const auto& l : lits) {
    check_atom_legal(fam, *l.atom);
    if (l.atom->kind == Formula::Kind::True) {
      if (!l.positive) return false;
      continue;
    }
    if (l.atom->kind == Formula::Kind::False) {
      if (l.positive) return false;
      continue;
    }
    kept.push_back(l);
  }
  std::set<std::string> varset;
  for (const auto& l : kept) {
    varset.insert(l.atom->v0);
    if (l.atom->kind != Formula::Kind::Pred) varset.insert(l.atom->v1);
  }
  if (varset.empty()) return true;

  OrderSkeleton sk = order_skeleton(kept, varset);
  if (sk.contradictory) return false;

  if (fam.kind == FamilyKind::ColoredDense) {
    // Colors are order-independent: per-cell allowed sets must stay nonempty.
    std::vector<std::set<int>> allowed(sk.cells);
    for (int c = 0; c < sk.cells; ++c)
      for (int k = 0; k < fam.param; ++k) allowed[c].insert(k);
    for (const auto& l : kept) {
      if (l.atom->kind != Formula::Kind::Pred) continue;
      int cell = sk.cell_of_var[sk.index(l.atom->v0)];
      int k = std::atoi(l.atom->name.c_str() + 1);
      if (l.positive) {
        if (!allowed[cell].count(k)) return false;
        allowed[cell] = {k};
      } else {
        allowed[cell].erase(k);
        if (allowed[cell].empty()) return false;
      }
    }
  }

  bool sat = false;
  linear_extensions(sk, [&](const std::vector<int>& order) {
    std::vector<int> pos(sk.cells);
    for (int i = 0; i < sk.cells; ++i) pos[order[i]] = i;
    for (auto [u, v] : sk.strict)
      if (pos[u] >= pos[v]) return false;
    auto cell_at = [&](const std::string& v) {
      return pos[sk.cell_of_var[sk.index(v)]];
    };

    if (fam.kind == FamilyKind::ColoredDense) {
      SymConfig cfg;
      cfg.cells = sk.cells;
      cfg.color_of_cell.assign(sk.cells, 0);
      cfg.bound = family_default_bound(fam);
      for (const auto& l : kept) {
        if (l.atom->kind == Formula::Kind::Pred) continue;
        if (eval_atom_on_config(fam, cfg, *l.atom, cell_at) != l.positive)
          return false;
      }
      sat = true;
      return true;
    }

    if (fam.kind == FamilyKind::DenseClasses) {
      // forced merges by positive class literals, then an exact assignment
      // of the merged groups to at most `param` classes
      std::vector<int> parent(sk.cells);
      for (int i = 0; i < sk.cells; ++i) parent[i] = i;
      std::function<int(int)> find = [&](int x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
      };
      std::vector<std::pair<int, int>> neq;
      for (const auto& l : kept) {
        if (l.atom->kind != Formula::Kind::Equiv || l.atom->name != "E0")
          continue;
        int u = pos[sk.cell_of_var[sk.index(l.atom->v0)]];
        int v = pos[sk.cell_of_var[sk.index(l.atom->v1)]];
        if (l.positive)
          parent[find(u)] = find(v);
        else
          neq.push_back({u, v});
      }
      for (auto [u, v] : neq)
        if (find(u) == find(v)) return false;
      std::vector<int> roots;
      for (int i = 0; i < sk.cells; ++i)
        if (find(i) == i) roots.push_back(i);
      std::map<int, int> root_index;
      for (std::size_t i = 0; i < roots.size(); ++i)
        root_index[roots[i]] = static_cast<int>(i);
      int g = static_cast<int>(roots.size());
      std::vector<std::vector<int>> apart(g);
      for (auto [u, v] : neq) {
        apart[root_index[find(u)]].push_back(root_index[find(v)]);
        apart[root_index[find(v)]].push_back(root_index[find(u)]);
      }
      std::vector<int> assign(g, -1);
      std::function<bool(int)> color = [&](int i) {
        if (i == g) return true;
        for (int cls = 0; cls < fam.param; ++cls) {
          bool ok = true;
          for (int nb : apart[i])
            if (assign[nb] == cls) ok = false;
          if (!ok) continue;
          assign[i] = cls;
          if (color(i + 1)) return true;
          assign[i] = -1;
        }
        return false;
      };
      if (!color(0)) return false;
      SymConfig cfg;
      cfg.cells = sk.cells;
      cfg.class_of_cell.assign(sk.cells, 0);
      for (int i = 0; i < sk.cells; ++i)
        cfg.class_of_cell[i] = assign[root_index[find(i)]];
      cfg.bound = family_default_bound(fam);
      for (const auto& l : kept)
        if (eval_atom_on_config(fam, cfg, *l.atom, cell_at) != l.positive)
          return false;
      sat = true;
      return true;
    }

    // lex families: enumerate convex groupings over the positioned cells
    int m = sk.cells;
    for (int mask = 0; mask < (1 << std::max(0, m - 1)); ++mask) {
      SymConfig cfg;
      cfg.cells = m;
      cfg.bound = family_default_bound(fam);
      cfg.class_of_cell.assign(m, 0);
      int gid = 0;
      for (int c = 1; c < m; ++c) {
        if (mask & (1 << (c - 1))) ++gid;
        cfg.class_of_cell[c] = gid;
      }
      if (fam.kind == FamilyKind::LexDense) {
        bool ok = true;
        for (const auto& l : kept)
          if (eval_atom_on_config(fam, cfg, *l.atom, cell_at) != l.positive) {
            ok = false;
            break;
          }
        if (ok) {
          sat = true;
          return true;
        }
        continue;
      }
      // LexOverZeta: grouping-level literals plus an integer distance system.
      DiffSystem sys;
      sys.n = gid + 1;
      for (int b = 0; b < gid; ++b)
        sys.edges.push_back({b + 1, b, -1});  // strictly increasing indices
      bool ok = true;
      auto group_of = [&](const std::string& v) {
        return cfg.class_of_cell[cell_at(v)];
      };
      for (const auto& l : kept) {
        const Formula& a = *l.atom;
        bool distance_atom =
            (a.kind == Formula::Kind::SRel || a.kind == Formula::Kind::SCmp) &&
            a.name == "E0";
        if (!distance_atom) {
          if (a.kind == Formula::Kind::Equiv && a.name == "E0") {
            if ((group_of(a.v0) == group_of(a.v1)) != l.positive) {
              ok = false;
              break;
            }
            continue;
          }
          if (eval_atom_on_config(fam, cfg, a, cell_at) != l.positive) {
            ok = false;
            break;
          }
          continue;
        }
        if (a.kind == Formula::Kind::SRel) {
          int gu = group_of(a.v0), gv = group_of(a.v1);
          if (l.positive) {
            sys.edges.push_back({gu, gv, a.shift});
            sys.edges.push_back({gv, gu, -a.shift});
          } else {
            sys.diseqs.push_back({gu, gv, a.shift});
          }
          continue;
        }
        int gx = group_of(a.v0), gb = group_of(a.v1);
        SCmpKind cmp = a.cmp;
        if (!l.positive) {
          switch (cmp) {
            case SCmpKind::BelowStrict:
              cmp = SCmpKind::AboveEq;
              break;
            case SCmpKind::BelowEq:
              cmp = SCmpKind::AboveStrict;
              break;
            case SCmpKind::AboveStrict:
              cmp = SCmpKind::BelowEq;
              break;
            case SCmpKind::AboveEq:
              cmp = SCmpKind::BelowStrict;
              break;
          }
        }
        switch (cmp) {
          case SCmpKind::BelowStrict:
            sys.edges.push_back({gb, gx, a.shift - 1});
            break;
          case SCmpKind::BelowEq:
            sys.edges.push_back({gb, gx, a.shift});
            break;
          case SCmpKind::AboveStrict:
            sys.edges.push_back({gx, gb, -(a.shift + 1)});
            break;
          case SCmpKind::AboveEq:
            sys.edges.push_back({gx, gb, -a.shift});
            break;
        }
      }
      if (!ok) continue;
      if (sys.feasible()) {
        sat = true;
        return true;
      }
    }
    return false;
  });
  return sat;
}

// --- quantifier elimination ----------------------------------------------------------

namespace {

FormulaPtr rename_apart(const FormulaPtr& f, std::set<std::string>& used,
                        std::map<std::string, std::string> scope) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::Exists:
    case K::Forall: {
      std::string name = f->name;
      if (used.count(name)) {
        int i = 0;
        while (used.count(name + std::to_string(i))) ++i;
        name += std::to_string(i);
      }
      used.insert(name);
      scope[f->name] = name;
      FormulaPtr body = rename_apart(f->lhs, used, scope);
      return f->kind == K::Exists ? Formula::exists(name, body)
                                  : Formula::forall(name, body);
    }
    case K::Not:
      return Formula::negate(rename_apart(f->lhs, used, scope));
    case K::And:
      return Formula::conj(rename_apart(f->lhs, used, scope),
                           rename_apart(f->rhs, used, scope));
    case K::Or:
      return Formula::disj(rename_apart(f->lhs, used, scope),
                           rename_apart(f->rhs, used, scope));
    case K::Implies:
      return Formula::implies(rename_apart(f->lhs, used, scope),
                              rename_apart(f->rhs, used, scope));
    default: {
      std::vector<std::pair<std::string, std::string>> ren(scope.begin(),
                                                           scope.end());
      return substitute_free(f, ren);
    }
  }
}

struct TypeUniverse {
  std::vector<AtomicType> types;
  std::map<std::string, int> index;
};

struct QeContext {
  const TheoryFamily& fam;
  int bound;
  std::map<int, TypeUniverse> universes;
  std::map<std::string, std::vector<char>> atom_sets;

  const TypeUniverse& universe(int arity) {
    auto it = universes.find(arity);
    if (it != universes.end()) return it->second;
    TypeUniverse u;
    std::vector<std::string> vars;
    for (int i = 0; i < arity; ++i) vars.push_back("v" + std::to_string(i));
    u.types = enumerate_types(fam, vars, bound);
    for (std::size_t i = 0; i < u.types.size(); ++i)
      u.index[u.types[i].key()] = static_cast<int>(i);
    return universes.emplace(arity, std::move(u)).first->second;
  }
};

FormulaPtr canonicalize_vars(const FormulaPtr& f,
                             const std::vector<std::string>& sorted_vars) {
  std::vector<std::pair<std::string, std::string>> ren;
  for (std::size_t i = 0; i < sorted_vars.size(); ++i)
    ren.push_back({sorted_vars[i], "v" + std::to_string(i)});
  return substitute_free(f, ren);
}

std::vector<std::string> sorted_free(const FormulaPtr& f) {
  auto fv = free_vars(f);
  return {fv.begin(), fv.end()};
}

std::vector<char> atom_set(QeContext& ctx, const FormulaPtr& atom,
                           const std::vector<std::string>& vars) {
  FormulaPtr canon = canonicalize_vars(atom, vars);
  std::string cache_key =
      std::to_string(vars.size()) + "|" + render_formula(canon);
  auto it = ctx.atom_sets.find(cache_key);
  if (it != ctx.atom_sets.end()) return it->second;
  const TypeUniverse& u = ctx.universe(static_cast<int>(vars.size()));
  std::vector<char> member(u.types.size(), 0);
  for (std::size_t i = 0; i < u.types.size(); ++i) {
    const AtomicType& t = u.types[i];
    member[i] = eval_atom_on_config(
                    ctx.fam, t.config, *canon,
                    [&](const std::string& v) { return var_cell(t, v); })
                    ? 1
                    : 0;
  }
  ctx.atom_sets.emplace(cache_key, member);
  return member;
}

std::vector<char> eval_typeset(QeContext& ctx, const FormulaPtr& f);

std::vector<char> lift(QeContext& ctx, const std::vector<char>& sub,
                       const std::vector<std::string>& sub_vars,
                       const std::vector<std::string>& vars) {
  if (sub_vars == vars) return sub;
  const TypeUniverse& u = ctx.universe(static_cast<int>(vars.size()));
  const TypeUniverse& su = ctx.universe(static_cast<int>(sub_vars.size()));
  std::vector<std::string> keep;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (std::find(sub_vars.begin(), sub_vars.end(), vars[i]) != sub_vars.end())
      keep.push_back("v" + std::to_string(i));
  std::vector<char> out(u.types.size(), 0);
  for (std::size_t i = 0; i < u.types.size(); ++i) {
    AtomicType r = u.types[i].restrict_to(keep);
    for (std::size_t j = 0; j < r.vars.size(); ++j)
      r.vars[j] = "v" + std::to_string(j);
    auto it = su.index.find(r.key());
    if (it == su.index.end())
      throw VerifyError("restricted type missing from its universe");
    out[i] = sub[it->second];
  }
  return out;
}

std::vector<char> eval_typeset(QeContext& ctx, const FormulaPtr& f) {
  using K = Formula::Kind;
  std::vector<std::string> vars = sorted_free(f);
  switch (f->kind) {
    case K::Not: {
      auto sub = lift(ctx, eval_typeset(ctx, f->lhs), sorted_free(f->lhs), vars);
      for (auto& b : sub) b = !b;
      return sub;
    }
    case K::And:
    case K::Or:
    case K::Implies: {
      auto left =
          lift(ctx, eval_typeset(ctx, f->lhs), sorted_free(f->lhs), vars);
      auto right =
          lift(ctx, eval_typeset(ctx, f->rhs), sorted_free(f->rhs), vars);
      for (std::size_t i = 0; i < left.size(); ++i) {
        switch (f->kind) {
          case K::And:
            left[i] = left[i] && right[i];
            break;
          case K::Or:
            left[i] = left[i] || right[i];
            break;
          default:
            left[i] = !left[i] || right[i];
        }
      }
      return left;
    }
    case K::Exists:
    case K::Forall: {
      bool exists = f->kind == K::Exists;
      std::vector<std::string> body_vars = sorted_free(f->lhs);
      auto body_set = eval_typeset(ctx, f->lhs);
      if (std::find(body_vars.begin(), body_vars.end(), f->name) ==
          body_vars.end())
        return lift(ctx, body_set, body_vars, vars);  // vacuous binder
      if (!exists)
        for (auto& b : body_set) b = !b;
      const TypeUniverse& bu = ctx.universe(static_cast<int>(body_vars.size()));
      const TypeUniverse& u = ctx.universe(static_cast<int>(vars.size()));
      std::vector<char> out(u.types.size(), 0);
      std::vector<std::string> keep;
      for (std::size_t i = 0; i < body_vars.size(); ++i)
        if (body_vars[i] != f->name) keep.push_back("v" + std::to_string(i));
      for (std::size_t i = 0; i < bu.types.size(); ++i) {
        if (!body_set[i]) continue;
        AtomicType r = bu.types[i].restrict_to(keep);
        for (std::size_t j = 0; j < r.vars.size(); ++j)
          r.vars[j] = "v" + std::to_string(j);
        auto it = u.index.find(r.key());
        if (it == u.index.end())
          throw VerifyError("projected type missing from its universe");
        out[it->second] = 1;
      }
      if (!exists)
        for (auto& b : out) b = !b;
      return out;
    }
    default:
      return atom_set(ctx, f, vars);
  }
}

}  // namespace

FormulaPtr eliminate_quantifiers(const TheoryFamily& fam, const FormulaPtr& f,
                                 int distance_bound) {
  int bound =
      distance_bound > 0 ? distance_bound : default_distance_bound(fam, f);
  if (fam.kind == FamilyKind::LexOverZeta && max_shift_magnitude(f) > bound)
    throw DistanceBudgetError(max_shift_magnitude(f), bound);

  std::set<std::string> used = free_vars(f);
  FormulaPtr renamed = rename_apart(f, used, {});
  QeContext ctx{fam, bound, {}, {}};
  std::vector<std::string> vars = sorted_free(renamed);
  auto set = eval_typeset(ctx, renamed);
  if (vars.empty()) return Formula::truth(!set.empty() && set[0]);
  const TypeUniverse& u = ctx.universe(static_cast<int>(vars.size()));
  std::vector<FormulaPtr> disjuncts;
  for (std::size_t i = 0; i < u.types.size(); ++i) {
    if (!set[i]) continue;
    AtomicType named = u.types[i];
    named.vars = vars;  // canonical positions map back onto the sorted frees
    disjuncts.push_back(named.to_formula(fam));
  }
  return Formula::disj_all(std::move(disjuncts));
}

bool decide_sentence(const TheoryFamily& fam, const FormulaPtr& sentence,
                     int distance_bound) {
  if (!free_vars(sentence).empty()) throw EvalError("sentence expected");
  FormulaPtr qf = eliminate_quantifiers(fam, sentence, distance_bound);
  if (qf->kind == Formula::Kind::True) return true;
  if (qf->kind == Formula::Kind::False) return false;
  throw VerifyError("sentence did not eliminate to a truth constant");
}

// --- batteries -------------------------------------------------------------------

namespace {

FormulaPtr fp(const TheoryFamily& fam, const std::string& text) {
  return parse_formula(text, fam.signature());
}

}  // namespace

std::vector<FormulaPtr> binary_battery(const TheoryFamily& fam) {
  bool eqv = fam.has_equiv();
  bool colored = fam.kind == FamilyKind::ColoredDense;
  bool zeta = fam.kind == FamilyKind::LexOverZeta;
  std::vector<std::string> atoms{"x < y", "y < x", "x = y"};
  if (eqv) {
    atoms.push_back("E0(x,y)");
    atoms.push_back("!E0(x,y)");
  }
  if (colored) {
    atoms.push_back("P0(x)");
    atoms.push_back("P0(y)");
    if (fam.param > 1) {
      atoms.push_back("P1(x)");
      atoms.push_back("P0(x) & P1(y)");
    }
  }
  if (zeta) {
    atoms.push_back("S[E0,1](x,y)");
    atoms.push_back("S[E0,2](x,y)");
    atoms.push_back("x <= S[E0,1](y)");
    atoms.push_back("S[E0,-1](y) < x");
  }
  std::vector<std::string> texts;
  for (const auto& a : atoms) texts.push_back(a);
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size() && texts.size() < 40; ++j) {
      texts.push_back("(" + atoms[i] + ") & (" + atoms[j] + ")");
      texts.push_back("(" + atoms[i] + ") | (" + atoms[j] + ")");
      texts.push_back("(" + atoms[i] + ") -> (" + atoms[j] + ")");
    }
  std::vector<std::string> inner{"x < z & z < y", "z < x & z < y",
                                 "x < z & y < z"};
  if (eqv) {
    inner.push_back("x < z & z < y & E0(z,x)");
    inner.push_back("x < z & z < y & !E0(z,x) & !E0(z,y)");
    inner.push_back("E0(z,x) & E0(z,y)");
  }
  if (colored) {
    inner.push_back("x < z & z < y & P0(z)");
    if (fam.param > 1) inner.push_back("x < z & z < y & P1(z)");
  }
  if (zeta) inner.push_back("S[E0,1](x,z) & S[E0,1](z,y)");
  for (const auto& g : inner) {
    texts.push_back("exists z. (" + g + ")");
    texts.push_back("forall z. ((" + g + ") -> z < y)");
  }
  texts.push_back("exists z. forall w. ((x < w & w < z) -> w < y)");
  texts.push_back("forall z. (z < x -> exists w. (z < w & w < y))");
  texts.push_back("exists z. (x < z & forall w. (z < w -> y < w))");
  if (eqv) {
    texts.push_back("exists z. (E0(z,x) & forall w. (E0(w,y) -> z < w))");
    texts.push_back("forall z. (E0(z,x) -> exists w. (E0(w,y) & z < w))");
  }
  if (colored)
    texts.push_back("exists z. (P0(z) & forall w. ((x < w & w < z) -> w < y))");
  if (zeta) {
    texts.push_back("exists z. (S[E0,1](x,z) & z < y)");
    texts.push_back("forall z. (S[E0,1](x,z) -> exists w. (E0(w,z) & y < w))");
  }
  std::vector<FormulaPtr> out;
  for (const auto& t : texts) {
    FormulaPtr f = fp(fam, t);
    auto fv = free_vars(f);
    bool ok = !fv.empty();
    for (const auto& v : fv) ok = ok && (v == "x" || v == "y");
    if (ok) out.push_back(std::move(f));
    if (out.size() >= 56) break;
  }
  if (out.size() < 50) throw VerifyError("binary battery smaller than expected");
  return out;
}

FormulaPtr monotonicity_schema(const TheoryFamily& fam,
                               const FormulaPtr& phi_xy) {
  auto fv = free_vars(phi_xy);
  for (const auto& v : fv)
    if (v != "x" && v != "y")
      throw ValidationError("schema expects a formula in x and y");
  // fresh names: a, a2, u, w are reserved by construction of the battery
  FormulaPtr phi_wa2 = substitute_free(phi_xy, {{"x", "w"}, {"y", "a2"}});
  FormulaPtr phi_wa = substitute_free(phi_xy, {{"x", "w"}, {"y", "a"}});
  auto upper_bound = [](FormulaPtr phi) {
    return Formula::forall("w", Formula::implies(phi, Formula::less("w", "u")));
  };
  std::vector<FormulaPtr> same_unary;
  if (fam.kind == FamilyKind::ColoredDense)
    for (int k = 0; k < fam.param; ++k) {
      std::string p = "P" + std::to_string(k);
      FormulaPtr both = Formula::conj(Formula::pred(p, "a"),
                                      Formula::pred(p, "a2"));
      FormulaPtr neither =
          Formula::conj(Formula::negate(Formula::pred(p, "a")),
                        Formula::negate(Formula::pred(p, "a2")));
      same_unary.push_back(Formula::disj(both, neither));
    }
  FormulaPtr premise = Formula::conj_all(
      {Formula::conj_all(same_unary),
       Formula::disj(Formula::less("a", "a2"), Formula::var_eq("a", "a2")),
       upper_bound(phi_wa2)});
  FormulaPtr body = Formula::implies(premise, upper_bound(phi_wa));
  return Formula::forall(
      "a", Formula::forall("a2", Formula::forall("u", body)));
}

std::vector<FormulaPtr> formula_battery(const TheoryFamily& fam) {
  std::vector<FormulaPtr> out = binary_battery(fam);
  bool eqv = fam.has_equiv();
  bool colored = fam.kind == FamilyKind::ColoredDense;
  std::vector<std::string> extra{
      "x = x",
      "exists z. (x < z)",
      "exists z. (z < x)",
      "x < y & y < z",
      "exists w. (x < w & w < y & y < z)",
      "forall w. ((x < w & w < z) -> (w < y | w = y | y < w))",
  };
  if (eqv) {
    extra.push_back("E0(x,y) & E0(y,z)");
    extra.push_back("E0(x,y) & !E0(y,z)");
    extra.push_back("!E0(x,y) & !E0(y,z) & !E0(x,z)");
    extra.push_back("exists w. (E0(w,x) & y < w & w < z)");
  }
  if (colored) {
    extra.push_back("P0(x) & x < y & x < z");
    extra.push_back("exists w. (P0(w) & x < w & w < y & w < z)");
  }
  for (const auto& t : extra) out.push_back(fp(fam, t));
  return out;
}

}  // namespace ccel
