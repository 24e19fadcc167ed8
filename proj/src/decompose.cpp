#include "ccel/decompose.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ccel {

std::vector<bool> SuccessorForm::evaluate(int anchor) const {
  int n = equiv.size();
  std::vector<bool> out(n, false);
  auto idx = successor_block(equiv, anchor, shift);
  if (!idx) return out;  // nonexistent shifted block: everything false
  const auto& block = equiv.block(*idx);
  for (int x = 0; x < n; ++x) {
    switch (shape) {
      case SCmpKind::BelowStrict:
        out[x] = x < block.front();
        break;
      case SCmpKind::BelowEq:
        out[x] = x <= block.back();
        break;
      case SCmpKind::AboveStrict:
        out[x] = x > block.back();
        break;
      case SCmpKind::AboveEq:
        out[x] = x >= block.front();
        break;
    }
  }
  return out;
}

void require_monotone(const BoolMatrix& m) {
  for (int y = 0; y < m.n; ++y) {
    bool seen_false = false;
    for (int x = 0; x < m.n; ++x) {
      if (!m.at(x, y)) {
        seen_false = true;
      } else if (seen_false) {
        throw NotMonotone("column " + std::to_string(y) +
                              " is not an initial segment at row " +
                              std::to_string(x),
                          y, x);
      }
    }
  }
  for (int y = 0; y + 1 < m.n; ++y)
    for (int x = 0; x < m.n; ++x)
      if (m.at(x, y) && !m.at(x, y + 1))
        throw NotMonotone("columns " + std::to_string(y) + " and " +
                              std::to_string(y + 1) +
                              " are not nested at row " + std::to_string(x),
                          y, y + 1);
}

BoolMatrix monotonize(const BoolMatrix& m) {
  BoolMatrix out(m.n);
  for (int x = 0; x < m.n; ++x) {
    bool acc = false;
    for (int y = 0; y < m.n; ++y) {
      acc = acc || m.at(x, y);
      out.set(x, y, acc);
    }
  }
  return out;
}

namespace {

// Row-equality partition of a monotone matrix; convex because rows are
// nested final segments.
Partition row_equality_partition(const BoolMatrix& m) {
  std::vector<std::vector<int>> blocks;
  for (int x = 0; x < m.n; ++x) {
    bool fresh = true;
    if (x > 0) {
      fresh = false;
      for (int y = 0; y < m.n; ++y)
        if (m.at(x, y) != m.at(x - 1, y)) {
          fresh = true;
          break;
        }
    }
    if (fresh)
      blocks.push_back({x});
    else
      blocks.back().push_back(x);
  }
  return Partition::from_blocks(m.n, std::move(blocks));
}

}  // namespace

SuccessorForm initial_successor_form(const BoolMatrix& m, int anchor) {
  require_monotone(m);
  std::vector<int> column = m.column(anchor);
  SuccessorForm form;
  if (column.empty()) {
    form.equiv = Partition::full(m.n);
    form.shift = 0;
    form.shape = SCmpKind::BelowStrict;
  } else {
    Partition e = row_equality_partition(m);
    int anchor_block = e.block_index_of(anchor);
    form.equiv = e;
    if (m.at(anchor, anchor)) {
      form.shift = e.block_index_of(column.back()) - anchor_block;
      form.shape = SCmpKind::BelowEq;
    } else {
      int first_out = static_cast<int>(column.size());  // min of the complement
      form.shift = e.block_index_of(first_out) - anchor_block;  // <= 0
      form.shape = SCmpKind::BelowStrict;
    }
  }
  std::vector<bool> expect(m.n, false);
  for (int x : column) expect[x] = true;
  if (form.evaluate(anchor) != expect)
    throw VerifyError("initial successor form does not re-evaluate to its column");
  return form;
}

CaseList monotone_decompose(const BoolMatrix& m) {
  require_monotone(m);
  CaseList out;
  for (int y = 0; y < m.n; ++y) {
    SuccessorForm form = initial_successor_form(m, y);
    bool merged = false;
    for (auto& c : out.cases)
      if (c.form == form) {
        c.guard.push_back(y);
        merged = true;
        break;
      }
    if (!merged) out.cases.push_back({{y}, std::move(form)});
  }
  for (const auto& c : out.cases)
    for (int y : c.guard) {
      std::vector<bool> expect(m.n, false);
      for (int x : m.column(y)) expect[x] = true;
      if (c.form.evaluate(y) != expect)
        throw VerifyError("monotone case does not re-evaluate to its column");
    }
  return out;
}

namespace {

// Splits off each block's maximum (or minimum) as a singleton block.
Partition split_extremes(const Partition& e, bool maxima) {
  std::vector<std::vector<int>> blocks;
  for (const auto& b : e.blocks()) {
    if (b.size() == 1) {
      blocks.push_back(b);
      continue;
    }
    std::vector<int> rest(b);
    int extreme;
    if (maxima) {
      extreme = rest.back();
      rest.pop_back();
    } else {
      extreme = rest.front();
      rest.erase(rest.begin());
    }
    blocks.push_back(std::move(rest));
    blocks.push_back({extreme});
  }
  return Partition::from_blocks(e.size(), std::move(blocks));
}

}  // namespace

FunctionCaseList function_decompose(int size, const std::vector<int>& f) {
  if (static_cast<int>(f.size()) != size)
    throw ValidationError("function table must cover the domain");
  for (int v : f)
    if (v < 0 || v >= size) throw ValidationError("function value out of range");

  FunctionCaseList out;
  auto add_case = [&](int a, const Partition& equiv, int shift) {
    for (auto& c : out.cases)
      if (c.shift == shift && c.equiv == equiv) {
        c.guard.push_back(a);
        return;
      }
    out.cases.push_back({{a}, equiv, shift});
  };

  // up = true handles points with f(a) >= a via the initial parts
  // (-inf, f(a)], splitting block maxima into singletons; up = false mirrors
  // with (-inf, f(a)) and block minima.
  auto run_side = [&](bool up) {
    std::vector<int> remaining;
    for (int a = 0; a < size; ++a)
      if (up ? f[a] >= a : f[a] < a) remaining.push_back(a);
    while (!remaining.empty()) {
      // Guarded running-union family over this round's members.
      BoolMatrix fam(size);
      for (int y = 0; y < size; ++y) {
        int hi = -1;  // family column y = [0, hi]
        for (int v : remaining)
          if (v <= y) hi = std::max(hi, up ? f[v] : f[v] - 1);
        for (int x = 0; x <= hi; ++x) fam.set(x, y, true);
      }
      Partition e = row_equality_partition(fam);
      Partition refined = split_extremes(e, up);
      std::vector<int> leftover;
      for (int a : remaining) {
        int want = up ? f[a] : f[a] - 1;
        int have = -1;
        for (int x = 0; x < size; ++x)
          if (fam.at(x, a)) have = x;
        if (have != want) {
          leftover.push_back(a);  // a lower member ran past this column
          continue;
        }
        if (refined.block(refined.block_index_of(f[a])).size() != 1)
          throw VerifyError("function value did not split into a singleton block");
        int shift = refined.block_index_of(f[a]) - refined.block_index_of(a);
        add_case(a, refined, shift);
      }
      if (leftover.size() == remaining.size())
        throw VerifyError("function decomposition made no progress");
      remaining = std::move(leftover);
    }
  };
  run_side(true);
  run_side(false);

  std::sort(out.cases.begin(), out.cases.end(), [](const auto& a, const auto& b) {
    return a.guard.front() < b.guard.front();
  });
  for (auto& c : out.cases) std::sort(c.guard.begin(), c.guard.end());

  // Reassembly: every point's shifted block is exactly {f(a)}, guards
  // partition the domain, and each restriction is weakly increasing.
  std::vector<bool> covered(size, false);
  for (const auto& c : out.cases)
    for (int a : c.guard) {
      if (covered[a]) throw VerifyError("guards overlap");
      covered[a] = true;
      auto idx = successor_block(c.equiv, a, c.shift);
      if (!idx || c.equiv.block(*idx) != std::vector<int>{f[a]})
        throw VerifyError("case does not reproduce the function value");
    }
  for (int a = 0; a < size; ++a)
    if (!covered[a]) throw VerifyError("guards do not cover the domain");
  for (const auto& c : out.cases)
    for (std::size_t i = 1; i < c.guard.size(); ++i)
      if (f[c.guard[i - 1]] > f[c.guard[i]])
        throw VerifyError("guard restriction is not increasing");
  return out;
}

std::vector<bool> BandForm::evaluate() const {
  std::vector<bool> lo = lower.evaluate(lower_anchor);
  std::vector<bool> hi = upper.evaluate(upper_anchor);
  std::vector<bool> out(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) out[i] = lo[i] && hi[i];
  return out;
}

namespace {

std::string form_pretty(const SuccessorForm& form, int anchor,
                        const FiniteCcelStructure& s) {
  std::string equiv_name;
  for (const auto& e : s.equivs())
    if (e.convex && e.partition == form.equiv) equiv_name = e.name;
  if (equiv_name.empty()) {
    if (form.equiv == Partition::equality(s.size()))
      equiv_name = "eq";
    else if (form.equiv == Partition::full(s.size()))
      equiv_name = "full";
    else
      equiv_name = "<constructed>";
  }
  std::string term = "S[" + equiv_name + "," + std::to_string(form.shift) +
                     "](" + std::to_string(anchor) + ")";
  switch (form.shape) {
    case SCmpKind::BelowStrict:
      return "x < " + term;
    case SCmpKind::BelowEq:
      return "x <= " + term;
    case SCmpKind::AboveStrict:
      return term + " < x";
    case SCmpKind::AboveEq:
      return term + " <= x";
  }
  return term;
}

}  // namespace

std::string BandForm::pretty(const FiniteCcelStructure& s) const {
  return form_pretty(lower, lower_anchor, s) + " & " +
         form_pretty(upper, upper_anchor, s);
}

BandForm convex_normal_form(const FiniteCcelStructure& s,
                            const std::vector<int>& convex_set,
                            const std::vector<int>& params, int max_shift) {
  int n = s.size();
  std::vector<bool> target(n, false);
  {
    std::vector<int> sorted(convex_set);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i] != sorted[i - 1] + 1)
        throw ValidationError("target set is not convex");
    for (int e : sorted) {
      if (e < 0 || e >= n) throw ValidationError("element out of range");
      target[e] = true;
    }
  }
  bool trivial = convex_set.empty() || static_cast<int>(convex_set.size()) == n;
  if (params.empty() && !trivial)
    throw ValidationError("parameter set may be empty only for the trivial sets");
  std::vector<int> anchors = params;
  if (anchors.empty())
    for (int e = 0; e < n; ++e) anchors.push_back(e);
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

  // Candidate partitions, coarsest first: full, declared convex by block
  // count, equality last.
  std::vector<Partition> pool{Partition::full(n)};
  {
    std::vector<Partition> named;
    for (const auto& e : s.equivs())
      if (e.convex) named.push_back(e.partition);
    std::stable_sort(named.begin(), named.end(),
                     [](const Partition& a, const Partition& b) {
                       return a.block_count() < b.block_count();
                     });
    for (auto& p : named) pool.push_back(std::move(p));
    pool.push_back(Partition::equality(n));
  }

  // Shapes ordered weak-before-strict. Shift signs per band shape: weak
  // lower sides shift down, strict lower sides shift up; weak upper sides
  // shift up, strict upper sides shift down.
  struct Shape {
    SCmpKind lower, upper;
    int lower_sign, upper_sign;
  };
  const Shape shapes[] = {
      {SCmpKind::AboveEq, SCmpKind::BelowEq, -1, +1},
      {SCmpKind::AboveEq, SCmpKind::BelowStrict, -1, -1},
      {SCmpKind::AboveStrict, SCmpKind::BelowEq, +1, +1},
      {SCmpKind::AboveStrict, SCmpKind::BelowStrict, +1, -1},
  };

  for (int total = 0; total <= 2 * max_shift; ++total) {
    for (int m = 0; m <= std::min(total, max_shift); ++m) {
      int k = total - m;
      if (k > max_shift) continue;
      for (const Shape& shape : shapes)
        for (const Partition& e1 : pool)
          for (const Partition& e2 : pool)
            for (int a : anchors)
              for (int b : anchors) {
                BandForm band;
                band.lower = {e1, shape.lower_sign * m, shape.lower};
                band.lower_anchor = a;
                band.upper = {e2, shape.upper_sign * k, shape.upper};
                band.upper_anchor = b;
                if (band.evaluate() == target) return band;
              }
    }
  }
  throw ValidationError("no band representation within shift bound " +
                        std::to_string(max_shift));
}

// --- Boolean-combination expressions ----------------------------------------

BcExpression BcExpression::interval_above() {
  BcExpression e;
  e.kind = Kind::IntervalAbove;
  return e;
}
BcExpression BcExpression::interval_below() {
  BcExpression e;
  e.kind = Kind::IntervalBelow;
  return e;
}
BcExpression BcExpression::block(int partition_id, int block_index) {
  BcExpression e;
  e.kind = Kind::Block;
  e.partition_id = partition_id;
  e.block_index = block_index;
  return e;
}
BcExpression BcExpression::unite(std::vector<BcExpression> parts) {
  if (parts.empty()) return empty();
  if (parts.size() == 1) return parts.front();
  BcExpression e;
  e.kind = Kind::Union;
  e.children = std::move(parts);
  return e;
}
BcExpression BcExpression::intersect(std::vector<BcExpression> parts) {
  BcExpression e;
  e.kind = Kind::Intersect;
  e.children = std::move(parts);
  return e;
}
BcExpression BcExpression::complement(BcExpression part) {
  BcExpression e;
  e.kind = Kind::Complement;
  e.children.push_back(std::move(part));
  return e;
}

std::vector<bool> evaluate_bc(const BcExpression& e,
                              const FiniteCcelStructure& s,
                              const std::vector<ConstructedPartition>& parts,
                              int anchor) {
  int n = s.size();
  std::vector<bool> out(n, false);
  switch (e.kind) {
    case BcExpression::Kind::Empty:
      return out;
    case BcExpression::Kind::IntervalAbove:
      for (int x = anchor + 1; x < n; ++x) out[x] = true;
      return out;
    case BcExpression::Kind::IntervalBelow:
      for (int x = 0; x < anchor; ++x) out[x] = true;
      return out;
    case BcExpression::Kind::UnarySet: {
      const auto& members = s.pred(e.pred);
      for (int x = 0; x < n; ++x) out[x] = members[x];
      return out;
    }
    case BcExpression::Kind::Block: {
      const auto& block = parts.at(e.partition_id).partition.block(e.block_index);
      for (int x : block) out[x] = true;
      return out;
    }
    case BcExpression::Kind::Union:
      for (const auto& child : e.children) {
        auto sub = evaluate_bc(child, s, parts, anchor);
        for (int x = 0; x < n; ++x) out[x] = out[x] || sub[x];
      }
      return out;
    case BcExpression::Kind::Intersect: {
      std::fill(out.begin(), out.end(), true);
      for (const auto& child : e.children) {
        auto sub = evaluate_bc(child, s, parts, anchor);
        for (int x = 0; x < n; ++x) out[x] = out[x] && sub[x];
      }
      return out;
    }
    case BcExpression::Kind::Complement: {
      auto sub = evaluate_bc(e.children.front(), s, parts, anchor);
      for (int x = 0; x < n; ++x) out[x] = !sub[x];
      return out;
    }
  }
  return out;
}

std::string render_bc(const BcExpression& e,
                      const std::vector<ConstructedPartition>& parts) {
  switch (e.kind) {
    case BcExpression::Kind::Empty:
      return "{}";
    case BcExpression::Kind::IntervalAbove:
      return "(a,inf)";
    case BcExpression::Kind::IntervalBelow:
      return "(-inf,a)";
    case BcExpression::Kind::UnarySet:
      return e.pred;
    case BcExpression::Kind::Block: {
      const auto& cp = parts.at(e.partition_id);
      const auto& b = cp.partition.block(e.block_index);
      return cp.label + "#" + std::to_string(e.partition_id) + "[" +
             std::to_string(b.front()) + ".." + std::to_string(b.back()) + "]";
    }
    case BcExpression::Kind::Union:
    case BcExpression::Kind::Intersect: {
      std::string sep = e.kind == BcExpression::Kind::Union ? " u " : " n ";
      std::string out = "(";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += sep;
        out += render_bc(e.children[i], parts);
      }
      return out + ")";
    }
    case BcExpression::Kind::Complement:
      return "~" + render_bc(e.children.front(), parts);
  }
  return "{}";
}

// --- one-parameter decomposition ---------------------------------------------

namespace {

int add_partition(std::vector<ConstructedPartition>& parts, std::string label,
                  Partition p, bool convex) {
  for (int i = 0; i < static_cast<int>(parts.size()); ++i)
    if (parts[i].partition == p && parts[i].label == label) return i;
  parts.push_back({std::move(label), std::move(p), convex});
  return static_cast<int>(parts.size()) - 1;
}

// Refines e by separating elements whose rows differ on the columns strictly
// below their block.
Partition history_refinement(const BoolMatrix& m, const Partition& e) {
  std::vector<std::vector<int>> blocks;
  for (const auto& b : e.blocks()) {
    int lo = b.front();
    std::map<std::vector<bool>, std::vector<int>> groups;
    for (int x : b) {
      std::vector<bool> row;
      row.reserve(lo);
      for (int c = 0; c < lo; ++c) row.push_back(m.at(x, c));
      groups[row].push_back(x);
    }
    for (auto& [row, xs] : groups) blocks.push_back(xs);
  }
  return Partition::from_blocks(e.size(), std::move(blocks));
}

// Covers the part of column `anchor` strictly above the anchor. Peels final
// segments of constant cut-type count from the interval above the anchor,
// turning each segment into whole-block pieces or a guarded end part of the
// anchor's block.
std::vector<BcExpression> decompose_above(
    const FiniteCcelStructure& s, const BoolMatrix& m, int anchor,
    std::vector<ConstructedPartition>& partitions,
    std::vector<OneParamReport::Peel>& peels) {
  const int n = m.n;
  const int a = anchor;
  std::vector<BcExpression> pieces;

  std::vector<int> nphi(n, 0);
  for (int x = a + 1; x < n; ++x) nphi[x] = n_phi(m, a, x);

  int top = n - 1;  // segments run (lo, top], stacked downward
  while (top > a) {
    int jmin = nphi[top];
    for (int x = a + 1; x <= top; ++x) jmin = std::min(jmin, nphi[x]);
    int lo = top;
    while (lo > a && nphi[lo] == jmin) --lo;
    std::vector<int> segment;
    for (int x = lo + 1; x <= top; ++x) segment.push_back(x);
    if (segment.empty()) throw VerifyError("type-count segment is empty");

    BandForm band = convex_normal_form(s, segment, {a}, n);
    if (band.upper.shape != SCmpKind::BelowEq)
      throw VerifyError("segment above the anchor needs a weak upper side");
    const Partition& e_up = band.upper.equiv;
    int first_block = e_up.block_index_of(segment.front());
    int anchor_block = e_up.block_index_of(a);

    OneParamReport::Peel peel;
    peel.segment = segment;
    peel.upper_partition_id =
        add_partition(partitions, "band-upper", e_up, true);
    int top_block = e_up.block_index_of(segment.back());

    // Blocks strictly above the anchor's block are taken whole, selected
    // through the history refinement: a history cell lies in or out of the
    // column together, because the anchor sits below the block.
    if (top_block > anchor_block) {
      Partition refined = history_refinement(m, e_up);
      int rid = add_partition(partitions, "history-split", refined, false);
      int from_block = std::max(first_block, anchor_block + 1);
      for (int bi = from_block; bi <= top_block; ++bi) {
        for (int x : e_up.block(bi))
          if (x <= a) throw VerifyError("whole-block piece reaches the anchor");
        for (int ri = 0; ri < refined.block_count(); ++ri) {
          const auto& rb = refined.block(ri);
          if (e_up.block_index_of(rb.front()) != bi) continue;
          bool inside = m.at(rb.front(), a);
          for (int x : rb)
            if (m.at(x, a) != inside)
              throw VerifyError("history cell straddles the target set");
          if (inside) pieces.push_back(BcExpression::block(rid, ri));
        }
      }
    }

    if (first_block != anchor_block) {
      top = e_up.block(first_block).front() - 1;
      peel.end_part_case = false;
    } else {
      // End part of the anchor's block. The guarded construction: a monotone
      // cut family D(y) = [0, max(y, lo)], the constant-count guard theta,
      // the inner merge relation over rows above the larger cut, and the
      // guarded projection psi whose cells select the answer.
      int seg_lo = segment.front();
      auto cut_hi = [&](int y) { return std::max(y, seg_lo - 1); };

      std::vector<int> theta_cache(n, -1);
      auto theta = [&](int y) {
        if (theta_cache[y] >= 0) return theta_cache[y] == 1;
        bool any = false, ok = true;
        for (int w : e_up.block(e_up.block_index_of(y)))
          if (w > cut_hi(y)) {
            any = true;
            if (n_phi(m, y, w) != jmin) {
              ok = false;
              break;
            }
          }
        theta_cache[y] = (any && ok) ? 1 : 0;
        return theta_cache[y] == 1;
      };
      if (!theta(a))
        throw VerifyError("anchor fails its own constant-count guard");

      auto inner_same = [&](int y, int z) {
        if (!e_up.same_block(y, z)) return false;
        bool ty = theta(y), tz = theta(z);
        if (!ty && !tz) return true;
        if (ty != tz) return false;
        int hi = cut_hi(std::max(y, z));
        for (int w = hi + 1; w < n; ++w)
          if (m.at(w, y) != m.at(w, z)) return false;
        return true;
      };
      auto psi = [&](int x, int y) {
        if (!e_up.same_block(x, y) || !theta(y)) return false;
        for (int z = 0; z < n; ++z)
          if (inner_same(y, z) && x > cut_hi(z) && m.at(x, z)) return true;
        return false;
      };

      // Cells of equal psi-rows inside each block.
      std::vector<std::vector<int>> rp_blocks;
      for (const auto& b : e_up.blocks()) {
        std::map<std::vector<bool>, std::vector<int>> groups;
        for (int x : b) {
          std::vector<bool> row;
          row.reserve(b.size());
          for (int w : b) row.push_back(psi(x, w));
          groups[row].push_back(x);
        }
        for (auto& [row, xs] : groups) rp_blocks.push_back(xs);
      }
      Partition rp = Partition::from_blocks(n, std::move(rp_blocks));
      int rid = add_partition(partitions, "end-part-split", rp, false);

      // The segment itself: anchor's block minus the strict lower side.
      if (band.lower.shape != SCmpKind::AboveStrict)
        throw VerifyError("end-part segment needs a strict lower side");
      const Partition& e_lo = band.lower.equiv;
      int uid = peel.upper_partition_id;
      int lid = add_partition(partitions, "band-lower", e_lo, true);
      std::vector<BcExpression> removed{BcExpression::interval_below()};
      for (int k = 0; k <= band.lower.shift; ++k) {
        auto idx = successor_block(e_lo, a, k);
        if (!idx) throw VerifyError("missing lower band block");
        removed.push_back(BcExpression::block(lid, *idx));
      }
      BcExpression seg_expr = BcExpression::intersect(
          {BcExpression::block(uid, anchor_block),
           BcExpression::complement(BcExpression::unite(std::move(removed)))});

      std::vector<BcExpression> selected;
      for (int ri = 0; ri < rp.block_count(); ++ri) {
        const auto& rb = rp.block(ri);
        if (e_up.block_index_of(rb.front()) != anchor_block) continue;
        if (psi(rb.front(), a)) selected.push_back(BcExpression::block(rid, ri));
      }
      pieces.push_back(BcExpression::intersect(
          {BcExpression::unite(std::move(selected)), seg_expr}));

      // The guarded projection agrees with the column on the end part.
      for (int x : segment)
        if (e_up.block_index_of(x) == anchor_block && psi(x, a) != m.at(x, a))
          throw VerifyError("guarded selection disagrees with the column");
      top = seg_lo - 1;
      peel.end_part_case = true;
    }
    peels.push_back(std::move(peel));
  }
  return pieces;
}

FiniteCcelStructure reversed_structure(const FiniteCcelStructure& s) {
  int n = s.size();
  auto flip = [n](int e) { return n - 1 - e; };
  std::vector<NamedPred> preds;
  for (const auto& p : s.preds()) {
    std::vector<bool> members(n);
    for (int e = 0; e < n; ++e) members[flip(e)] = p.members[e];
    preds.push_back({p.name, std::move(members)});
  }
  std::vector<NamedEquiv> equivs;
  for (const auto& e : s.equivs()) {
    std::vector<std::vector<int>> blocks;
    for (const auto& b : e.partition.blocks()) {
      std::vector<int> nb;
      for (int x : b) nb.push_back(flip(x));
      blocks.push_back(std::move(nb));
    }
    equivs.push_back(
        {e.name, e.convex, Partition::from_blocks(n, std::move(blocks))});
  }
  return FiniteCcelStructure::create(n, std::move(preds), std::move(equivs));
}

BoolMatrix reversed_matrix(const BoolMatrix& m) {
  BoolMatrix out(m.n);
  for (int x = 0; x < m.n; ++x)
    for (int y = 0; y < m.n; ++y) out.set(m.n - 1 - x, m.n - 1 - y, m.at(x, y));
  return out;
}

Partition reversed_partition(const Partition& p) {
  int n = p.size();
  std::vector<std::vector<int>> blocks;
  for (const auto& b : p.blocks()) {
    std::vector<int> nb;
    for (int x : b) nb.push_back(n - 1 - x);
    blocks.push_back(std::move(nb));
  }
  return Partition::from_blocks(n, std::move(blocks));
}

// Expression produced on the reversed structure, mapped back: intervals swap
// and block references are remapped through the partition id map.
BcExpression unreverse(const BcExpression& e,
                       const std::vector<ConstructedPartition>& rev_parts,
                       const std::vector<int>& id_map,
                       const std::vector<ConstructedPartition>& fwd_parts) {
  BcExpression out = e;
  switch (e.kind) {
    case BcExpression::Kind::IntervalAbove:
      return BcExpression::interval_below();
    case BcExpression::Kind::IntervalBelow:
      return BcExpression::interval_above();
    case BcExpression::Kind::Block: {
      const auto& rev = rev_parts.at(e.partition_id).partition;
      const auto& fwd = fwd_parts.at(id_map.at(e.partition_id)).partition;
      int n = rev.size();
      int member = rev.block(e.block_index).front();
      out.partition_id = id_map.at(e.partition_id);
      out.block_index = fwd.block_index_of(n - 1 - member);
      return out;
    }
    default:
      for (auto& child : out.children)
        child = unreverse(child, rev_parts, id_map, fwd_parts);
      return out;
  }
}

}  // namespace

OneParamReport one_param_decompose(const FiniteCcelStructure& s,
                                   const BoolMatrix& m, int anchor) {
  if (m.n != s.size()) throw ValidationError("matrix size mismatch");
  if (anchor < 0 || anchor >= m.n) throw ValidationError("anchor out of range");
  const int n = m.n;
  OneParamReport report;
  report.anchor = anchor;

  std::vector<bool> target(n, false);
  for (int x : m.column(anchor)) target[x] = true;

  std::vector<BcExpression> pieces;
  if (target[anchor])
    pieces.push_back(BcExpression::complement(BcExpression::unite(
        {BcExpression::interval_above(), BcExpression::interval_below()})));

  bool above_all = anchor + 1 < n, above_any = false;
  for (int x = anchor + 1; x < n; ++x) {
    above_all = above_all && target[x];
    above_any = above_any || target[x];
  }
  if (above_all) {
    pieces.push_back(BcExpression::interval_above());
  } else if (above_any) {
    auto side =
        decompose_above(s, m, anchor, report.partitions, report.peels_above);
    for (auto& p : side) pieces.push_back(std::move(p));
  }

  bool below_all = anchor > 0, below_any = false;
  for (int x = 0; x < anchor; ++x) {
    below_all = below_all && target[x];
    below_any = below_any || target[x];
  }
  if (below_all) {
    pieces.push_back(BcExpression::interval_below());
  } else if (below_any) {
    FiniteCcelStructure rs = reversed_structure(s);
    BoolMatrix rm = reversed_matrix(m);
    std::vector<ConstructedPartition> rev_parts;
    std::vector<OneParamReport::Peel> rev_peels;
    auto side = decompose_above(rs, rm, n - 1 - anchor, rev_parts, rev_peels);
    std::vector<int> id_map(rev_parts.size());
    for (int i = 0; i < static_cast<int>(rev_parts.size()); ++i)
      id_map[i] = add_partition(report.partitions, rev_parts[i].label,
                                reversed_partition(rev_parts[i].partition),
                                rev_parts[i].convex);
    for (auto& p : side)
      pieces.push_back(unreverse(p, rev_parts, id_map, report.partitions));
    for (auto& peel : rev_peels) {
      OneParamReport::Peel fp;
      fp.end_part_case = peel.end_part_case;
      fp.upper_partition_id =
          peel.upper_partition_id >= 0 ? id_map[peel.upper_partition_id] : -1;
      for (int x : peel.segment) fp.segment.push_back(n - 1 - x);
      std::sort(fp.segment.begin(), fp.segment.end());
      report.peels_below.push_back(std::move(fp));
    }
  }

  report.expr = BcExpression::unite(std::move(pieces));
  if (evaluate_bc(report.expr, s, report.partitions, anchor) != target)
    throw VerifyError("one-parameter expression does not re-evaluate to its set");
  return report;
}

SplitResult almost_convex_split(const Partition& r,
                                const std::optional<Partition>& coarsening) {
  SplitResult out;
  out.coarsening = coarsening ? *coarsening : convex_closure(r);
  if (!out.coarsening.is_convex())
    throw ValidationError("coarsening must be convex");
  if (!r.refines(out.coarsening))
    throw ValidationError("coarsening must be coarser than the partition");

  int max_colors = 0;
  std::vector<int> color_of(r.size(), -1);
  for (const auto& big : out.coarsening.blocks()) {
    std::vector<int> rblocks;  // r-blocks inside, ordered by minimum
    for (int x : big) {
      int rb = r.block_index_of(x);
      if (std::find(rblocks.begin(), rblocks.end(), rb) == rblocks.end())
        rblocks.push_back(rb);
    }
    max_colors = std::max(max_colors, static_cast<int>(rblocks.size()));
    for (int i = 0; i < static_cast<int>(rblocks.size()); ++i)
      for (int x : r.block(rblocks[i])) color_of[x] = i;
  }
  out.colors.assign(max_colors, {});
  for (int x = 0; x < r.size(); ++x) out.colors[color_of[x]].push_back(x);

  // Reconstruction: same coarse block and same color iff same r-block.
  for (int x = 0; x < r.size(); ++x)
    for (int y = 0; y < r.size(); ++y) {
      bool rebuilt = out.coarsening.same_block(x, y) && color_of[x] == color_of[y];
      if (rebuilt != r.same_block(x, y))
        throw VerifyError("color reconstruction does not match the partition");
    }
  return out;
}

}  // namespace ccel
