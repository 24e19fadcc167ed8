#include "ccel/structure.hpp"

#include <algorithm>
#include <set>

namespace ccel {

Partition Partition::from_blocks(int size, std::vector<std::vector<int>> blocks) {
  if (size <= 0) throw ValidationError("domain size must be positive");
  std::vector<int> owner(size, -1);
  for (auto& b : blocks) {
    if (b.empty()) throw ValidationError("empty block in partition");
    std::sort(b.begin(), b.end());
    for (int e : b) {
      if (e < 0 || e >= size)
        throw ValidationError("element " + std::to_string(e) + " out of range 0.." +
                              std::to_string(size - 1));
      if (owner[e] != -1)
        throw ValidationError("overlapping or incomplete partition: element " +
                              std::to_string(e) + " occurs twice");
      owner[e] = 1;
    }
  }
  for (int e = 0; e < size; ++e)
    if (owner[e] == -1)
      throw ValidationError("overlapping or incomplete partition: element " +
                            std::to_string(e) + " missing");
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  Partition p;
  p.size_ = size;
  p.blocks_ = std::move(blocks);
  p.block_of_.assign(size, 0);
  for (int i = 0; i < p.block_count(); ++i)
    for (int e : p.blocks_[i]) p.block_of_[e] = i;
  return p;
}

Partition Partition::equality(int size) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(size);
  for (int e = 0; e < size; ++e) blocks.push_back({e});
  return from_blocks(size, std::move(blocks));
}

Partition Partition::full(int size) {
  std::vector<int> all(size);
  for (int e = 0; e < size; ++e) all[e] = e;
  return from_blocks(size, {all});
}

int Partition::block_index_of(int element) const {
  if (element < 0 || element >= size_)
    throw ValidationError("element out of range");
  return block_of_[element];
}

bool Partition::same_block(int a, int b) const {
  return block_index_of(a) == block_index_of(b);
}

bool Partition::is_convex() const {
  for (const auto& b : blocks_)
    if (b.back() - b.front() + 1 != static_cast<int>(b.size())) return false;
  return true;
}

bool Partition::refines(const Partition& e) const {
  if (size_ != e.size()) return false;
  for (const auto& b : blocks_) {
    int target = e.block_index_of(b.front());
    for (int x : b)
      if (e.block_index_of(x) != target) return false;
  }
  return true;
}

FiniteCcelStructure FiniteCcelStructure::create(int size,
                                                std::vector<NamedPred> preds,
                                                std::vector<NamedEquiv> equivs) {
  if (size <= 0) throw ValidationError("domain size must be positive");
  FiniteCcelStructure s;
  s.size_ = size;
  std::set<std::string> names;
  for (auto& p : preds) {
    if (p.name == "eq" || p.name == "full")
      throw ValidationError("name '" + p.name + "' is reserved");
    if (!names.insert(p.name).second)
      throw ValidationError("duplicate name '" + p.name + "'");
    if (static_cast<int>(p.members.size()) != size)
      throw ValidationError("predicate '" + p.name + "' has wrong domain size");
  }
  for (auto& e : equivs) {
    if (e.name == "eq" || e.name == "full")
      throw ValidationError("name '" + e.name + "' is reserved");
    if (!names.insert(e.name).second)
      throw ValidationError("duplicate name '" + e.name + "'");
    if (e.partition.size() != size)
      throw ValidationError("equivalence '" + e.name + "' has wrong domain size");
    if (e.convex && !e.partition.is_convex())
      throw ValidationError("non-contiguous convex block in equivalence '" +
                            e.name + "'");
  }
  s.preds_ = std::move(preds);
  s.equivs_ = std::move(equivs);
  s.eq_ = Partition::equality(size);
  s.full_ = Partition::full(size);
  return s;
}

bool FiniteCcelStructure::has_pred(const std::string& name) const {
  for (const auto& p : preds_)
    if (p.name == name) return true;
  return false;
}

const std::vector<bool>& FiniteCcelStructure::pred(const std::string& name) const {
  for (const auto& p : preds_)
    if (p.name == name) return p.members;
  throw EvalError("unknown predicate '" + name + "'");
}

bool FiniteCcelStructure::has_equiv(const std::string& name) const {
  if (name == "eq" || name == "full") return true;
  for (const auto& e : equivs_)
    if (e.name == name) return true;
  return false;
}

const Partition& FiniteCcelStructure::equiv(const std::string& name) const {
  if (name == "eq") return eq_;
  if (name == "full") return full_;
  for (const auto& e : equivs_)
    if (e.name == name) return e.partition;
  throw EvalError("unknown equivalence '" + name + "'");
}

bool FiniteCcelStructure::equiv_convex(const std::string& name) const {
  if (name == "eq" || name == "full") return true;
  for (const auto& e : equivs_)
    if (e.name == name) return e.convex;
  throw EvalError("unknown equivalence '" + name + "'");
}

std::optional<int> successor_block(const Partition& p, int element, int shift) {
  if (!p.is_convex())
    throw ValidationError("successor blocks require a convex partition");
  int idx = p.block_index_of(element) + shift;
  if (idx < 0 || idx >= p.block_count()) return std::nullopt;
  return idx;
}

std::optional<ClassRef> class_successor(const FiniteCcelStructure& s,
                                        const std::string& equiv_name,
                                        int element, int shift) {
  if (!s.has_equiv(equiv_name))
    throw EvalError("unknown equivalence '" + equiv_name + "'");
  if (!s.equiv_convex(equiv_name))
    throw ValidationError("equivalence '" + equiv_name + "' is not convex");
  const Partition& p = s.equiv(equiv_name);
  auto idx = successor_block(p, element, shift);
  if (!idx) return std::nullopt;
  return ClassRef{equiv_name, p.block(*idx).front()};
}

Partition convex_closure(const Partition& r) {
  struct Range {
    int lo, hi;
  };
  std::vector<Range> ranges;
  ranges.reserve(r.block_count());
  for (const auto& b : r.blocks()) ranges.push_back({b.front(), b.back()});
  std::sort(ranges.begin(), ranges.end(),
            [](const Range& a, const Range& b) { return a.lo < b.lo; });
  std::vector<Range> merged;
  for (const Range& cur : ranges) {
    if (!merged.empty() && cur.lo <= merged.back().hi)
      merged.back().hi = std::max(merged.back().hi, cur.hi);
    else
      merged.push_back(cur);
  }
  std::vector<std::vector<int>> blocks;
  for (const Range& m : merged) {
    std::vector<int> b;
    for (int e = m.lo; e <= m.hi; ++e) b.push_back(e);
    blocks.push_back(std::move(b));
  }
  return Partition::from_blocks(r.size(), std::move(blocks));
}

}  // namespace ccel
