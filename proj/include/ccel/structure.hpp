#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccel/errors.hpp"

namespace ccel {

// Partition of {0..n-1}. Blocks are kept sorted by minimum element and each
// block's elements ascending, so two partitions are equal iff their block
// lists are equal.
class Partition {
public:
  Partition() = default;
  static Partition from_blocks(int size, std::vector<std::vector<int>> blocks);
  static Partition equality(int size);
  static Partition full(int size);

  int size() const { return size_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<int>& block(int i) const { return blocks_[i]; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int block_index_of(int element) const;
  bool same_block(int a, int b) const;
  // True when every block is a contiguous integer range.
  bool is_convex() const;

  bool operator==(const Partition& o) const {
    return size_ == o.size_ && blocks_ == o.blocks_;
  }
  bool operator!=(const Partition& o) const { return !(*this == o); }

  // True if every block of this partition is contained in one block of e.
  bool refines(const Partition& e) const;

private:
  int size_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_of_;
};

// A block of a named equivalence, identified by its minimum element.
struct ClassRef {
  std::string equiv;
  int min_element = 0;
  bool operator==(const ClassRef& o) const {
    return equiv == o.equiv && min_element == o.min_element;
  }
};

struct NamedPred {
  std::string name;
  std::vector<bool> members;  // size = domain size
};

struct NamedEquiv {
  std::string name;
  bool convex = false;
  Partition partition;
};

// Finite linearly ordered domain 0..size-1 with named unary predicates and
// named equivalence partitions. The equivalences "eq" (all singletons) and
// "full" (one block) are built in and always convex; declared names must not
// shadow them.
class FiniteCcelStructure {
public:
  static FiniteCcelStructure create(int size, std::vector<NamedPred> preds,
                                    std::vector<NamedEquiv> equivs);

  int size() const { return size_; }
  const std::vector<NamedPred>& preds() const { return preds_; }
  const std::vector<NamedEquiv>& equivs() const { return equivs_; }

  bool has_pred(const std::string& name) const;
  const std::vector<bool>& pred(const std::string& name) const;

  bool has_equiv(const std::string& name) const;  // includes eq/full
  const Partition& equiv(const std::string& name) const;
  bool equiv_convex(const std::string& name) const;

private:
  int size_ = 0;
  std::vector<NamedPred> preds_;
  std::vector<NamedEquiv> equivs_;
  Partition eq_, full_;
};

// Block shift within a convex partition: the block `shift` places after
// (before, for negative shifts) the block of `element`. Empty when no such
// block exists.
std::optional<int> successor_block(const Partition& p, int element, int shift);

// Named-equivalence wrapper over successor_block.
std::optional<ClassRef> class_successor(const FiniteCcelStructure& s,
                                        const std::string& equiv_name,
                                        int element, int shift);

// Finest convex partition coarsening r: hull every block, then merge
// overlapping hulls to a fixpoint.
Partition convex_closure(const Partition& r);

}  // namespace ccel
