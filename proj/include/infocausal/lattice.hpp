#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace infocausal {

/// A subset of {0, ..., 63} stored as a bit mask.
///
/// Serves both as a lattice element (a join of ground observations, with
/// join = union, meet = intersection, bottom = empty set) and as a node set
/// in graph code. Iteration and members() always yield ascending indices,
/// which is the canonical sorted-index-set form.
class IndexSet {
 public:
  static constexpr std::size_t kCapacity = 64;

  constexpr IndexSet() = default;
  constexpr explicit IndexSet(std::uint64_t mask) : mask_(mask) {}
  IndexSet(std::initializer_list<std::size_t> indices);

  static IndexSet single(std::size_t index);
  /// {0, ..., n-1}
  static IndexSet range(std::size_t n);
  static IndexSet from_indices(const std::vector<std::size_t>& indices);

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(mask_));
  }
  bool contains(std::size_t index) const {
    return index < kCapacity && ((mask_ >> index) & 1U) != 0;
  }
  constexpr bool subset_of(IndexSet other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr bool disjoint(IndexSet other) const {
    return (mask_ & other.mask_) == 0;
  }
  /// Largest index + 1, or 0 when empty.
  std::size_t span() const {
    return mask_ == 0 ? 0 : kCapacity - static_cast<std::size_t>(std::countl_zero(mask_));
  }
  /// Smallest member; undefined on the empty set.
  std::size_t first() const { return static_cast<std::size_t>(std::countr_zero(mask_)); }

  IndexSet with(std::size_t index) const { return IndexSet(mask_ | single(index).mask_); }
  IndexSet without(std::size_t index) const { return IndexSet(mask_ & ~single(index).mask_); }

  constexpr IndexSet join(IndexSet other) const { return IndexSet(mask_ | other.mask_); }
  constexpr IndexSet meet(IndexSet other) const { return IndexSet(mask_ & other.mask_); }
  constexpr IndexSet minus(IndexSet other) const { return IndexSet(mask_ & ~other.mask_); }

  std::vector<std::size_t> members() const;
  std::string to_string() const;

  friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return a.join(b); }
  friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return a.meet(b); }
  friend constexpr bool operator==(IndexSet a, IndexSet b) = default;
  /// Mask order; used only for deterministic container ordering.
  friend constexpr bool operator<(IndexSet a, IndexSet b) { return a.mask_ < b.mask_; }

  class Iterator {
   public:
    using value_type = std::size_t;
    using difference_type = std::ptrdiff_t;
    constexpr Iterator() = default;
    constexpr explicit Iterator(std::uint64_t rest) : rest_(rest) {}
    std::size_t operator*() const { return static_cast<std::size_t>(std::countr_zero(rest_)); }
    Iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    Iterator operator++(int) {
      Iterator old = *this;
      ++*this;
      return old;
    }
    friend constexpr bool operator==(Iterator a, Iterator b) = default;

   private:
    std::uint64_t rest_ = 0;
  };
  Iterator begin() const { return Iterator(mask_); }
  Iterator end() const { return Iterator(0); }

 private:
  std::uint64_t mask_ = 0;
};

using Element = IndexSet;
using NodeSet = IndexSet;

/// Calls fn(subset) for every subset of `of`, in increasing mask order.
void for_each_subset(IndexSet of, const std::function<void(IndexSet)>& fn);

/// All subsets of `pool` with exactly `k` members, ordered lexicographically by
/// their sorted member lists.
std::vector<IndexSet> subsets_of_size(IndexSet pool, std::size_t k);

/// Ordered list of unique observation labels with stable indices.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t index) const;
  std::size_t index_of(const std::string& label) const;
  const std::vector<std::string>& labels() const { return labels_; }
  IndexSet all() const { return IndexSet::range(labels_.size()); }

  /// Appends a label and returns its index.
  std::size_t add(std::string label);

 private:
  std::vector<std::string> labels_;
};

}  // namespace infocausal

template <>
struct std::hash<infocausal::IndexSet> {
  std::size_t operator()(infocausal::IndexSet s) const noexcept {
    return std::hash<std::uint64_t>{}(s.mask());
  }
};
