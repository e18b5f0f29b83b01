#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fqbasis/field.hpp"

namespace fqbasis {

// A subset of F_q stored as a characteristic bit-vector of length q.
class FqSubset {
 public:
  explicit FqSubset(FieldPtr field);

  static FqSubset full(FieldPtr field);
  static FqSubset singleton(FieldPtr field, ElementIndex x);
  static FqSubset from_indices(FieldPtr field, std::span<const ElementIndex> indices);
  static FqSubset from_indices(FieldPtr field, std::initializer_list<ElementIndex> indices);
  // Bit i of `mask` selects element i. Requires q <= 64.
  static FqSubset from_mask(FieldPtr field, std::uint64_t mask);

  const FieldPtr& field_ptr() const noexcept { return field_; }
  const Field& field() const noexcept { return *field_; }

  std::size_t cardinality() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  bool is_full() const noexcept { return count_ == field_->q(); }

  bool contains(ElementIndex x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1; }
  void insert(ElementIndex x);
  void erase(ElementIndex x);

  // Members in ascending index.
  std::vector<ElementIndex> members() const;
  ElementIndex min_member() const;

  template <class F>
  void for_each(F&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        fn(static_cast<ElementIndex>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  bool is_subset_of(const FqSubset& other) const;
  bool intersects(const FqSubset& other) const;

  FqSubset unite(const FqSubset& other) const;
  FqSubset intersect(const FqSubset& other) const;
  FqSubset minus(const FqSubset& other) const;

  // Orders subsets as the integers sum_{x in X} 2^x.
  std::strong_ordering compare_index(const FqSubset& other) const;

  friend bool operator==(const FqSubset& x, const FqSubset& y);

 private:
  void check_same_field(const FqSubset& other) const;

  FieldPtr field_;
  std::vector<std::uint64_t> words_;
  std::size_t count_ = 0;
};

FqSubset sumset(const FqSubset& x, const FqSubset& y);
FqSubset diffset(const FqSubset& x, const FqSubset& y);
FqSubset productset(const FqSubset& x, const FqSubset& y);
FqSubset dilate(const FieldElement& lambda, const FqSubset& x);
FqSubset negate(const FqSubset& x);
// x + X
FqSubset translate(const FieldElement& shift, const FqSubset& x);

// kX as the left fold ((X+X)+X)...; throws PreconditionError for k < 1.
FqSubset iterated_sum(int k, const FqSubset& x);
// X^k
FqSubset iterated_product(int k, const FqSubset& x);
// N(XY)
FqSubset n_fold_product_sum(int n, const FqSubset& x, const FqSubset& y);

bool is_symmetric(const FqSubset& x);
bool is_antisymmetric(const FqSubset& x);

// {h : h + X = X}. For X empty this is all of F_q.
FqSubset sym_group(const FqSubset& x);

bool is_additive_subgroup(const FqSubset& g);

// Every coset of G that meets X lies inside X. Throws if G is not a subgroup.
bool is_union_of_cosets(const FqSubset& x, const FqSubset& g);

struct KneserReport {
  std::int64_t lhs = 0;     // |X+Y|
  std::int64_t middle = 0;  // |X+H| + |Y+H| - |H|
  std::int64_t rhs = 0;     // |X| + |Y| - |H|
  std::int64_t stabilizer_size = 0;
  bool holds = false;
};

// H = Sym(X+Y). Throws PreconditionError on empty input.
KneserReport kneser_check(const FqSubset& x, const FqSubset& y);

}  // namespace fqbasis
