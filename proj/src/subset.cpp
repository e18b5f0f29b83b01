#include "fqbasis/subset.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "fqbasis/errors.hpp"

namespace fqbasis {
namespace {

const FieldPtr& common_field(const FqSubset& x, const FqSubset& y) {
  if (!x.field().same_as(y.field())) throw FieldMismatch();
  return x.field_ptr();
}

template <class Op>
FqSubset combine(const FqSubset& x, const FqSubset& y, Op op) {
  FqSubset out(common_field(x, y));
  if (x.empty() || y.empty()) return out;
  const auto ys = y.members();
  x.for_each([&](ElementIndex a) {
    for (ElementIndex b : ys) out.insert(op(a, b));
  });
  return out;
}

}  // namespace

FqSubset::FqSubset(FieldPtr field) : field_(std::move(field)) {
  if (!field_) throw PreconditionError("subset needs a field");
  words_.assign((field_->q() + 63) / 64, 0);
}

FqSubset FqSubset::full(FieldPtr field) {
  FqSubset s(std::move(field));
  for (ElementIndex x = 0; x < s.field().q(); ++x) s.insert(x);
  return s;
}

FqSubset FqSubset::singleton(FieldPtr field, ElementIndex x) {
  FqSubset s(std::move(field));
  s.insert(x);
  return s;
}

FqSubset FqSubset::from_indices(FieldPtr field, std::span<const ElementIndex> indices) {
  FqSubset s(std::move(field));
  for (auto x : indices) s.insert(x);
  return s;
}

FqSubset FqSubset::from_indices(FieldPtr field, std::initializer_list<ElementIndex> indices) {
  return from_indices(std::move(field), std::span<const ElementIndex>(indices.begin(), indices.size()));
}

FqSubset FqSubset::from_mask(FieldPtr field, std::uint64_t mask) {
  FqSubset s(std::move(field));
  if (s.field().q() > 64) throw PreconditionError("bit mask subsets need q <= 64");
  if (s.field().q() < 64 && (mask >> s.field().q()) != 0) {
    throw PreconditionError("bit mask has bits beyond q");
  }
  s.words_[0] = mask;
  s.count_ = static_cast<std::size_t>(std::popcount(mask));
  return s;
}

void FqSubset::insert(ElementIndex x) {
  if (x >= field_->q()) {
    throw PreconditionError("element index " + std::to_string(x) + " out of range for q = " +
                            std::to_string(field_->q()));
  }
  std::uint64_t& w = words_[x >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (x & 63);
  if ((w & bit) == 0) {
    w |= bit;
    ++count_;
  }
}

void FqSubset::erase(ElementIndex x) {
  if (x >= field_->q()) return;
  std::uint64_t& w = words_[x >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (x & 63);
  if ((w & bit) != 0) {
    w &= ~bit;
    --count_;
  }
}

std::vector<ElementIndex> FqSubset::members() const {
  std::vector<ElementIndex> out;
  out.reserve(count_);
  for_each([&](ElementIndex x) { out.push_back(x); });
  return out;
}

ElementIndex FqSubset::min_member() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return static_cast<ElementIndex>(w * 64 + std::countr_zero(words_[w]));
  }
  throw PreconditionError("empty set has no least element");
}

void FqSubset::check_same_field(const FqSubset& other) const {
  if (!field_->same_as(*other.field_)) throw FieldMismatch();
}

bool FqSubset::is_subset_of(const FqSubset& other) const {
  check_same_field(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool FqSubset::intersects(const FqSubset& other) const {
  check_same_field(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

FqSubset FqSubset::unite(const FqSubset& other) const {
  check_same_field(other);
  FqSubset out(field_);
  out.count_ = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    out.words_[w] = words_[w] | other.words_[w];
    out.count_ += static_cast<std::size_t>(std::popcount(out.words_[w]));
  }
  return out;
}

FqSubset FqSubset::intersect(const FqSubset& other) const {
  check_same_field(other);
  FqSubset out(field_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    out.words_[w] = words_[w] & other.words_[w];
    out.count_ += static_cast<std::size_t>(std::popcount(out.words_[w]));
  }
  return out;
}

FqSubset FqSubset::minus(const FqSubset& other) const {
  check_same_field(other);
  FqSubset out(field_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    out.words_[w] = words_[w] & ~other.words_[w];
    out.count_ += static_cast<std::size_t>(std::popcount(out.words_[w]));
  }
  return out;
}

std::strong_ordering FqSubset::compare_index(const FqSubset& other) const {
  check_same_field(other);
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w] != other.words_[w]) return words_[w] <=> other.words_[w];
  }
  return std::strong_ordering::equal;
}

bool operator==(const FqSubset& x, const FqSubset& y) {
  return x.field_->same_as(*y.field_) && x.words_ == y.words_;
}

FqSubset sumset(const FqSubset& x, const FqSubset& y) {
  const Field& f = x.field();
  return combine(x, y, [&f](ElementIndex a, ElementIndex b) { return f.add(a, b); });
}

FqSubset diffset(const FqSubset& x, const FqSubset& y) {
  const Field& f = x.field();
  return combine(x, y, [&f](ElementIndex a, ElementIndex b) { return f.sub(a, b); });
}

FqSubset productset(const FqSubset& x, const FqSubset& y) {
  const Field& f = x.field();
  return combine(x, y, [&f](ElementIndex a, ElementIndex b) { return f.mul(a, b); });
}

FqSubset dilate(const FieldElement& lambda, const FqSubset& x) {
  if (!lambda.field().same_as(x.field())) throw FieldMismatch();
  FqSubset out(x.field_ptr());
  const Field& f = x.field();
  x.for_each([&](ElementIndex a) { out.insert(f.mul(lambda.index(), a)); });
  return out;
}

FqSubset negate(const FqSubset& x) {
  FqSubset out(x.field_ptr());
  const Field& f = x.field();
  x.for_each([&](ElementIndex a) { out.insert(f.neg(a)); });
  return out;
}

FqSubset translate(const FieldElement& shift, const FqSubset& x) {
  if (!shift.field().same_as(x.field())) throw FieldMismatch();
  FqSubset out(x.field_ptr());
  const Field& f = x.field();
  x.for_each([&](ElementIndex a) { out.insert(f.add(shift.index(), a)); });
  return out;
}

FqSubset iterated_sum(int k, const FqSubset& x) {
  if (k < 1) throw PreconditionError("iterated sum needs k >= 1");
  FqSubset acc = x;
  for (int i = 1; i < k; ++i) {
    if (acc.is_full()) break;
    acc = sumset(acc, x);
  }
  return acc;
}

FqSubset iterated_product(int k, const FqSubset& x) {
  if (k < 1) throw PreconditionError("iterated product needs k >= 1");
  FqSubset acc = x;
  for (int i = 1; i < k; ++i) acc = productset(acc, x);
  return acc;
}

FqSubset n_fold_product_sum(int n, const FqSubset& x, const FqSubset& y) {
  if (n < 1) throw PreconditionError("n-fold sum needs N >= 1");
  return iterated_sum(n, productset(x, y));
}

bool is_symmetric(const FqSubset& x) {
  const Field& f = x.field();
  bool ok = true;
  x.for_each([&](ElementIndex a) { ok = ok && x.contains(f.neg(a)); });
  return ok;
}

bool is_antisymmetric(const FqSubset& x) {
  const Field& f = x.field();
  bool ok = true;
  x.for_each([&](ElementIndex a) { ok = ok && !x.contains(f.neg(a)); });
  return ok;
}

FqSubset sym_group(const FqSubset& x) {
  if (x.empty()) return FqSubset::full(x.field_ptr());
  const Field& f = x.field();
  const auto xs = x.members();
  const ElementIndex anchor = xs.front();
  FqSubset out(x.field_ptr());
  // A stabilizing shift must carry the least member onto some member.
  for (ElementIndex target : xs) {
    const ElementIndex h = f.sub(target, anchor);
    const bool stabilizes = std::all_of(xs.begin(), xs.end(),
                                        [&](ElementIndex a) { return x.contains(f.add(h, a)); });
    if (stabilizes) out.insert(h);
  }
  return out;
}

bool is_additive_subgroup(const FqSubset& g) {
  if (!g.contains(0)) return false;
  const Field& f = g.field();
  const auto gs = g.members();
  for (ElementIndex a : gs) {
    for (ElementIndex b : gs) {
      if (!g.contains(f.add(a, b))) return false;
    }
  }
  return true;
}

bool is_union_of_cosets(const FqSubset& x, const FqSubset& g) {
  if (!x.field().same_as(g.field())) throw FieldMismatch();
  if (!is_additive_subgroup(g)) throw PreconditionError("G is not an additive subgroup");
  const Field& f = x.field();
  const auto gs = g.members();
  bool ok = true;
  x.for_each([&](ElementIndex a) {
    for (ElementIndex h : gs) ok = ok && x.contains(f.add(a, h));
  });
  return ok;
}

KneserReport kneser_check(const FqSubset& x, const FqSubset& y) {
  if (x.empty() || y.empty()) throw PreconditionError("Kneser check needs nonempty sets");
  const FqSubset sum = sumset(x, y);
  const FqSubset h = sym_group(sum);
  const auto xh = static_cast<std::int64_t>(sumset(x, h).cardinality());
  const auto yh = static_cast<std::int64_t>(sumset(y, h).cardinality());
  KneserReport r;
  r.stabilizer_size = static_cast<std::int64_t>(h.cardinality());
  r.lhs = static_cast<std::int64_t>(sum.cardinality());
  r.middle = xh + yh - r.stabilizer_size;
  r.rhs = static_cast<std::int64_t>(x.cardinality() + y.cardinality()) - r.stabilizer_size;
  r.holds = r.lhs >= r.middle && r.middle >= r.rhs;
  return r;
}

}  // namespace fqbasis
