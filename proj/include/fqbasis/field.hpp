#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace fqbasis {

// Canonical index of an element: sum of c_i * p^i over its power-basis
// coordinates c_0..c_{m-1}.
using ElementIndex = std::uint32_t;

inline constexpr std::uint64_t kDefaultOrderBound = std::uint64_t{1} << 16;

// The ambient field F_{p^m}. `modulus` holds c_0..c_m of a monic irreducible
// polynomial of degree m; for m == 1 it is the polynomial x.
struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  std::vector<std::uint32_t> modulus;
  std::uint32_t q = 0;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n);

// True iff the monic polynomial `coeffs` (c_0..c_d, c_d == 1) has no monic
// factor of degree 1..d/2 over F_p.
bool is_irreducible(std::span<const std::uint32_t> coeffs, std::uint32_t p);

// Smallest monic irreducible of degree m under the ordering by
// sum c_i p^i (i < m). Throws PreconditionError on non-prime p, m < 1, or
// p^m > order_bound.
FieldSpec canonical_field_spec(std::uint32_t p, std::uint32_t m,
                               std::uint64_t order_bound = kDefaultOrderBound);

class FieldElement;

// Arithmetic in F_q on canonical indices. Immutable after construction and
// shared through FieldPtr; all tables are built once in the constructor.
class Field {
 public:
  // Validates the spec (prime p, monic irreducible modulus of degree m).
  explicit Field(FieldSpec spec);

  const FieldSpec& spec() const noexcept { return spec_; }
  std::uint32_t p() const noexcept { return spec_.p; }
  std::uint32_t m() const noexcept { return spec_.m; }
  std::uint32_t q() const noexcept { return spec_.q; }

  ElementIndex add(ElementIndex x, ElementIndex y) const noexcept {
    if (!add_table_.empty()) return add_table_[std::size_t{x} * spec_.q + y];
    return add_digits(x, y);
  }
  ElementIndex neg(ElementIndex x) const noexcept { return neg_table_[x]; }
  ElementIndex sub(ElementIndex x, ElementIndex y) const noexcept {
    return add(x, neg_table_[y]);
  }
  ElementIndex mul(ElementIndex x, ElementIndex y) const noexcept {
    if (x == 0 || y == 0) return 0;
    std::uint32_t e = log_[x] + log_[y];
    if (e >= spec_.q - 1) e -= spec_.q - 1;
    return exp_[e];
  }
  ElementIndex inv(ElementIndex x) const;
  ElementIndex div(ElementIndex x, ElementIndex y) const { return mul(x, inv(y)); }
  ElementIndex pow(ElementIndex x, std::uint64_t e) const noexcept;

  // Schoolbook product reduced modulo the modulus. Independent of the
  // log/exp tables; used to build them.
  ElementIndex poly_mul(ElementIndex x, ElementIndex y) const;
  ElementIndex poly_pow(ElementIndex x, std::uint64_t e) const;

  std::vector<std::uint32_t> coeffs(ElementIndex x) const;
  ElementIndex index_of(std::span<const std::uint32_t> coeffs) const;

  FieldElement element(ElementIndex x) const;
  FieldElement zero() const;
  FieldElement one() const;

  // Smallest-index generator of F_q^*, found at construction.
  ElementIndex primitive_index() const noexcept { return primitive_; }
  // Discrete log base the primitive element; x must be nonzero.
  std::uint32_t log(ElementIndex x) const noexcept { return log_[x]; }

  bool same_as(const Field& other) const noexcept {
    return this == &other || spec_ == other.spec_;
  }

 private:
  ElementIndex add_digits(ElementIndex x, ElementIndex y) const noexcept;

  FieldSpec spec_;
  std::vector<std::uint32_t> place_;  // p^i
  std::vector<std::uint16_t> add_table_;
  std::vector<ElementIndex> neg_table_;
  std::vector<ElementIndex> exp_;
  std::vector<std::uint32_t> log_;
  ElementIndex primitive_ = 1;
};

using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_field(std::uint32_t p, std::uint32_t m,
                    std::uint64_t order_bound = kDefaultOrderBound);

// One element of a field. Holds a non-owning reference to its field, so the
// FieldPtr it came from must outlive it.
class FieldElement {
 public:
  FieldElement(const Field& field, ElementIndex index);

  const Field& field() const noexcept { return *field_; }
  ElementIndex index() const noexcept { return index_; }
  std::vector<std::uint32_t> coeffs() const { return field_->coeffs(index_); }
  bool is_zero() const noexcept { return index_ == 0; }

  friend bool operator==(const FieldElement& x, const FieldElement& y) noexcept {
    return x.index_ == y.index_ && x.field_->same_as(*y.field_);
  }

 private:
  const Field* field_;
  ElementIndex index_;
};

FieldElement add(const FieldElement& x, const FieldElement& y);
FieldElement sub(const FieldElement& x, const FieldElement& y);
FieldElement neg(const FieldElement& x);
FieldElement mul(const FieldElement& x, const FieldElement& y);
FieldElement inv(const FieldElement& x);
FieldElement div(const FieldElement& x, const FieldElement& y);
FieldElement pow(const FieldElement& x, std::uint64_t e);

inline FieldElement operator+(const FieldElement& x, const FieldElement& y) { return add(x, y); }
inline FieldElement operator-(const FieldElement& x, const FieldElement& y) { return sub(x, y); }
inline FieldElement operator-(const FieldElement& x) { return neg(x); }
inline FieldElement operator*(const FieldElement& x, const FieldElement& y) { return mul(x, y); }
inline FieldElement operator/(const FieldElement& x, const FieldElement& y) { return div(x, y); }

// Scans nonzero elements in ascending index and returns the first whose
// multiplicative order is q-1. Uses schoolbook arithmetic only.
FieldElement find_primitive_element(const Field& field);

}  // namespace fqbasis
