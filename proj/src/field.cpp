#include "fqbasis/field.hpp"

#include <string>

#include "fqbasis/errors.hpp"

namespace fqbasis {
namespace {

constexpr std::uint32_t kAddTableMaxOrder = 1024;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Remainder of `num` modulo the monic `den`, coefficients mod p.
std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> num,
                                    std::span<const std::uint32_t> den,
                                    std::uint32_t p) {
  const std::size_t dd = den.size() - 1;
  while (num.size() > dd) {
    const std::uint64_t lead = num.back();
    const std::size_t shift = num.size() - 1 - dd;
    if (lead != 0) {
      for (std::size_t i = 0; i < dd; ++i) {
        const std::uint64_t t = (lead * den[i]) % p;
        num[shift + i] = static_cast<std::uint32_t>((num[shift + i] + p - t) % p);
      }
    }
    num.pop_back();
  }
  return num;
}

bool all_zero(const std::vector<std::uint32_t>& v) {
  for (auto c : v) {
    if (c != 0) return false;
  }
  return true;
}

std::uint64_t checked_power(std::uint32_t p, std::uint32_t m, std::uint64_t bound) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > bound) {
      throw PreconditionError("field order " + std::to_string(p) + "^" + std::to_string(m) +
                              " exceeds bound " + std::to_string(bound));
    }
  }
  return q;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::span<const std::uint32_t> coeffs, std::uint32_t p) {
  if (coeffs.size() < 2 || coeffs.back() != 1) return false;
  const std::size_t degree = coeffs.size() - 1;
  // Trial division by every monic polynomial of degree 1..degree/2.
  for (std::size_t d = 1; d <= degree / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    std::vector<std::uint32_t> divisor(d + 1, 0);
    divisor[d] = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      std::vector<std::uint32_t> num(coeffs.begin(), coeffs.end());
      if (all_zero(poly_rem(std::move(num), divisor, p))) return false;
    }
  }
  return true;
}

FieldSpec canonical_field_spec(std::uint32_t p, std::uint32_t m, std::uint64_t order_bound) {
  if (!is_prime(p)) throw PreconditionError("characteristic " + std::to_string(p) + " is not prime");
  if (m < 1) throw PreconditionError("extension degree must be at least 1");
  const std::uint64_t q = checked_power(p, m, order_bound);

  FieldSpec spec{p, m, std::vector<std::uint32_t>(m + 1, 0), static_cast<std::uint32_t>(q)};
  spec.modulus[m] = 1;
  if (m == 1) return spec;  // the polynomial x

  for (std::uint64_t code = 0; code < q; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < m; ++i) {
      spec.modulus[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (is_irreducible(spec.modulus, p)) return spec;
  }
  throw LemmaViolation("no irreducible polynomial of degree " + std::to_string(m) +
                       " over F_" + std::to_string(p));
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  if (!is_prime(spec_.p)) throw PreconditionError("characteristic is not prime");
  if (spec_.m < 1 || spec_.modulus.size() != spec_.m + 1) {
    throw PreconditionError("modulus degree does not match extension degree");
  }
  for (auto c : spec_.modulus) {
    if (c >= spec_.p) throw PreconditionError("modulus coefficient out of range");
  }
  if (!is_irreducible(spec_.modulus, spec_.p)) throw PreconditionError("modulus is not monic irreducible");
  const std::uint64_t q = checked_power(spec_.p, spec_.m, std::uint64_t{1} << 31);
  if (spec_.q != 0 && spec_.q != q) throw PreconditionError("cached order disagrees with p^m");
  spec_.q = static_cast<std::uint32_t>(q);

  place_.resize(spec_.m);
  std::uint32_t w = 1;
  for (auto& pl : place_) {
    pl = w;
    w *= spec_.p;
  }

  neg_table_.resize(spec_.q);
  for (ElementIndex x = 0; x < spec_.q; ++x) {
    ElementIndex r = 0;
    ElementIndex rest = x;
    for (std::uint32_t i = 0; i < spec_.m; ++i) {
      const std::uint32_t d = rest % spec_.p;
      rest /= spec_.p;
      r += ((spec_.p - d) % spec_.p) * place_[i];
    }
    neg_table_[x] = r;
  }

  if (spec_.q <= kAddTableMaxOrder) {
    std::vector<std::uint16_t> table(std::size_t{spec_.q} * spec_.q);
    for (ElementIndex x = 0; x < spec_.q; ++x) {
      for (ElementIndex y = 0; y < spec_.q; ++y) {
        table[std::size_t{x} * spec_.q + y] = static_cast<std::uint16_t>(add_digits(x, y));
      }
    }
    add_table_ = std::move(table);
  }

  primitive_ = find_primitive_element(*this).index();
  exp_.resize(spec_.q - 1);
  log_.assign(spec_.q, 0);
  ElementIndex g = 1;
  for (std::uint32_t e = 0; e + 1 < spec_.q; ++e) {
    exp_[e] = g;
    log_[g] = e;
    g = poly_mul(g, primitive_);
  }
}

ElementIndex Field::add_digits(ElementIndex x, ElementIndex y) const noexcept {
  if (spec_.p == 2) return x ^ y;
  if (spec_.m == 1) return (x + y) % spec_.p;
  ElementIndex r = 0;
  for (std::uint32_t i = 0; i < spec_.m; ++i) {
    const std::uint32_t d = (x % spec_.p + y % spec_.p) % spec_.p;
    x /= spec_.p;
    y /= spec_.p;
    r += d * place_[i];
  }
  return r;
}

ElementIndex Field::inv(ElementIndex x) const {
  if (x == 0) throw DivisionByZero();
  const std::uint32_t e = log_[x] == 0 ? 0 : (spec_.q - 1) - log_[x];
  return exp_[e];
}

ElementIndex Field::pow(ElementIndex x, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (x == 0) return 0;
  const std::uint64_t k = (std::uint64_t{log_[x]} * (e % (spec_.q - 1))) % (spec_.q - 1);
  return exp_[k];
}

ElementIndex Field::poly_mul(ElementIndex x, ElementIndex y) const {
  const auto cx = coeffs(x);
  const auto cy = coeffs(y);
  std::vector<std::uint32_t> prod(2 * spec_.m - 1, 0);
  for (std::uint32_t i = 0; i < spec_.m; ++i) {
    if (cx[i] == 0) continue;
    for (std::uint32_t j = 0; j < spec_.m; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{cx[i]} * cy[j]) % spec_.p);
    }
  }
  auto rem = poly_rem(std::move(prod), spec_.modulus, spec_.p);
  rem.resize(spec_.m, 0);
  return index_of(rem);
}

ElementIndex Field::poly_pow(ElementIndex x, std::uint64_t e) const {
  ElementIndex result = 1;
  ElementIndex base = x;
  while (e > 0) {
    if (e & 1) result = poly_mul(result, base);
    e >>= 1;
    if (e > 0) base = poly_mul(base, base);
  }
  return result;
}

std::vector<std::uint32_t> Field::coeffs(ElementIndex x) const {
  std::vector<std::uint32_t> out(spec_.m);
  for (auto& c : out) {
    c = x % spec_.p;
    x /= spec_.p;
  }
  return out;
}

ElementIndex Field::index_of(std::span<const std::uint32_t> c) const {
  if (c.size() != spec_.m) throw PreconditionError("coordinate vector has wrong length");
  ElementIndex r = 0;
  for (std::uint32_t i = 0; i < spec_.m; ++i) {
    if (c[i] >= spec_.p) throw PreconditionError("coordinate out of range");
    r += c[i] * place_[i];
  }
  return r;
}

FieldElement Field::element(ElementIndex x) const { return FieldElement(*this, x); }
FieldElement Field::zero() const { return FieldElement(*this, 0); }
FieldElement Field::one() const { return FieldElement(*this, 1); }

FieldPtr make_field(std::uint32_t p, std::uint32_t m, std::uint64_t order_bound) {
  return std::make_shared<const Field>(canonical_field_spec(p, m, order_bound));
}

FieldElement::FieldElement(const Field& field, ElementIndex index) : field_(&field), index_(index) {
  if (index >= field.q()) {
    throw PreconditionError("element index " + std::to_string(index) + " out of range for q = " +
                            std::to_string(field.q()));
  }
}

namespace {

const Field& common_field(const FieldElement& x, const FieldElement& y) {
  if (!x.field().same_as(y.field())) throw FieldMismatch();
  return x.field();
}

}  // namespace

FieldElement add(const FieldElement& x, const FieldElement& y) {
  const Field& f = common_field(x, y);
  return f.element(f.add(x.index(), y.index()));
}

FieldElement sub(const FieldElement& x, const FieldElement& y) {
  const Field& f = common_field(x, y);
  return f.element(f.sub(x.index(), y.index()));
}

FieldElement neg(const FieldElement& x) { return x.field().element(x.field().neg(x.index())); }

FieldElement mul(const FieldElement& x, const FieldElement& y) {
  const Field& f = common_field(x, y);
  return f.element(f.mul(x.index(), y.index()));
}

FieldElement inv(const FieldElement& x) { return x.field().element(x.field().inv(x.index())); }

FieldElement div(const FieldElement& x, const FieldElement& y) {
  const Field& f = common_field(x, y);
  return f.element(f.div(x.index(), y.index()));
}

FieldElement pow(const FieldElement& x, std::uint64_t e) {
  return x.field().element(x.field().pow(x.index(), e));
}

FieldElement find_primitive_element(const Field& field) {
  const std::uint64_t order = field.q() - 1;
  const auto factors = prime_factors(order);
  for (ElementIndex g = 1; g < field.q(); ++g) {
    bool generator = true;
    for (auto r : factors) {
      if (field.poly_pow(g, order / r) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return field.element(g);
  }
  throw LemmaViolation("multiplicative group has no generator");
}

}  // namespace fqbasis
