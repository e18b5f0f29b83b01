#include "fqbasis/collision.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "fqbasis/errors.hpp"

namespace fqbasis {
namespace {

void require_nonempty(const FqSubset& a, const FqSubset& b) {
  if (a.empty() || b.empty()) throw PreconditionError("sets must be nonempty");
  if (!a.field().same_as(b.field())) throw FieldMismatch();
}

std::uint64_t square_sum(const std::vector<std::uint64_t>& f) {
  std::uint64_t e = 0;
  for (auto v : f) e += v * v;
  return e;
}

std::size_t support(const std::vector<std::uint64_t>& f) {
  return static_cast<std::size_t>(std::count_if(f.begin(), f.end(), [](auto v) { return v > 0; }));
}

// energy_plus only; cheaper than a full profile when scanning every xi.
std::uint64_t energy_at(const Field& f, const std::vector<ElementIndex>& as,
                        const std::vector<ElementIndex>& bs, ElementIndex xi,
                        std::vector<std::uint64_t>& scratch) {
  std::fill(scratch.begin(), scratch.end(), 0);
  for (ElementIndex b : bs) {
    const ElementIndex bx = f.mul(b, xi);
    for (ElementIndex a : as) ++scratch[f.add(a, bx)];
  }
  return square_sum(scratch);
}

std::string sizes_text(const FqSubset& a, const FqSubset& b) {
  return "|A| = " + std::to_string(a.cardinality()) + ", |B| = " + std::to_string(b.cardinality()) +
         ", q = " + std::to_string(a.field().q());
}

}  // namespace

std::size_t CollisionProfile::support_plus() const { return support(f_plus); }
std::size_t CollisionProfile::support_minus() const { return support(f_minus); }

CollisionProfile collision_profile(const FqSubset& a, const FqSubset& b, const FieldElement& xi) {
  require_nonempty(a, b);
  if (!xi.field().same_as(a.field())) throw FieldMismatch();
  if (xi.is_zero()) throw PreconditionError("xi must be nonzero");
  const Field& f = a.field();
  CollisionProfile prof{xi, std::vector<std::uint64_t>(f.q(), 0), std::vector<std::uint64_t>(f.q(), 0), 0, 0};
  const auto as = a.members();
  b.for_each([&](ElementIndex bv) {
    const ElementIndex bx = f.mul(bv, xi.index());
    for (ElementIndex av : as) {
      ++prof.f_plus[f.add(av, bx)];
      ++prof.f_minus[f.sub(av, bx)];
    }
  });
  prof.energy_plus = square_sum(prof.f_plus);
  prof.energy_minus = square_sum(prof.f_minus);
  return prof;
}

EnergyIdentityReport energy_identity_check(const FqSubset& a, const FqSubset& b) {
  require_nonempty(a, b);
  const Field& f = a.field();
  const auto as = a.members();
  const auto bs = b.members();
  std::vector<std::uint64_t> scratch(f.q());
  EnergyIdentityReport r;
  for (ElementIndex xi = 1; xi < f.q(); ++xi) r.total += energy_at(f, as, bs, xi, scratch);
  const std::uint64_t na = as.size();
  const std::uint64_t nb = bs.size();
  r.expected = na * nb * (f.q() - 1) + na * nb * (na - 1) * (nb - 1);
  r.equal = r.total == r.expected;
  return r;
}

Rational sum_size_lower_bound(std::size_t size_a, std::size_t size_b, std::uint32_t q) {
  const auto na = static_cast<std::int64_t>(size_a);
  const auto nb = static_cast<std::int64_t>(size_b);
  // The denominator equals (|A|-1)(|B|-1) + q - 1, positive for q >= 2.
  return Rational(na * nb * (q - 1), na * nb - (na + nb) + q);
}

MinEnergyChoice find_xi_min_energy(const FqSubset& a, const FqSubset& b) {
  require_nonempty(a, b);
  const Field& f = a.field();
  const auto as = a.members();
  const auto bs = b.members();
  std::vector<std::uint64_t> scratch(f.q());
  ElementIndex best = 1;
  std::uint64_t best_energy = std::numeric_limits<std::uint64_t>::max();
  for (ElementIndex xi = 1; xi < f.q(); ++xi) {
    const std::uint64_t e = energy_at(f, as, bs, xi, scratch);
    if (e < best_energy) {
      best_energy = e;
      best = xi;
    }
  }
  const FieldElement xi = f.element(best);
  MinEnergyChoice choice{xi, sum_size_lower_bound(as.size(), bs.size(), f.q()), best_energy,
                         sumset(a, dilate(xi, b)).cardinality(), diffset(a, dilate(xi, b)).cardinality()};
  if (Rational(static_cast<std::int64_t>(choice.sum_size)) < choice.bound ||
      Rational(static_cast<std::int64_t>(choice.diff_size)) < choice.bound) {
    throw LemmaViolation("energy-minimizing xi = " + std::to_string(best) +
                         " misses the sumset lower bound (" + sizes_text(a, b) + ")");
  }
  return choice;
}

HalfCoverChoice find_xi_half_cover(const FqSubset& a, const FqSubset& b) {
  require_nonempty(a, b);
  const Field& f = a.field();
  if (std::uint64_t{a.cardinality()} * b.cardinality() <= f.q()) {
    throw PreconditionError("half-cover xi needs |A||B| > q (" + sizes_text(a, b) + ")");
  }
  for (ElementIndex xi = 1; xi < f.q(); ++xi) {
    const FqSubset scaled = dilate(f.element(xi), b);
    const std::size_t plus = sumset(a, scaled).cardinality();
    if (2 * plus <= f.q()) continue;
    const std::size_t minus = diffset(a, scaled).cardinality();
    if (2 * minus <= f.q()) continue;
    return HalfCoverChoice{f.element(xi), plus, minus};
  }
  throw LemmaViolation("no xi with |A + xi B| > q/2 and |A - xi B| > q/2 (" + sizes_text(a, b) + ")");
}

FqSubset cross_difference_set(const FqSubset& a, const FqSubset& b) {
  require_nonempty(a, b);
  return sumset(productset(diffset(b, b), a), productset(diffset(a, a), b));
}

CollisionWitness collision_witness(const FqSubset& a, const FqSubset& b, const FieldElement& xi) {
  require_nonempty(a, b);
  if (!xi.field().same_as(a.field())) throw FieldMismatch();
  if (xi.is_zero()) throw PreconditionError("xi must be nonzero");
  const Field& f = a.field();
  const FqSubset sum = sumset(a, dilate(xi, b));
  if (sum.cardinality() >= a.cardinality() * b.cardinality()) {
    throw PreconditionError("no collision: |A + xi B| = |A||B|");
  }
  constexpr std::uint64_t kUnseen = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> first(f.q(), kUnseen);  // packed (a << 32) | b
  const auto bs = b.members();
  for (ElementIndex av : a.members()) {
    for (ElementIndex bv : bs) {
      const ElementIndex s = f.add(av, f.mul(bv, xi.index()));
      if (first[s] == kUnseen) {
        first[s] = (std::uint64_t{av} << 32) | bv;
        continue;
      }
      const auto a1 = static_cast<ElementIndex>(first[s] >> 32);
      const auto b1 = static_cast<ElementIndex>(first[s] & 0xffffffffu);
      if (b1 == bv) throw LemmaViolation("colliding pairs share b but differ in a");
      const FieldElement diff = f.element(f.sub(b1, bv));
      CollisionWitness w{f.element(a1), f.element(b1), f.element(av), f.element(bv), dilate(diff, sum)};
      return w;
    }
  }
  throw LemmaViolation("pigeonhole collision not found");
}

}  // namespace fqbasis
