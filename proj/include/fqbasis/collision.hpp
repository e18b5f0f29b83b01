#pragma once

#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "fqbasis/subset.hpp"

namespace fqbasis {

using Rational = boost::rational<std::int64_t>;

// Representation counts of s = a + b*xi and s = a - b*xi over A x B.
struct CollisionProfile {
  FieldElement xi;
  std::vector<std::uint64_t> f_plus;
  std::vector<std::uint64_t> f_minus;
  std::uint64_t energy_plus = 0;
  std::uint64_t energy_minus = 0;

  // |A + xi B| and |A - xi B|.
  std::size_t support_plus() const;
  std::size_t support_minus() const;
};

// Throws PreconditionError if xi == 0 or either set is empty.
CollisionProfile collision_profile(const FqSubset& a, const FqSubset& b, const FieldElement& xi);

struct EnergyIdentityReport {
  std::uint64_t total = 0;     // sum over xi != 0 of energy_plus(xi)
  std::uint64_t expected = 0;  // |A||B|(q-1) + |A||B|(|A|-1)(|B|-1)
  bool equal = false;
};

EnergyIdentityReport energy_identity_check(const FqSubset& a, const FqSubset& b);

// |A||B|(q-1) / (|A||B| - |A| - |B| + q)
Rational sum_size_lower_bound(std::size_t size_a, std::size_t size_b, std::uint32_t q);

struct MinEnergyChoice {
  FieldElement xi;
  Rational bound;
  std::uint64_t energy = 0;
  std::size_t sum_size = 0;   // |A + xi B|
  std::size_t diff_size = 0;  // |A - xi B|
};

// The nonzero xi of least index minimizing the energy; both |A + xi B| and
// |A - xi B| are checked against sum_size_lower_bound (LemmaViolation if not).
MinEnergyChoice find_xi_min_energy(const FqSubset& a, const FqSubset& b);

struct HalfCoverChoice {
  FieldElement xi;
  std::size_t sum_size = 0;
  std::size_t diff_size = 0;
};

// The nonzero xi of least index with 2|A + xi B| > q and 2|A - xi B| > q.
// Requires |A||B| > q; LemmaViolation if the scan finds nothing.
HalfCoverChoice find_xi_half_cover(const FqSubset& a, const FqSubset& b);

// {(b1 - b2) a1 + (a2 - a3) b3}, computed as (B-B)A + (A-A)B.
FqSubset cross_difference_set(const FqSubset& a, const FqSubset& b);

// Two distinct pairs with a1 + b1 xi = a2 + b2 xi, plus S = (b1 - b2)(A + xi B).
struct CollisionWitness {
  FieldElement a1, b1, a2, b2;
  FqSubset scaled;
};

// Requires xi != 0 and |A + xi B| < |A||B|. Pairs are scanned in
// lexicographic (a, b) order; the first pair whose value repeats is the
// second witness, the earliest pair with that value the first.
CollisionWitness collision_witness(const FqSubset& a, const FqSubset& b, const FieldElement& xi);

}  // namespace fqbasis
