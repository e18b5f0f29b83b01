#pragma once

#include <cstdint>

#include "fqbasis/subset.hpp"

namespace fqbasis {

// Pairs with |A||B| = q for which no N(AB) is all of F_q.

struct SetPair {
  FqSubset a;
  FqSubset b;
};

// A = F_q, B = {0}.
SetPair trivial_counterexample(const FieldPtr& field);

// A = B = the subfield of order sqrt(q), i.e. the fixed points of
// x -> x^(p^(m/2)). Throws PreconditionError when m is odd.
SetPair subfield_counterexample(const FieldPtr& field);

struct BoxCounterexample {
  FieldPtr field;
  FieldElement generator;  // canonical primitive element
  FqSubset a;              // F_p-span of 1, g, ..., g^(k-1)
  FqSubset b;              // F_p-span of 1, g, ..., g^(l-1)
  FqSubset c;              // F_p-span of 1, g, ..., g^(m-2)
};

// F_p-span of g^0..g^(terms-1).
FqSubset power_span(const FieldElement& g, std::uint32_t terms, const FieldPtr& field);

// Requires k, l >= 1 and k + l = m. Verifies |A||B| = q, AB inside C,
// C + C = C and C != F_q before returning; a failure raises LemmaViolation.
BoxCounterexample box_counterexample(std::uint32_t p, std::uint32_t m, std::uint32_t k, std::uint32_t l);

}  // namespace fqbasis
