#pragma once

#include <optional>
#include <string_view>

#include "fqbasis/subset.hpp"

namespace fqbasis {

// True iff X + X = F_q. Always true when 2|X| > q.
bool cover_by_doubling(const FqSubset& x);

enum class SetKind { symmetric, antisymmetric };

std::string_view to_string(SetKind kind);

// A symmetric or antisymmetric subset S of A, together with the split
// A = unpaired ⊔ representatives ⊔ partners it was chosen from:
//   unpaired        = {a in A : -a not in A}
//   representatives = smaller-index member of each pair {a, -a} in A (and 0)
//   partners        = the other member of each such pair
struct RegularSubset {
  FqSubset subset;
  SetKind kind;
  FqSubset unpaired;
  FqSubset representatives;
  FqSubset partners;
};

// 3|S| >= 2|A|, relaxed to 3|S| >= 2|A| - 1 when |A| = 2 mod 3.
bool meets_regular_size_bound(std::size_t subset_size, std::size_t whole_size);

// Largest of the candidate sets partners ⊔ representatives (symmetric),
// unpaired ⊔ (representatives \ {0}) and unpaired ⊔ partners
// (antisymmetric), taking the first valid one on ties. Throws on empty A.
RegularSubset extract_regular_subset(const FqSubset& a);

// Either |B+B| >= 3|B|/2, or B lies in a coset b + G of G = Sym(B+B) with
// 3|B| > 2|G| and B + B = 2b + G.
struct Dichotomy {
  enum class Alternative { large_doubling, coset };
  Alternative alternative;
  FqSubset doubled;                   // B + B
  std::optional<FqSubset> group;      // coset alternative only
  std::optional<FieldElement> base;   // coset alternative only
};

std::string_view to_string(Dichotomy::Alternative alt);

// Requires |B| >= 2. Every witness relation of the coset alternative is
// recomputed before returning; a failure raises LemmaViolation.
Dichotomy dichotomy(const FqSubset& b);

// Kind of the coset c + G: symmetric iff 2c lies in G.
SetKind classify_coset(const FieldElement& c, const FqSubset& g);

}  // namespace fqbasis
