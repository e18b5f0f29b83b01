#include "fqbasis/structure.hpp"

#include <array>
#include <string>

#include "fqbasis/errors.hpp"

namespace fqbasis {

bool cover_by_doubling(const FqSubset& x) { return sumset(x, x).is_full(); }

std::string_view to_string(SetKind kind) {
  return kind == SetKind::symmetric ? "symmetric" : "antisymmetric";
}

std::string_view to_string(Dichotomy::Alternative alt) {
  return alt == Dichotomy::Alternative::large_doubling ? "large_doubling" : "coset";
}

bool meets_regular_size_bound(std::size_t subset_size, std::size_t whole_size) {
  const std::size_t slack = whole_size % 3 == 2 ? 1 : 0;
  return 3 * subset_size + slack >= 2 * whole_size;
}

RegularSubset extract_regular_subset(const FqSubset& a) {
  if (a.empty()) throw PreconditionError("cannot extract from an empty set");
  const Field& f = a.field();
  FqSubset unpaired(a.field_ptr());
  FqSubset reps(a.field_ptr());
  FqSubset partners(a.field_ptr());
  a.for_each([&](ElementIndex x) {
    const ElementIndex nx = f.neg(x);
    if (!a.contains(nx)) {
      unpaired.insert(x);
    } else if (x <= nx) {
      reps.insert(x);
    } else {
      partners.insert(x);
    }
  });

  FqSubset nonzero_reps = reps;
  nonzero_reps.erase(0);
  struct Candidate {
    FqSubset set;
    SetKind kind;
  };
  const std::array<Candidate, 3> candidates{{
      {reps.unite(partners), SetKind::symmetric},
      {unpaired.unite(nonzero_reps), SetKind::antisymmetric},
      {unpaired.unite(partners), SetKind::antisymmetric},
  }};

  // In characteristic 2 every pair {a, -a} is a singleton, so the
  // antisymmetric candidates can fail their predicate; skip those.
  const Candidate* best = nullptr;
  for (const auto& c : candidates) {
    const bool valid = c.kind == SetKind::symmetric ? is_symmetric(c.set) : is_antisymmetric(c.set);
    if (!valid) continue;
    if (best == nullptr || c.set.cardinality() > best->set.cardinality()) best = &c;
  }
  if (best == nullptr || !meets_regular_size_bound(best->set.cardinality(), a.cardinality())) {
    throw LemmaViolation("no symmetric or antisymmetric subset of size >= 2|A|/3 (|A| = " +
                         std::to_string(a.cardinality()) + ")");
  }
  return RegularSubset{best->set, best->kind, unpaired, reps, partners};
}

Dichotomy dichotomy(const FqSubset& b) {
  if (b.cardinality() < 2) throw PreconditionError("dichotomy needs |B| >= 2");
  const Field& f = b.field();
  FqSubset doubled = sumset(b, b);
  if (2 * doubled.cardinality() >= 3 * b.cardinality()) {
    return Dichotomy{Dichotomy::Alternative::large_doubling, std::move(doubled), std::nullopt, std::nullopt};
  }
  FqSubset g = sym_group(doubled);
  const FieldElement base = f.element(b.min_member());
  const FieldElement twice = base + base;
  const bool inside = b.is_subset_of(translate(base, g));
  const bool dense = 3 * b.cardinality() > 2 * g.cardinality();
  const bool coset = doubled == translate(twice, g);
  if (!inside || !dense || !coset) {
    throw LemmaViolation("small doubling without coset structure (|B| = " + std::to_string(b.cardinality()) +
                         ", |B+B| = " + std::to_string(doubled.cardinality()) +
                         ", |G| = " + std::to_string(g.cardinality()) + ")");
  }
  return Dichotomy{Dichotomy::Alternative::coset, std::move(doubled), std::move(g), base};
}

SetKind classify_coset(const FieldElement& c, const FqSubset& g) {
  if (!c.field().same_as(g.field())) throw FieldMismatch();
  if (!is_additive_subgroup(g)) throw PreconditionError("G is not an additive subgroup");
  return g.contains((c + c).index()) ? SetKind::symmetric : SetKind::antisymmetric;
}

}  // namespace fqbasis
