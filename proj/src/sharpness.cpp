#include "fqbasis/sharpness.hpp"

#include <string>

#include "fqbasis/errors.hpp"

namespace fqbasis {

SetPair trivial_counterexample(const FieldPtr& field) {
  return {FqSubset::full(field), FqSubset::singleton(field, 0)};
}

SetPair subfield_counterexample(const FieldPtr& field) {
  if (field->m() % 2 != 0) throw PreconditionError("subfield of order sqrt(q) needs even degree");
  std::uint64_t frobenius = 1;
  for (std::uint32_t i = 0; i < field->m() / 2; ++i) frobenius *= field->p();
  FqSubset sub(field);
  for (ElementIndex x = 0; x < field->q(); ++x) {
    if (field->pow(x, frobenius) == x) sub.insert(x);
  }
  return {sub, sub};
}

FqSubset power_span(const FieldElement& g, std::uint32_t terms, const FieldPtr& field) {
  const Field& f = *field;
  std::vector<ElementIndex> basis;
  for (std::uint32_t i = 0; i < terms; ++i) basis.push_back(f.pow(g.index(), i));
  FqSubset span = FqSubset::singleton(field, 0);
  for (ElementIndex v : basis) {
    FqSubset line(field);
    // The prime subfield F_p is exactly the indices 0..p-1.
    for (ElementIndex c = 0; c < f.p(); ++c) line.insert(f.mul(c, v));
    span = sumset(span, line);
  }
  return span;
}

BoxCounterexample box_counterexample(std::uint32_t p, std::uint32_t m, std::uint32_t k, std::uint32_t l) {
  if (k < 1 || l < 1 || k + l != m) throw PreconditionError("box construction needs k, l >= 1 and k + l = m");
  FieldPtr field = make_field(p, m);
  const FieldElement g = field->element(field->primitive_index());
  BoxCounterexample box{field, g, power_span(g, k, field), power_span(g, l, field), power_span(g, m - 1, field)};

  const std::uint64_t q = field->q();
  const auto fail = [&](const std::string& what) {
    throw LemmaViolation("box construction (" + std::to_string(p) + ", " + std::to_string(m) + ", " +
                         std::to_string(k) + ", " + std::to_string(l) + "): " + what);
  };
  if (std::uint64_t{box.a.cardinality()} * box.b.cardinality() != q) fail("|A||B| != q");
  if (!productset(box.a, box.b).is_subset_of(box.c)) fail("AB not inside C");
  if (!(sumset(box.c, box.c) == box.c)) fail("C + C != C");
  if (box.c.is_full()) fail("C = F_q");
  return box;
}

}  // namespace fqbasis
