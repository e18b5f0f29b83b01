#include "fqbasis/theorem.hpp"

#include <limits>

#include "fqbasis/collision.hpp"
#include "fqbasis/errors.hpp"
#include "fqbasis/json_io.hpp"
#include "fqbasis/structure.hpp"

namespace fqbasis {
namespace {

using nlohmann::json;

std::uint64_t product_size(const FqSubset& a, const FqSubset& b) {
  return std::uint64_t{a.cardinality()} * b.cardinality();
}

void require_hypotheses(TheoremId id, const FqSubset& a, const FqSubset& b) {
  if (!a.field().same_as(b.field())) throw FieldMismatch();
  if (!theorem_applies(id, a, b)) {
    throw PreconditionError(std::string("hypotheses of ") + std::string(to_string(id)) +
                            " fail (|A| = " + std::to_string(a.cardinality()) +
                            ", |B| = " + std::to_string(b.cardinality()) +
                            ", q = " + std::to_string(a.field().q()) + ")");
  }
}

// Raises LemmaViolation tagged with the theorem and inputs.
class ProofContext {
 public:
  ProofContext(TheoremId id, const FqSubset& a, const FqSubset& b) : id_(id), a_(a), b_(b) {}

  void expect(bool condition, std::string_view what) const {
    if (condition) return;
    throw LemmaViolation(std::string(to_string(id_)) + ": " + std::string(what) + " fails for A = {" +
                         format_set_literal(a_) + "}, B = {" + format_set_literal(b_) +
                         "} in F_" + std::to_string(a_.field().q()));
  }

 private:
  TheoremId id_;
  const FqSubset& a_;
  const FqSubset& b_;
};

Certificate start(TheoremId id, const FqSubset& a, const FqSubset& b) {
  require_hypotheses(id, a, b);
  Certificate cert{id, a, b, {}, theorem_order(id), false};
  cert.trace.push_back({"preconditions",
                        {{"q", a.field().q()},
                         {"size_A", a.cardinality()},
                         {"size_B", b.cardinality()},
                         {"product_size", product_size(a, b)}}});
  return cert;
}

void finish(Certificate& cert, const ProofContext& ctx) {
  const FqSubset direct = n_fold_product_sum(cert.claimed_order, cert.a, cert.b);
  cert.trace.push_back({"direct_check", {{"order", cert.claimed_order}, {"size", direct.cardinality()}}});
  ctx.expect(direct.is_full(), "direct recomputation of N(AB) = F_q");
  cert.verified = true;
}

json choose_xi_step(const HalfCoverChoice& c) {
  return {{"xi", c.xi.index()}, {"sum_size", c.sum_size}, {"diff_size", c.diff_size}};
}

struct NegationCollision {
  ElementIndex a1, b1, a2, b2;
};

// Least (a1, b1) in lexicographic order such that -(a1 + b1 xi) = a2 + b2 xi
// for some pair, which is then the least pair with that value.
std::optional<NegationCollision> find_negation_collision(const FqSubset& a, const FqSubset& b,
                                                        ElementIndex xi) {
  const Field& f = a.field();
  constexpr std::uint64_t kUnseen = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> first(f.q(), kUnseen);
  const auto as = a.members();
  const auto bs = b.members();
  for (ElementIndex av : as) {
    for (ElementIndex bv : bs) {
      const ElementIndex s = f.add(av, f.mul(bv, xi));
      if (first[s] == kUnseen) first[s] = (std::uint64_t{av} << 32) | bv;
    }
  }
  for (ElementIndex av : as) {
    for (ElementIndex bv : bs) {
      const ElementIndex t = f.neg(f.add(av, f.mul(bv, xi)));
      if (first[t] == kUnseen) continue;
      return NegationCollision{av, bv, static_cast<ElementIndex>(first[t] >> 32),
                               static_cast<ElementIndex>(first[t] & 0xffffffffu)};
    }
  }
  return std::nullopt;
}

// {a3 (b1 + b2) + b3 (a1 + a2)}
FqSubset mixed_combination_set(const FqSubset& a, const FqSubset& b, ElementIndex num, ElementIndex den) {
  const Field& f = a.field();
  return sumset(dilate(f.element(den), a), dilate(f.element(num), b));
}

Certificate nested(SetKind kind, const FqSubset& a, const FqSubset& sub, const ProofContext& ctx) {
  try {
    return kind == SetKind::symmetric ? verify_sym8(a, sub) : verify_antisym8(a, sub);
  } catch (const PreconditionError& e) {
    ctx.expect(false, std::string("inner theorem hypotheses (") + e.what() + ")");
    throw;
  }
}

}  // namespace

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::antisym8: return "antisym8";
    case TheoremId::sym8: return "sym8";
    case TheoremId::main16: return "main16";
    case TheoremId::twoq8: return "twoq8";
  }
  return "?";
}

std::optional<TheoremId> parse_theorem_id(std::string_view text) {
  for (auto id : {TheoremId::antisym8, TheoremId::sym8, TheoremId::main16, TheoremId::twoq8}) {
    if (text == to_string(id)) return id;
  }
  return std::nullopt;
}

int theorem_order(TheoremId id) { return id == TheoremId::main16 ? 16 : 8; }

bool theorem_applies(TheoremId id, const FqSubset& a, const FqSubset& b) {
  if (!a.field().same_as(b.field())) return false;
  const std::uint64_t q = a.field().q();
  const std::uint64_t n = product_size(a, b);
  switch (id) {
    case TheoremId::antisym8: return n > q && !b.empty() && is_antisymmetric(b);
    case TheoremId::sym8: return n > q && !b.empty() && is_symmetric(b);
    case TheoremId::main16: return n > q;
    case TheoremId::twoq8: return n >= 2 * q;
  }
  return false;
}

Certificate verify_antisym8(const FqSubset& a, const FqSubset& b) {
  Certificate cert = start(TheoremId::antisym8, a, b);
  const ProofContext ctx(cert.theorem, a, b);
  const Field& f = a.field();

  const HalfCoverChoice choice = find_xi_half_cover(a, b);
  cert.trace.push_back({"choose_xi", choose_xi_step(choice)});
  const ElementIndex xi = choice.xi.index();

  const auto hit = find_negation_collision(a, b, xi);
  ctx.expect(hit.has_value(), "A + xi B meets -(A + xi B)");
  cert.trace.push_back({"negation_collision", {{"a1", hit->a1}, {"b1", hit->b1}, {"a2", hit->a2}, {"b2", hit->b2}}});

  const ElementIndex num = f.add(hit->a1, hit->a2);
  const ElementIndex den = f.add(hit->b1, hit->b2);
  ctx.expect(den != 0, "b1 + b2 != 0");
  ctx.expect(f.neg(f.div(num, den)) == xi, "xi = -(a1 + a2)/(b1 + b2)");
  cert.trace.push_back({"xi_as_ratio", {{"numerator", num}, {"denominator", den}}});

  const FqSubset large = mixed_combination_set(a, b, num, den);
  const FqSubset four = n_fold_product_sum(4, a, b);
  ctx.expect(2 * large.cardinality() > f.q(), "|{a3(b1+b2) + b3(a1+a2)}| > q/2");
  ctx.expect(large.is_subset_of(four), "{a3(b1+b2) + b3(a1+a2)} inside 4AB");
  cert.trace.push_back({"large_subset", {{"size", large.cardinality()}, {"in_4AB", true}}});

  ctx.expect(cover_by_doubling(large), "doubling of a set larger than q/2 covers F_q");
  cert.trace.push_back({"doubling_covers", {{"covers", true}}});

  finish(cert, ctx);
  return cert;
}

Certificate verify_sym8(const FqSubset& a, const FqSubset& b) {
  Certificate cert = start(TheoremId::sym8, a, b);
  const ProofContext ctx(cert.theorem, a, b);
  const Field& f = a.field();

  const HalfCoverChoice choice = find_xi_half_cover(a, b);
  cert.trace.push_back({"choose_xi", choose_xi_step(choice)});
  ctx.expect(choice.sum_size < a.cardinality() * b.cardinality(), "|A + xi B| < |A||B|");

  const CollisionWitness w = collision_witness(a, b, choice.xi);
  ctx.expect(w.scaled.cardinality() == choice.sum_size, "|(b1 - b2)(A + xi B)| = |A + xi B|");
  cert.trace.push_back({"collision_witness",
                        {{"a1", w.a1.index()},
                         {"b1", w.b1.index()},
                         {"a2", w.a2.index()},
                         {"b2", w.b2.index()},
                         {"scaled_size", w.scaled.cardinality()}}});

  const FqSubset cross = cross_difference_set(a, b);
  const FqSubset four = n_fold_product_sum(4, a, b);
  ctx.expect(w.scaled.is_subset_of(cross), "(b1 - b2)(A + xi B) inside I(A, B)");
  ctx.expect(cross.is_subset_of(four), "I(A, B) inside 4AB");
  ctx.expect(2 * cross.cardinality() > f.q(), "|I(A, B)| > q/2");
  cert.trace.push_back({"cross_difference_set",
                        {{"size", cross.cardinality()}, {"contains_scaled", true}, {"in_4AB", true}}});

  ctx.expect(cover_by_doubling(cross), "doubling of a set larger than q/2 covers F_q");
  cert.trace.push_back({"doubling_covers", {{"covers", true}}});

  finish(cert, ctx);
  return cert;
}

Certificate verify_main16(const FqSubset& a, const FqSubset& b) {
  Certificate cert = start(TheoremId::main16, a, b);
  const ProofContext ctx(cert.theorem, a, b);
  const Field& f = a.field();
  ctx.expect(b.cardinality() >= 2, "|B| >= 2");

  const Dichotomy d = dichotomy(b);
  FqSubset sub(a.field_ptr());
  SetKind kind = SetKind::symmetric;
  if (d.alternative == Dichotomy::Alternative::coset) {
    cert.trace.push_back({"dichotomy",
                          {{"alternative", to_string(d.alternative)},
                           {"doubled_size", d.doubled.cardinality()},
                           {"group", subset_to_json(*d.group)},
                           {"base", d.base->index()}}});
    const FieldElement shift = *d.base + *d.base;
    kind = classify_coset(shift, *d.group);
    ctx.expect(kind == SetKind::symmetric ? is_symmetric(d.doubled) : is_antisymmetric(d.doubled),
               "coset kind matches B + B");
    cert.trace.push_back({"coset_kind", {{"shift", shift.index()}, {"kind", to_string(kind)}}});
    sub = d.doubled;
  } else {
    cert.trace.push_back({"dichotomy",
                          {{"alternative", to_string(d.alternative)}, {"doubled_size", d.doubled.cardinality()}}});
    const RegularSubset r = extract_regular_subset(d.doubled);
    ctx.expect(r.subset.cardinality() >= b.cardinality(), "|S| >= |B|");
    cert.trace.push_back({"regular_subset",
                          {{"of", "B+B"},
                           {"subset", subset_to_json(r.subset)},
                           {"kind", to_string(r.kind)},
                           {"size", r.subset.cardinality()}}});
    sub = r.subset;
    kind = r.kind;
  }
  ctx.expect(product_size(a, sub) > f.q(), "|A||B'| > q");

  const Certificate inner = nested(kind, a, sub, ctx);
  cert.trace.push_back({"apply", {{"theorem", to_string(inner.theorem)}, {"certificate", to_json(inner)}}});

  ctx.expect(productset(a, sub).is_subset_of(n_fold_product_sum(2, a, b)), "AB' inside 2AB");
  cert.trace.push_back({"lift", {{"inner_order", inner.claimed_order}, {"multiplier", 2}, {"product_in_2AB", true}}});

  finish(cert, ctx);
  return cert;
}

Certificate verify_twoq8(const FqSubset& a, const FqSubset& b) {
  Certificate cert = start(TheoremId::twoq8, a, b);
  const ProofContext ctx(cert.theorem, a, b);
  const Field& f = a.field();

  if (b.cardinality() == 2) {
    ctx.expect(a.is_full(), "|B| = 2 forces A = F_q");
    cert.trace.push_back({"full_A", {{"size_A", a.cardinality()}}});
  } else {
    const RegularSubset r = extract_regular_subset(b);
    ctx.expect(2 * r.subset.cardinality() > b.cardinality(), "|S| > |B|/2");
    ctx.expect(product_size(a, r.subset) > f.q(), "|A||S| > q");
    cert.trace.push_back({"regular_subset",
                          {{"of", "B"},
                           {"subset", subset_to_json(r.subset)},
                           {"kind", to_string(r.kind)},
                           {"size", r.subset.cardinality()}}});
    const Certificate inner = nested(r.kind, a, r.subset, ctx);
    cert.trace.push_back({"apply", {{"theorem", to_string(inner.theorem)}, {"certificate", to_json(inner)}}});
    ctx.expect(r.subset.is_subset_of(b), "S inside B");
    cert.trace.push_back({"lift", {{"inner_order", inner.claimed_order}, {"multiplier", 1}, {"subset_of_B", true}}});
  }

  finish(cert, ctx);
  return cert;
}

Certificate verify_theorem(TheoremId id, const FqSubset& a, const FqSubset& b) {
  switch (id) {
    case TheoremId::antisym8: return verify_antisym8(a, b);
    case TheoremId::sym8: return verify_sym8(a, b);
    case TheoremId::main16: return verify_main16(a, b);
    case TheoremId::twoq8: return verify_twoq8(a, b);
  }
  throw PreconditionError("unknown theorem");
}

nlohmann::json to_json(const Certificate& cert) {
  json trace = json::array();
  for (const auto& s : cert.trace) trace.push_back({{"step", s.step}, {"data", s.data}});
  return {{"theorem", to_string(cert.theorem)},
          {"field", field_to_json(cert.a.field().spec())},
          {"A", subset_to_json(cert.a)},
          {"B", subset_to_json(cert.b)},
          {"trace", std::move(trace)},
          {"claimed_order", cert.claimed_order},
          {"verified", cert.verified}};
}

Certificate certificate_from_json(const nlohmann::json& j) {
  try {
    const auto id = parse_theorem_id(j.at("theorem").get<std::string>());
    if (!id) throw PreconditionError("unknown theorem id");
    const FieldPtr field = field_from_json(j.at("field"));
    Certificate cert{*id, subset_from_json(field, j.at("A")), subset_from_json(field, j.at("B")), {},
                     j.at("claimed_order").get<int>(), j.at("verified").get<bool>()};
    for (const auto& s : j.at("trace")) cert.trace.push_back({s.at("step").get<std::string>(), s.at("data")});
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed certificate: ") + e.what());
  }
}

OracleResult minimal_basis_order(const FqSubset& x, std::optional<int> cap) {
  const int limit = cap.value_or(static_cast<int>(2 * x.field().q()));
  if (limit < 1) throw PreconditionError("oracle cap must be at least 1");
  OracleResult r{std::nullopt, limit, x};
  if (x.empty()) return r;
  FqSubset acc = x;
  for (int k = 1; k <= limit; ++k) {
    if (acc.is_full()) {
      r.minimal_order = k;
      return r;
    }
    FqSubset next = sumset(acc, x);
    // Once kX = (k+1)X the sequence is constant.
    if (next == acc) return r;
    acc = std::move(next);
  }
  return r;
}

nlohmann::json to_json(const OracleResult& r) {
  return {{"minimal_order", r.minimal_order ? json(*r.minimal_order) : json(nullptr)},
          {"cap", r.cap},
          {"set", subset_to_json(r.set)}};
}

std::optional<TheoremId> select_theorem(const FqSubset& a, const FqSubset& b) {
  for (auto id : {TheoremId::antisym8, TheoremId::sym8, TheoremId::twoq8, TheoremId::main16}) {
    if (theorem_applies(id, a, b)) return id;
  }
  return std::nullopt;
}

PairReport verify_pair(const FqSubset& a, const FqSubset& b, std::optional<int> cap) {
  if (!a.field().same_as(b.field())) throw FieldMismatch();
  PairReport r{a, b, std::nullopt, minimal_basis_order(productset(a, b), cap), true};
  if (const auto id = select_theorem(a, b)) {
    r.certificate = verify_theorem(*id, a, b);
    r.consistent = r.oracle.minimal_order.has_value() && r.certificate->claimed_order >= *r.oracle.minimal_order;
  }
  return r;
}

nlohmann::json to_json(const PairReport& r) {
  json out;
  if (r.certificate) {
    out = to_json(*r.certificate);
  } else {
    out = {{"theorem", nullptr},
           {"field", field_to_json(r.a.field().spec())},
           {"A", subset_to_json(r.a)},
           {"B", subset_to_json(r.b)},
           {"trace", json::array()},
           {"claimed_order", nullptr},
           {"verified", false}};
  }
  out["oracle_minimal_order"] = r.oracle.minimal_order ? json(*r.oracle.minimal_order) : json(nullptr);
  out["consistent"] = r.consistent;
  return out;
}

}  // namespace fqbasis
