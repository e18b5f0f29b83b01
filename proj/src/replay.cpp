#include <string>

#include "fqbasis/collision.hpp"
#include "fqbasis/errors.hpp"
#include "fqbasis/json_io.hpp"
#include "fqbasis/structure.hpp"
#include "fqbasis/theorem.hpp"

namespace fqbasis {
namespace {

using nlohmann::json;

// Walks a trace keeping the choices recorded so far; every check compares a
// recorded value against a fresh recomputation from A and B.
class Replayer {
 public:
  explicit Replayer(const Certificate& cert)
      : cert_(cert), f_(cert.a.field()), sub_(cert.a.field_ptr()), current_(cert.a.field_ptr()) {}

  ReplayResult run() {
    for (std::size_t i = 0; i < cert_.trace.size(); ++i) {
      const auto& s = cert_.trace[i];
      prefix_ = "step " + std::to_string(i) + " (" + s.step + "): ";
      try {
        dispatch(s);
      } catch (const std::exception& e) {
        fail(std::string("malformed or unreplayable: ") + e.what());
      }
    }
    check(!cert_.trace.empty() && cert_.trace.back().step == "direct_check", "trace ends with direct_check");
    check(cert_.claimed_order == theorem_order(cert_.theorem), "claimed order matches theorem");
    result_.ok = result_.mismatches.empty();
    return std::move(result_);
  }

 private:
  void fail(const std::string& what) { result_.mismatches.push_back(prefix_ + what); }
  void check(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  template <class T>
  void same(const json& data, const char* key, const T& fresh) {
    const T recorded = data.at(key).get<T>();
    if (!(recorded == fresh)) fail(std::string(key) + " recorded " + json(recorded).dump() + ", recomputed " + json(fresh).dump());
  }
  FqSubset four() const { return n_fold_product_sum(4, cert_.a, cert_.b); }

  void dispatch(const TraceStep& s) {
    const json& d = s.data;
    const FqSubset& a = cert_.a;
    const FqSubset& b = cert_.b;
    if (s.step == "preconditions") {
      same(d, "q", f_.q());
      same(d, "size_A", a.cardinality());
      same(d, "size_B", b.cardinality());
      same(d, "product_size", std::uint64_t{a.cardinality()} * b.cardinality());
      check(theorem_applies(cert_.theorem, a, b), "hypotheses hold");
    } else if (s.step == "choose_xi") {
      xi_ = element_at(d, "xi");
      check(xi_ != 0, "xi nonzero");
      const FqSubset scaled = dilate(f_.element(xi_), b);
      same(d, "sum_size", sumset(a, scaled).cardinality());
      same(d, "diff_size", diffset(a, scaled).cardinality());
      check(2 * d.at("sum_size").get<std::size_t>() > f_.q(), "|A + xi B| > q/2");
      check(2 * d.at("diff_size").get<std::size_t>() > f_.q(), "|A - xi B| > q/2");
      check(find_xi_half_cover(a, b).xi.index() == xi_, "xi is the least admissible choice");
      sum_size_ = d.at("sum_size").get<std::size_t>();
    } else if (s.step == "negation_collision") {
      read_witness(d);
      check(f_.add(a1_, f_.mul(b1_, xi_)) == f_.neg(f_.add(a2_, f_.mul(b2_, xi_))), "a1 + b1 xi = -(a2 + b2 xi)");
    } else if (s.step == "xi_as_ratio") {
      const auto num = element_at(d, "numerator");
      const auto den = element_at(d, "denominator");
      check(num == f_.add(a1_, a2_), "numerator = a1 + a2");
      check(den == f_.add(b1_, b2_), "denominator = b1 + b2");
      check(den != 0 && f_.neg(f_.div(num, den)) == xi_, "xi = -numerator/denominator");
      current_ = sumset(dilate(f_.element(den), a), dilate(f_.element(num), b));
    } else if (s.step == "large_subset") {
      same(d, "size", current_.cardinality());
      check(2 * current_.cardinality() > f_.q(), "size > q/2");
      check(current_.is_subset_of(four()), "set inside 4AB");
    } else if (s.step == "collision_witness") {
      read_witness(d);
      check(b1_ != b2_ || a1_ != a2_, "pairs distinct");
      check(f_.add(a1_, f_.mul(b1_, xi_)) == f_.add(a2_, f_.mul(b2_, xi_)), "a1 + b1 xi = a2 + b2 xi");
      const FqSubset scaled = dilate(f_.element(f_.sub(b1_, b2_)), sumset(a, dilate(f_.element(xi_), b)));
      same(d, "scaled_size", scaled.cardinality());
      check(scaled.cardinality() == sum_size_, "|S| = |A + xi B|");
      scaled_ = scaled.members();
    } else if (s.step == "cross_difference_set") {
      current_ = cross_difference_set(a, b);
      same(d, "size", current_.cardinality());
      check(FqSubset::from_indices(a.field_ptr(), scaled_).is_subset_of(current_), "S inside I(A, B)");
      check(current_.is_subset_of(four()), "I(A, B) inside 4AB");
      check(2 * current_.cardinality() > f_.q(), "|I(A, B)| > q/2");
    } else if (s.step == "doubling_covers") {
      check(cover_by_doubling(current_), "set + set = F_q");
    } else if (s.step == "dichotomy") {
      const FqSubset doubled = sumset(b, b);
      same(d, "doubled_size", doubled.cardinality());
      const auto alt = d.at("alternative").get<std::string>();
      if (alt == "coset") {
        const FqSubset g = subset_from_json(a.field_ptr(), d.at("group"));
        const FieldElement base = f_.element(d.at("base").get<ElementIndex>());
        check(2 * doubled.cardinality() < 3 * b.cardinality(), "|B+B| < 3|B|/2");
        check(g == sym_group(doubled), "G = Sym(B + B)");
        check(base.index() == b.min_member(), "b is the least member of B");
        check(b.is_subset_of(translate(base, g)), "B inside b + G");
        check(3 * b.cardinality() > 2 * g.cardinality(), "|B| > 2|G|/3");
        check(doubled == translate(base + base, g), "B + B = 2b + G");
        group_ = g.members();
        sub_ = doubled;
      } else {
        check(alt == "large_doubling", "known alternative");
        check(2 * doubled.cardinality() >= 3 * b.cardinality(), "|B+B| >= 3|B|/2");
      }
    } else if (s.step == "coset_kind") {
      const FieldElement shift = f_.element(d.at("shift").get<ElementIndex>());
      const FqSubset g = FqSubset::from_indices(a.field_ptr(), group_);
      const SetKind kind = classify_coset(shift, g);
      same(d, "kind", std::string(to_string(kind)));
      const FqSubset coset = translate(shift, g);
      check(kind == SetKind::symmetric ? coset == negate(coset) : !coset.intersects(negate(coset)),
            "coset kind recomputed set-wise");
    } else if (s.step == "regular_subset") {
      const auto of = d.at("of").get<std::string>();
      const FqSubset whole = of == "B+B" ? sumset(b, b) : b;
      const RegularSubset fresh = extract_regular_subset(whole);
      sub_ = subset_from_json(a.field_ptr(), d.at("subset"));
      check(sub_ == fresh.subset, "subset equals the deterministic extraction");
      same(d, "kind", std::string(to_string(fresh.kind)));
      same(d, "size", sub_.cardinality());
      check(sub_.is_subset_of(whole), "subset inside its source");
      check(fresh.kind == SetKind::symmetric ? is_symmetric(sub_) : is_antisymmetric(sub_), "kind predicate");
      check(meets_regular_size_bound(sub_.cardinality(), whole.cardinality()), "size bound");
    } else if (s.step == "apply") {
      const Certificate inner = certificate_from_json(d.at("certificate"));
      same(d, "theorem", std::string(to_string(inner.theorem)));
      check(inner.a == a, "inner A equals A");
      check(inner.b == sub_, "inner B equals the extracted set");
      check(inner.verified, "inner certificate verified");
      const ReplayResult nested = replay_certificate(inner);
      for (const auto& m : nested.mismatches) fail("inner " + m);
      inner_order_ = inner.claimed_order;
    } else if (s.step == "lift") {
      same(d, "inner_order", inner_order_);
      const int mult = d.at("multiplier").get<int>();
      check(mult * inner_order_ == cert_.claimed_order, "inner order lifts to the claimed order");
      if (mult == 2) {
        check(productset(a, sub_).is_subset_of(n_fold_product_sum(2, a, b)), "AB' inside 2AB");
      } else {
        check(mult == 1 && sub_.is_subset_of(b), "S inside B");
      }
    } else if (s.step == "full_A") {
      same(d, "size_A", a.cardinality());
      check(a.is_full() && b.cardinality() == 2, "|B| = 2 and A = F_q");
    } else if (s.step == "direct_check") {
      same(d, "order", cert_.claimed_order);
      const FqSubset direct = n_fold_product_sum(cert_.claimed_order, a, b);
      same(d, "size", direct.cardinality());
      check(direct.is_full() == cert_.verified, "verified flag matches N(AB) = F_q");
    } else {
      fail("unknown step");
    }
  }

  ElementIndex element_at(const json& d, const char* key) const {
    const auto x = d.at(key).get<ElementIndex>();
    if (x >= f_.q()) throw PreconditionError(std::string(key) + " out of range");
    return x;
  }

  void read_witness(const json& d) {
    a1_ = element_at(d, "a1");
    b1_ = element_at(d, "b1");
    a2_ = element_at(d, "a2");
    b2_ = element_at(d, "b2");
    check(cert_.a.contains(a1_) && cert_.a.contains(a2_), "a1, a2 in A");
    check(cert_.b.contains(b1_) && cert_.b.contains(b2_), "b1, b2 in B");
  }

  const Certificate& cert_;
  const Field& f_;
  ReplayResult result_;
  std::string prefix_;
  ElementIndex xi_ = 0;
  ElementIndex a1_ = 0, b1_ = 0, a2_ = 0, b2_ = 0;
  std::size_t sum_size_ = 0;
  std::vector<ElementIndex> scaled_;
  std::vector<ElementIndex> group_;
  FqSubset sub_;
  FqSubset current_;
  int inner_order_ = 0;
};

}  // namespace

ReplayResult replay_certificate(const Certificate& cert) { return Replayer(cert).run(); }

}  // namespace fqbasis
