#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "fqbasis/errors.hpp"
#include "fqbasis/json_io.hpp"
#include "fqbasis/theorem.hpp"

namespace fqbasis {
namespace {

using testing::random_nonempty;

// Minimal k with kX = F_q by plain repeated addition, or 0.
int brute_order(const FqSubset& x, int cap) {
  FqSubset acc = x;
  for (int k = 1; k <= cap; ++k) {
    if (acc.is_full()) return k;
    acc = testing::brute_sumset(acc, x);
  }
  return 0;
}

std::pair<FqSubset, FqSubset> random_pair_above_q(const FieldPtr& f, std::mt19937_64& rng) {
  for (;;) {
    FqSubset a = random_nonempty(f, rng), b = random_nonempty(f, rng);
    if (a.cardinality() * b.cardinality() > f->q()) return {a, b};
  }
}

const char* const kTraceMain16Large[] = {"preconditions", "dichotomy", "regular_subset", "apply", "lift",
                                         "direct_check"};

TEST(TheoremIds, NamesAndOrders) {
  for (auto id : {TheoremId::antisym8, TheoremId::sym8, TheoremId::main16, TheoremId::twoq8}) {
    EXPECT_EQ(parse_theorem_id(to_string(id)), id);
  }
  EXPECT_FALSE(parse_theorem_id("bogus").has_value());
  EXPECT_EQ(theorem_order(TheoremId::main16), 16);
  EXPECT_EQ(theorem_order(TheoremId::sym8), 8);
  EXPECT_EQ(theorem_order(TheoremId::antisym8), 8);
  EXPECT_EQ(theorem_order(TheoremId::twoq8), 8);
}

TEST(Applicability, Hypotheses) {
  const FieldPtr f = make_field(7, 1);
  const FqSubset full = FqSubset::full(f);
  const FqSubset sym = FqSubset::from_indices(f, {1, 6});
  const FqSubset anti = FqSubset::from_indices(f, {1, 2});
  EXPECT_TRUE(theorem_applies(TheoremId::sym8, full, sym));
  EXPECT_FALSE(theorem_applies(TheoremId::antisym8, full, sym));
  EXPECT_TRUE(theorem_applies(TheoremId::antisym8, full, anti));
  EXPECT_TRUE(theorem_applies(TheoremId::twoq8, full, anti));
  EXPECT_FALSE(theorem_applies(TheoremId::main16, anti, anti));
  EXPECT_FALSE(theorem_applies(TheoremId::twoq8, full, FqSubset::singleton(f, 1)));
  EXPECT_FALSE(theorem_applies(TheoremId::main16, full, FqSubset::full(make_field(5, 1))));
}

TEST(Selection, Routing) {
  const FieldPtr f = make_field(7, 1);
  const FqSubset full = FqSubset::full(f);
  EXPECT_EQ(select_theorem(full, FqSubset::from_indices(f, {1, 2})), TheoremId::antisym8);
  EXPECT_EQ(select_theorem(full, FqSubset::from_indices(f, {1, 6})), TheoremId::sym8);
  EXPECT_EQ(select_theorem(full, FqSubset::from_indices(f, {0, 1})), TheoremId::twoq8);
  const FqSubset four = FqSubset::from_indices(f, {0, 1, 2, 3});
  EXPECT_EQ(select_theorem(four, FqSubset::from_indices(f, {0, 1})), TheoremId::main16);
  EXPECT_FALSE(select_theorem(four, FqSubset::singleton(f, 1)).has_value());
}

TEST(Verifiers, RejectUnmetHypotheses) {
  const FieldPtr f = make_field(7, 1);
  const FqSubset small = FqSubset::from_indices(f, {1, 2});
  EXPECT_THROW(verify_main16(small, small), PreconditionError);
  EXPECT_THROW(verify_sym8(FqSubset::full(f), small), PreconditionError);
  EXPECT_THROW(verify_antisym8(FqSubset::full(f), FqSubset::from_indices(f, {1, 6})), PreconditionError);
  EXPECT_THROW(verify_twoq8(FqSubset::full(f), FqSubset::singleton(f, 1)), PreconditionError);
  EXPECT_THROW(verify_main16(FqSubset::full(f), FqSubset::full(make_field(5, 1))), FieldMismatch);
}

TEST(Verifiers, AntisymmetricExample) {
  const FieldPtr f = make_field(7, 1);
  const FqSubset a = FqSubset::from_indices(f, {0, 1, 2, 3});
  const FqSubset b = FqSubset::from_indices(f, {1, 2});
  const Certificate cert = verify_antisym8(a, b);
  EXPECT_TRUE(cert.verified);
  EXPECT_EQ(cert.claimed_order, 8);
  std::vector<std::string> steps;
  for (const auto& s : cert.trace) steps.push_back(s.step);
  EXPECT_EQ(steps, (std::vector<std::string>{"preconditions", "choose_xi", "negation_collision", "xi_as_ratio",
                                             "large_subset", "doubling_covers", "direct_check"}));
  EXPECT_TRUE(n_fold_product_sum(8, a, b).is_full());
  EXPECT_TRUE(replay_certificate(cert).ok);
}

TEST(Verifiers, SymmetricExample) {
  const FieldPtr f = make_field(3, 2);
  const FqSubset a = FqSubset::from_indices(f, {0, 1, 3, 4, 8});
  const FqSubset b = FqSubset::from_indices(f, {1, 2});  // 2 = -1
  const Certificate cert = verify_sym8(a, b);
  EXPECT_TRUE(cert.verified);
  EXPECT_EQ(cert.trace.back().step, "direct_check");
  EXPECT_EQ(cert.trace[2].step, "collision_witness");
  EXPECT_TRUE(replay_certificate(cert).ok);
}

TEST(Verifiers, Main16NestsInnerCertificate) {
  const FieldPtr f = make_field(7, 1);
  const FqSubset a = FqSubset::from_indices(f, {0, 1, 2, 3});
  const FqSubset b = FqSubset::from_indices(f, {0, 1});
  const Certificate cert = verify_main16(a, b);
  ASSERT_EQ(cert.trace.size(), std::size(kTraceMain16Large));
  for (std::size_t i = 0; i < cert.trace.size(); ++i) EXPECT_EQ(cert.trace[i].step, kTraceMain16Large[i]);
  const Certificate inner = certificate_from_json(cert.trace[3].data.at("certificate"));
  EXPECT_EQ(inner.a, a);
  EXPECT_TRUE(inner.b.is_subset_of(sumset(b, b)));
  EXPECT_TRUE(inner.verified);
  EXPECT_EQ(cert.claimed_order, 16);
  EXPECT_TRUE(replay_certificate(cert).ok);
}

TEST(Verifiers, Main16CosetBranch) {
  const FieldPtr f = make_field(2, 3);
  const FqSubset a = FqSubset::from_indices(f, {0, 1, 2});
  const FqSubset b = FqSubset::from_indices(f, {4, 5, 6});
  const Certificate cert = verify_main16(a, b);
  EXPECT_EQ(cert.trace[1].data.at("alternative"), "coset");
  EXPECT_EQ(cert.trace[2].step, "coset_kind");
  EXPECT_EQ(cert.trace[2].data.at("kind"), "symmetric");
  EXPECT_TRUE(replay_certificate(cert).ok);
}

TEST(Verifiers, TwoQFullBranch) {
  const FieldPtr f = make_field(5, 1);
  const Certificate cert = verify_twoq8(FqSubset::full(f), FqSubset::from_indices(f, {0, 1}));
  EXPECT_EQ(cert.trace[1].step, "full_A");
  EXPECT_TRUE(replay_certificate(cert).ok);
}

TEST(Verifiers, RandomPairsAllTheoremsReplay) {
  std::mt19937_64 rng(41);
  for (auto [p, m] : {std::pair{5u, 1u}, {7u, 1u}, {2u, 3u}, {3u, 2u}, {2u, 4u}, {13u, 1u}}) {
    const FieldPtr f = make_field(p, m);
    for (int i = 0; i < 40; ++i) {
      const auto [a, b] = random_pair_above_q(f, rng);
      for (auto id : {TheoremId::antisym8, TheoremId::sym8, TheoremId::main16, TheoremId::twoq8}) {
        if (!theorem_applies(id, a, b)) continue;
        const Certificate cert = verify_theorem(id, a, b);
        ASSERT_TRUE(cert.verified);
        ASSERT_TRUE(n_fold_product_sum(cert.claimed_order, a, b).is_full());
        const ReplayResult rr = replay_certificate(cert);
        ASSERT_TRUE(rr.ok) << (rr.mismatches.empty() ? "" : rr.mismatches.front());
      }
    }
  }
}

TEST(Certificates, JsonRoundTrip) {
  const FieldPtr f = make_field(3, 2);
  const FqSubset a = FqSubset::from_indices(f, {0, 1, 2, 3});
  const FqSubset b = FqSubset::from_indices(f, {0, 4, 5});
  const Certificate cert = verify_main16(a, b);
  const nlohmann::json j = to_json(cert);
  const Certificate back = certificate_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.a, a);
  EXPECT_EQ(back.b, b);
  EXPECT_EQ(back.theorem, TheoremId::main16);
  EXPECT_EQ(to_json(back), j);
  EXPECT_TRUE(replay_certificate(back).ok);
  EXPECT_THROW(certificate_from_json(nlohmann::json{{"theorem", "main16"}}), PreconditionError);
  EXPECT_THROW(certificate_from_json(nlohmann::json{{"theorem", "bogus"}}), PreconditionError);
}

TEST(Certificates, ReplayDetectsTampering) {
  const FieldPtr f = make_field(7, 1);
  const FqSubset a = FqSubset::from_indices(f, {0, 1, 2, 3});
  const FqSubset b = FqSubset::from_indices(f, {1, 2});
  const Certificate good = verify_antisym8(a, b);

  Certificate wrong_size = good;
  wrong_size.trace[1].data["sum_size"] = 1;
  EXPECT_FALSE(replay_certificate(wrong_size).ok);

  Certificate wrong_order = good;
  wrong_order.claimed_order = 4;
  EXPECT_FALSE(replay_certificate(wrong_order).ok);

  Certificate wrong_xi = good;
  wrong_xi.trace[1].data["xi"] = 99;
  EXPECT_FALSE(replay_certificate(wrong_xi).ok);

  Certificate truncated = good;
  truncated.trace.pop_back();
  EXPECT_FALSE(replay_certificate(truncated).ok);

  Certificate unknown = good;
  unknown.trace.insert(unknown.trace.begin() + 1, TraceStep{"guess", {}});
  EXPECT_FALSE(replay_certificate(unknown).ok);

  Certificate other_b = good;
  other_b.b = FqSubset::from_indices(f, {1, 3});
  EXPECT_FALSE(replay_certificate(other_b).ok);
}

TEST(Certificates, ReplayDetectsNestedTampering) {
  const FieldPtr f = make_field(7, 1);
  const Certificate good = verify_main16(FqSubset::from_indices(f, {0, 1, 2, 3}), FqSubset::from_indices(f, {0, 1}));
  Certificate bad = good;
  auto& inner = bad.trace[3].data["certificate"];
  inner["trace"][1]["data"]["diff_size"] = 0;
  EXPECT_FALSE(replay_certificate(bad).ok);
}

TEST(Oracle, MatchesRepeatedAddition) {
  std::mt19937_64 rng(43);
  for (auto [p, m] : {std::pair{2u, 3u}, {3u, 2u}, {7u, 1u}, {2u, 4u}}) {
    const FieldPtr f = make_field(p, m);
    for (int i = 0; i < 200; ++i) {
      const FqSubset x = random_nonempty(f, rng, 0.2);
      const int cap = static_cast<int>(2 * f->q());
      const OracleResult r = minimal_basis_order(x);
      EXPECT_EQ(r.cap, cap);
      EXPECT_EQ(r.minimal_order.value_or(0), brute_order(x, cap));
    }
  }
}

TEST(Oracle, EdgeCases) {
  const FieldPtr f = make_field(7, 1);
  EXPECT_FALSE(minimal_basis_order(FqSubset(f)).minimal_order.has_value());
  EXPECT_EQ(minimal_basis_order(FqSubset::full(f)).minimal_order, 1);
  EXPECT_EQ(minimal_basis_order(FqSubset::from_indices(f, {0, 1})).minimal_order, 6);
  EXPECT_FALSE(minimal_basis_order(FqSubset::from_indices(f, {0, 1}), 5).minimal_order.has_value());
  EXPECT_FALSE(minimal_basis_order(FqSubset::singleton(f, 0)).minimal_order.has_value());
  EXPECT_EQ(minimal_basis_order(FqSubset::singleton(f, 1)).minimal_order, std::nullopt);
  EXPECT_THROW(minimal_basis_order(FqSubset::full(f), 0), PreconditionError);
  const FieldPtr g = make_field(2, 2);
  EXPECT_FALSE(minimal_basis_order(FqSubset::from_indices(g, {0, 1})).minimal_order.has_value());
  const nlohmann::json j = to_json(minimal_basis_order(FqSubset::from_indices(g, {0, 1})));
  EXPECT_TRUE(j.at("minimal_order").is_null());
  EXPECT_EQ(j.at("cap"), 8);
}

TEST(PairReports, ConsistencyAndJson) {
  const FieldPtr f = make_field(7, 1);
  const PairReport r = verify_pair(FqSubset::from_indices(f, {0, 1, 2, 3}), FqSubset::from_indices(f, {1, 2}));
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_EQ(r.certificate->theorem, TheoremId::antisym8);
  EXPECT_TRUE(r.consistent);
  const nlohmann::json j = to_json(r);
  EXPECT_EQ(j.at("consistent"), true);
  EXPECT_LE(j.at("oracle_minimal_order").get<int>(), 8);

  const PairReport none = verify_pair(FqSubset::from_indices(f, {1}), FqSubset::from_indices(f, {1, 2}));
  EXPECT_FALSE(none.certificate.has_value());
  const nlohmann::json jn = to_json(none);
  EXPECT_TRUE(jn.at("theorem").is_null());
  EXPECT_EQ(jn.at("A"), nlohmann::json::array({1}));
  EXPECT_EQ(jn.at("oracle_minimal_order"), 6);  // AB = {1, 2}
}

TEST(JsonIo, SetLiterals) {
  const FieldPtr f = make_field(2, 3);
  EXPECT_EQ(parse_set_literal(f, "0,1,3"), FqSubset::from_indices(f, {0, 1, 3}));
  EXPECT_EQ(parse_set_literal(f, " 3, 1 ,0"), FqSubset::from_indices(f, {0, 1, 3}));
  EXPECT_TRUE(parse_set_literal(f, "").empty());
  EXPECT_THROW(parse_set_literal(f, "0,,1"), PreconditionError);
  EXPECT_THROW(parse_set_literal(f, "8"), PreconditionError);
  EXPECT_THROW(parse_set_literal(f, "x"), PreconditionError);
  EXPECT_EQ(format_set_literal(FqSubset::from_indices(f, {5, 2})), "2,5");
  EXPECT_EQ(subset_from_json(f, subset_to_json(FqSubset::from_indices(f, {7, 0}))), FqSubset::from_indices(f, {0, 7}));
}

TEST(JsonIo, FieldRoundTrip) {
  const FieldPtr f = make_field(5, 2);
  const FieldPtr back = field_from_json(field_to_json(f->spec()));
  EXPECT_EQ(back->spec(), f->spec());
  nlohmann::json j = field_to_json(f->spec());
  j["modulus"] = {1, 0, 1};
  EXPECT_THROW(field_from_json(j), PreconditionError);
}

}  // namespace
}  // namespace fqbasis
