#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fqbasis/subset.hpp"

namespace fqbasis {

// Which basis-order statement a certificate replays:
//   antisym8  B antisymmetric, |A||B| > q   =>  8AB = F_q
//   sym8      B symmetric, |A||B| > q       =>  8AB = F_q
//   main16    |A||B| > q                    => 16AB = F_q
//   twoq8     |A||B| >= 2q                  =>  8AB = F_q
enum class TheoremId { antisym8, sym8, main16, twoq8 };

std::string_view to_string(TheoremId id);
std::optional<TheoremId> parse_theorem_id(std::string_view text);
int theorem_order(TheoremId id);

// Whether the hypotheses of `id` hold for (A, B).
bool theorem_applies(TheoremId id, const FqSubset& a, const FqSubset& b);

struct TraceStep {
  std::string step;
  nlohmann::json data;
};

// A replayable record of one proof run on concrete sets. Elements are
// canonical indices, sets sorted index arrays.
struct Certificate {
  TheoremId theorem;
  FqSubset a;
  FqSubset b;
  std::vector<TraceStep> trace;
  int claimed_order = 0;
  bool verified = false;
};

nlohmann::json to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);

// Each verifier throws PreconditionError when the hypotheses fail and
// LemmaViolation when any proof step, or the final direct recomputation of
// N(AB), does not hold. A returned certificate always has verified == true.
Certificate verify_antisym8(const FqSubset& a, const FqSubset& b);
Certificate verify_sym8(const FqSubset& a, const FqSubset& b);
Certificate verify_main16(const FqSubset& a, const FqSubset& b);
Certificate verify_twoq8(const FqSubset& a, const FqSubset& b);
Certificate verify_theorem(TheoremId id, const FqSubset& a, const FqSubset& b);

struct ReplayResult {
  bool ok = true;
  std::vector<std::string> mismatches;
};

// Recomputes every trace step from A, B and the recorded choices, including
// nested certificates, and compares recorded sizes exactly.
ReplayResult replay_certificate(const Certificate& cert);

struct OracleResult {
  std::optional<int> minimal_order;
  int cap = 0;
  FqSubset set;
};

// First k <= cap with kX = F_q (default cap 2q). Throws if cap < 1.
OracleResult minimal_basis_order(const FqSubset& x, std::optional<int> cap = std::nullopt);

nlohmann::json to_json(const OracleResult& r);

// Smallest-order theorem whose hypotheses hold, or nullopt if |A||B| <= q.
std::optional<TheoremId> select_theorem(const FqSubset& a, const FqSubset& b);

struct PairReport {
  FqSubset a;
  FqSubset b;
  std::optional<Certificate> certificate;
  OracleResult oracle;  // run on AB
  bool consistent = true;
};

PairReport verify_pair(const FqSubset& a, const FqSubset& b, std::optional<int> cap = std::nullopt);

// Certificate JSON plus {oracle_minimal_order, consistent}.
nlohmann::json to_json(const PairReport& r);

}  // namespace fqbasis
