#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fqbasis/theorem.hpp"

namespace fqbasis {

// Which pairs a sweep keeps, by |A||B| relative to q.
struct PairFilter {
  enum class Kind { greater_than_q, at_least_two_q, equal_q, at_least };
  Kind kind = Kind::greater_than_q;
  std::uint64_t value = 0;  // threshold for Kind::at_least

  // ">q", ">=2q", "=q", or a plain integer n meaning |A||B| >= n.
  static PairFilter parse(std::string_view text);
  bool accepts(std::uint64_t product, std::uint64_t q) const;
  std::string to_string() const;
};

enum class SweepMode { exhaustive, random };

inline constexpr std::uint64_t kDefaultExhaustiveBudget = std::uint64_t{1} << 22;  // 4^11

struct SweepConfig {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  SweepMode mode = SweepMode::exhaustive;
  PairFilter filter;
  std::uint64_t trials = 0;
  std::optional<std::uint64_t> seed;
  std::optional<TheoremId> theorem;  // unset: strongest applicable theorem per pair
  std::optional<int> oracle_cap;
  unsigned threads = 1;
  std::uint64_t exhaustive_budget = kDefaultExhaustiveBudget;  // exhaustive needs 4^q <= budget
  bool timing = false;
  std::size_t chunk_size = 4096;
};

// Throws PreconditionError describing the first problem found.
void validate(const SweepConfig& config);

struct PairRecord {
  FqSubset a;
  FqSubset b;
  std::optional<TheoremId> theorem;
  std::optional<int> claimed_order;
  std::optional<int> oracle_order;
  bool consistent = true;
  std::optional<std::string> violation;
  std::int64_t micros = 0;
};

// {field, A, B, theorem, claimed_order, oracle_order, consistent[, violation][, micros]}
nlohmann::json to_json(const PairRecord& r, bool timing);

struct SweepSummary {
  nlohmann::json header;  // configuration, generator and seed
  std::uint64_t candidates = 0;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  std::uint64_t certified = 0;
  std::map<std::string, std::uint64_t> by_theorem;
  std::optional<int> max_claimed_order;
  std::optional<int> max_oracle_order;
  std::map<int, std::uint64_t> oracle_histogram;
  std::uint64_t oracle_none = 0;
  std::uint64_t violation_count = 0;
  std::vector<std::string> violations;  // first kMaxListedViolations
  double seconds = 0.0;                 // written only when timing is on

  static constexpr std::size_t kMaxListedViolations = 100;
};

nlohmann::json to_json(const SweepSummary& s, bool timing);

using RecordSink = std::function<void(const PairRecord&)>;

// Runs verify_pair-style checks over the configured pairs. Records reach
// `sink` in enumeration order regardless of the thread count.
SweepSummary sweep(const SweepConfig& config, const RecordSink& sink = {});

// One pair through the selected theorem plus the oracle. Violations are
// recorded, never thrown.
PairRecord check_pair(const FqSubset& a, const FqSubset& b, std::optional<TheoremId> theorem,
                      std::optional<int> oracle_cap);

}  // namespace fqbasis
