#include "fqbasis/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <random>
#include <thread>

#include "fqbasis/errors.hpp"
#include "fqbasis/json_io.hpp"

namespace fqbasis {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr std::string_view kGenerator = "mt19937_64";

std::uint64_t order_of(const SweepConfig& c) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < c.m; ++i) q *= c.p;
  return q;
}

json header_of(const SweepConfig& c, std::uint32_t q) {
  json h = {{"p", c.p},
            {"m", c.m},
            {"q", q},
            {"mode", c.mode == SweepMode::exhaustive ? "exhaustive" : "random"},
            {"filter", c.filter.to_string()},
            {"theorem", c.theorem ? json(to_string(*c.theorem)) : json("auto")},
            {"oracle_cap", c.oracle_cap ? *c.oracle_cap : static_cast<int>(2 * q)}};
  if (c.mode == SweepMode::random) {
    h["generator"] = kGenerator;
    h["seed"] = *c.seed;
    h["trials"] = c.trials;
  }
  return h;
}

FqSubset random_subset(const FieldPtr& field, std::mt19937_64& rng) {
  FqSubset s(field);
  const std::uint32_t q = field->q();
  for (std::uint32_t base = 0; base < q; base += 64) {
    std::uint64_t word = rng();
    for (std::uint32_t i = 0; i < 64 && base + i < q; ++i) {
      if ((word >> i) & 1) s.insert(base + i);
    }
  }
  return s;
}

void absorb(SweepSummary& s, const PairRecord& r) {
  ++s.checked;
  if (r.theorem) {
    ++s.by_theorem[std::string(to_string(*r.theorem))];
    if (!r.violation) ++s.certified;
  }
  if (r.claimed_order) s.max_claimed_order = std::max(s.max_claimed_order.value_or(0), *r.claimed_order);
  if (r.oracle_order) {
    ++s.oracle_histogram[*r.oracle_order];
    s.max_oracle_order = std::max(s.max_oracle_order.value_or(0), *r.oracle_order);
  } else {
    ++s.oracle_none;
  }
  if (r.violation) {
    ++s.violation_count;
    if (s.violations.size() < SweepSummary::kMaxListedViolations) s.violations.push_back(*r.violation);
  }
}

// Verifies a batch with a small worker pool; results keep batch order.
std::vector<PairRecord> run_batch(const std::vector<std::pair<FqSubset, FqSubset>>& batch, const SweepConfig& c) {
  std::vector<std::optional<PairRecord>> slots(batch.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < batch.size(); i = next++) {
      const auto t0 = Clock::now();
      PairRecord r = check_pair(batch[i].first, batch[i].second, c.theorem, c.oracle_cap);
      r.micros = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count();
      slots[i] = std::move(r);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(c.threads, static_cast<unsigned>(batch.size())));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
  }
  std::vector<PairRecord> out;
  out.reserve(batch.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace

PairFilter PairFilter::parse(std::string_view text) {
  if (text == ">q") return {Kind::greater_than_q, 0};
  if (text == ">=2q" || text == "≥2q") return {Kind::at_least_two_q, 0};
  if (text == "=q") return {Kind::equal_q, 0};
  std::uint64_t n = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw PreconditionError("unknown pair filter '" + std::string(text) + "' (use >q, >=2q, =q or an integer)");
  }
  return {Kind::at_least, n};
}

bool PairFilter::accepts(std::uint64_t product, std::uint64_t q) const {
  switch (kind) {
    case Kind::greater_than_q: return product > q;
    case Kind::at_least_two_q: return product >= 2 * q;
    case Kind::equal_q: return product == q;
    case Kind::at_least: return product >= value;
  }
  return false;
}

std::string PairFilter::to_string() const {
  switch (kind) {
    case Kind::greater_than_q: return ">q";
    case Kind::at_least_two_q: return ">=2q";
    case Kind::equal_q: return "=q";
    case Kind::at_least: return std::to_string(value);
  }
  return "?";
}

void validate(const SweepConfig& c) {
  if (!is_prime(c.p)) throw PreconditionError("p must be prime");
  if (c.m < 1) throw PreconditionError("m must be at least 1");
  if (c.threads < 1) throw PreconditionError("threads must be at least 1");
  if (c.chunk_size < 1) throw PreconditionError("chunk size must be at least 1");
  if (c.oracle_cap && *c.oracle_cap < 1) throw PreconditionError("oracle cap must be at least 1");
  const std::uint64_t q = order_of(c);
  if (c.mode == SweepMode::exhaustive) {
    // 4^q <= budget, i.e. 2q <= log2(budget)
    if (q > 31 || (std::uint64_t{1} << (2 * q)) > c.exhaustive_budget) {
      throw PreconditionError("exhaustive sweep over q = " + std::to_string(q) +
                              " exceeds the pair budget; use random mode");
    }
  } else {
    if (!c.seed) throw PreconditionError("random mode needs a seed");
    if (c.trials == 0) throw PreconditionError("random mode needs a positive trial count");
  }
}

PairRecord check_pair(const FqSubset& a, const FqSubset& b, std::optional<TheoremId> theorem,
                      std::optional<int> oracle_cap) {
  PairRecord r{a, b, std::nullopt, std::nullopt, std::nullopt, true, std::nullopt, 0};
  const OracleResult oracle = minimal_basis_order(productset(a, b), oracle_cap);
  r.oracle_order = oracle.minimal_order;
  r.theorem = theorem ? (theorem_applies(*theorem, a, b) ? theorem : std::nullopt) : select_theorem(a, b);
  if (!r.theorem) return r;
  r.claimed_order = theorem_order(*r.theorem);
  try {
    const Certificate cert = verify_theorem(*r.theorem, a, b);
    if (!cert.verified) r.violation = "certificate returned unverified";
  } catch (const LemmaViolation& e) {
    r.violation = e.what();
  } catch (const PreconditionError& e) {
    r.violation = std::string("unexpected precondition failure: ") + e.what();
  }
  r.consistent = oracle.minimal_order.has_value() && *r.claimed_order >= *oracle.minimal_order;
  if (!r.consistent && !r.violation) {
    r.violation = "claimed order " + std::to_string(*r.claimed_order) + " below oracle order for A = {" +
                  format_set_literal(a) + "}, B = {" + format_set_literal(b) + "}";
  }
  return r;
}

nlohmann::json to_json(const PairRecord& r, bool timing) {
  json j = {{"field", field_to_json(r.a.field().spec())},
            {"A", subset_to_json(r.a)},
            {"B", subset_to_json(r.b)},
            {"theorem", r.theorem ? json(to_string(*r.theorem)) : json(nullptr)},
            {"claimed_order", r.claimed_order ? json(*r.claimed_order) : json(nullptr)},
            {"oracle_order", r.oracle_order ? json(*r.oracle_order) : json(nullptr)},
            {"consistent", r.consistent}};
  if (r.violation) j["violation"] = *r.violation;
  if (timing) j["micros"] = r.micros;
  return j;
}

nlohmann::json to_json(const SweepSummary& s, bool timing) {
  json hist = json::object();
  for (const auto& [order, count] : s.oracle_histogram) hist[std::to_string(order)] = count;
  json j = {{"header", s.header},
            {"candidates", s.candidates},
            {"checked", s.checked},
            {"skipped", s.skipped},
            {"certified", s.certified},
            {"by_theorem", s.by_theorem},
            {"max_claimed_order", s.max_claimed_order ? json(*s.max_claimed_order) : json(nullptr)},
            {"max_oracle_order", s.max_oracle_order ? json(*s.max_oracle_order) : json(nullptr)},
            {"oracle_order_histogram", std::move(hist)},
            {"oracle_none", s.oracle_none},
            {"violation_count", s.violation_count},
            {"violations", s.violations}};
  if (timing) j["seconds"] = s.seconds;
  return j;
}

SweepSummary sweep(const SweepConfig& c, const RecordSink& sink) {
  validate(c);
  const auto t0 = Clock::now();
  const FieldPtr field = make_field(c.p, c.m, std::max<std::uint64_t>(kDefaultOrderBound, order_of(c)));
  const std::uint32_t q = field->q();
  SweepSummary summary;
  summary.header = header_of(c, q);

  std::vector<std::pair<FqSubset, FqSubset>> batch;
  batch.reserve(c.chunk_size);
  auto flush = [&] {
    for (const auto& r : run_batch(batch, c)) {
      absorb(summary, r);
      if (sink) sink(r);
    }
    batch.clear();
  };
  auto offer = [&](FqSubset a, FqSubset b) {
    batch.emplace_back(std::move(a), std::move(b));
    if (batch.size() >= c.chunk_size) flush();
  };

  if (c.mode == SweepMode::exhaustive) {
    const std::uint64_t limit = std::uint64_t{1} << q;
    for (std::uint64_t ma = 1; ma < limit; ++ma) {
      const auto na = static_cast<std::uint64_t>(std::popcount(ma));
      const FqSubset a = FqSubset::from_mask(field, ma);
      for (std::uint64_t mb = 1; mb < limit; ++mb) {
        if (!c.filter.accepts(na * static_cast<std::uint64_t>(std::popcount(mb)), q)) continue;
        ++summary.candidates;
        FqSubset b = FqSubset::from_mask(field, mb);
        if (c.theorem && !theorem_applies(*c.theorem, a, b)) {
          ++summary.skipped;
          continue;
        }
        offer(a, std::move(b));
      }
    }
  } else {
    std::mt19937_64 rng(*c.seed);
    const std::uint64_t max_draws = std::max<std::uint64_t>(1'000'000, 1000 * c.trials);
    std::uint64_t accepted = 0;
    for (std::uint64_t draws = 0; accepted < c.trials; ++draws) {
      if (draws >= max_draws) throw PreconditionError("filter rejected too many random draws");
      FqSubset a = random_subset(field, rng);
      FqSubset b = random_subset(field, rng);
      if (a.empty() || b.empty()) continue;
      if (!c.filter.accepts(std::uint64_t{a.cardinality()} * b.cardinality(), q)) continue;
      if (c.theorem && !theorem_applies(*c.theorem, a, b)) continue;
      ++summary.candidates;
      ++accepted;
      offer(std::move(a), std::move(b));
    }
  }
  if (!batch.empty()) flush();
  summary.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return summary;
}

}  // namespace fqbasis
