// Acceptance run: exhaustive desk-scale verification plus invariant suites.
// Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "cli.hpp"
#include "fqbasis/collision.hpp"
#include "fqbasis/errors.hpp"
#include "fqbasis/json_io.hpp"
#include "fqbasis/sharpness.hpp"
#include "fqbasis/structure.hpp"
#include "fqbasis/sweep.hpp"

namespace fqbasis {
namespace {

struct Order {
  std::uint32_t p, m;
};

const std::vector<Order> kDeskFields = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Running tally for criterion 10 over every certificate from criteria 1-4.
struct ConsistencyTally {
  std::uint64_t certificates = 0;
  std::uint64_t inconsistent = 0;
} g_consistency;

std::uint32_t order_of(const Order& o) {
  std::uint32_t q = 1;
  for (std::uint32_t i = 0; i < o.m; ++i) q *= o.p;
  return q;
}

FqSubset draw_nonempty(const FieldPtr& f, std::mt19937_64& rng) { return testing::random_nonempty(f, rng); }

// Sweeps one field with a fixed theorem; every accepted pair must carry a
// verified certificate with the expected order and no violation.
Outcome sweep_theorem(const SweepConfig& base, const std::vector<Order>& fields, int expected_order) {
  Outcome out;
  std::uint64_t total = 0, violations = 0;
  for (const Order& o : fields) {
    SweepConfig c = base;
    c.p = o.p;
    c.m = o.m;
    std::uint64_t bad = 0;
    const SweepSummary s = sweep(c, [&](const PairRecord& r) {
      const bool ok = r.theorem && !r.violation && r.claimed_order == expected_order;
      if (!ok) {
        ++bad;
        if (out.detail.empty()) {
          out.detail = "q=" + std::to_string(order_of(o)) + " A={" + format_set_literal(r.a) + "} B={" +
                       format_set_literal(r.b) + "}: " + r.violation.value_or("not certified");
        }
      }
      ++g_consistency.certificates;
      if (!r.consistent) ++g_consistency.inconsistent;
    });
    total += s.checked;
    violations += bad + (s.violation_count > bad ? s.violation_count - bad : 0);
  }
  out.pass = violations == 0 && total > 0;
  out.detail = std::to_string(total) + " pairs, " + std::to_string(violations) + " violations" +
               (out.detail.empty() ? "" : "; first: " + out.detail);
  return out;
}

Outcome criterion_main16() {
  SweepConfig c;
  c.theorem = TheoremId::main16;
  return sweep_theorem(c, kDeskFields, 16);
}

Outcome criterion_sym_antisym() {
  SweepConfig c;
  c.theorem = TheoremId::sym8;
  const Outcome sym = sweep_theorem(c, kDeskFields, 8);
  c.theorem = TheoremId::antisym8;
  const Outcome anti = sweep_theorem(c, kDeskFields, 8);
  return {sym.pass && anti.pass, "sym8: " + sym.detail + "; antisym8: " + anti.detail};
}

Outcome criterion_twoq() {
  SweepConfig c;
  c.theorem = TheoremId::twoq8;
  c.filter = PairFilter::parse(">=2q");
  return sweep_theorem(c, kDeskFields, 8);
}

Outcome criterion_sampled() {
  Outcome out;
  std::string detail;
  for (const Order& o : std::vector<Order>{{13, 1}, {2, 4}, {5, 2}, {3, 3}}) {
    SweepConfig c;
    c.mode = SweepMode::random;
    c.seed = 20240601 + order_of(o);
    c.trials = 10000;
    c.theorem = TheoremId::main16;
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome r = sweep_theorem(c, {o}, 16);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < 15 * 60;
    out.pass = out.pass && r.pass && in_time;
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.1fs)", secs);
    detail += (detail.empty() ? "" : "; ") + std::string("q=") + std::to_string(order_of(o)) + ": " + r.detail + buf;
  }
  out.detail = detail;
  return out;
}

Outcome criterion_energy() {
  std::mt19937_64 rng(5151);
  std::uint64_t pairs = 0, failures = 0;
  for (const Order& o : std::vector<Order>{{3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {2, 4}}) {
    const FieldPtr f = make_field(o.p, o.m);
    for (int i = 0; i < 100; ++i) {
      const FqSubset a = draw_nonempty(f, rng), b = draw_nonempty(f, rng);
      ++pairs;
      const EnergyIdentityReport r = energy_identity_check(a, b);
      const std::uint64_t na = a.cardinality(), nb = b.cardinality();
      std::uint64_t total = 0;
      bool symmetric = true;
      for (ElementIndex xi = 1; xi < f->q(); ++xi) {
        const CollisionProfile prof = collision_profile(a, b, f->element(xi));
        total += prof.energy_plus;
        symmetric = symmetric && prof.energy_plus == prof.energy_minus;
      }
      const std::uint64_t expected = na * nb * (f->q() - 1) + na * nb * (na - 1) * (nb - 1);
      if (!r.equal || r.total != total || total != expected || r.expected != expected || !symmetric) ++failures;
    }
  }
  return {failures == 0, std::to_string(pairs) + " pairs, " + std::to_string(failures) + " failures"};
}

Outcome criterion_xi_bounds() {
  std::uint64_t pairs = 0, half_cover = 0, failures = 0;
  std::string first;
  for (const Order& o : std::vector<Order>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}}) {
    const FieldPtr f = make_field(o.p, o.m);
    const std::uint64_t limit = std::uint64_t{1} << f->q();
    for (std::uint64_t ma = 1; ma < limit; ++ma) {
      const FqSubset a = FqSubset::from_mask(f, ma);
      for (std::uint64_t mb = 1; mb < limit; ++mb) {
        const FqSubset b = FqSubset::from_mask(f, mb);
        ++pairs;
        try {
          const MinEnergyChoice c = find_xi_min_energy(a, b);
          const Rational bound = sum_size_lower_bound(a.cardinality(), b.cardinality(), f->q());
          const auto plus = static_cast<std::int64_t>(sumset(a, dilate(c.xi, b)).cardinality());
          const auto minus = static_cast<std::int64_t>(diffset(a, dilate(c.xi, b)).cardinality());
          if (c.xi.is_zero() || Rational(plus) < bound || Rational(minus) < bound) ++failures;
          if (a.cardinality() * b.cardinality() > f->q()) {
            ++half_cover;
            const HalfCoverChoice h = find_xi_half_cover(a, b);
            const auto hp = sumset(a, dilate(h.xi, b)).cardinality();
            const auto hm = diffset(a, dilate(h.xi, b)).cardinality();
            if (h.xi.is_zero() || 2 * hp <= f->q() || 2 * hm <= f->q()) ++failures;
          }
        } catch (const LemmaViolation& e) {
          ++failures;
          if (first.empty()) first = e.what();
        }
      }
    }
  }
  return {failures == 0, std::to_string(pairs) + " pairs (" + std::to_string(half_cover) + " above q), " +
                             std::to_string(failures) + " failures" + (first.empty() ? "" : "; first: " + first)};
}

Outcome criterion_extraction() {
  std::uint64_t sets = 0, failures = 0;
  for (const Order& o : kDeskFields) {
    const FieldPtr f = make_field(o.p, o.m);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << f->q()); ++mask) {
      const FqSubset a = FqSubset::from_mask(f, mask);
      ++sets;
      try {
        const RegularSubset r = extract_regular_subset(a);
        const bool kind_ok = r.kind == SetKind::symmetric ? is_symmetric(r.subset) : is_antisymmetric(r.subset);
        // ceil(2|A|/3), or (2|A| - 1)/3 when |A| = 2 mod 3
        const std::size_t n = a.cardinality();
        const std::size_t need = n % 3 == 2 ? (2 * n - 1) / 3 : (2 * n + 2) / 3;
        if (!kind_ok || !r.subset.is_subset_of(a) || r.subset.cardinality() < need) ++failures;
      } catch (const LemmaViolation&) {
        ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(sets) + " sets, " + std::to_string(failures) + " failures"};
}

Outcome criterion_kneser_dichotomy() {
  std::uint64_t exhaustive = 0, sampled = 0, kneser_fail = 0;
  for (const Order& o : std::vector<Order>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}}) {
    const FieldPtr f = make_field(o.p, o.m);
    const std::uint64_t limit = std::uint64_t{1} << f->q();
    for (std::uint64_t mx = 1; mx < limit; ++mx) {
      const FqSubset x = FqSubset::from_mask(f, mx);
      for (std::uint64_t my = 1; my < limit; ++my) {
        ++exhaustive;
        if (!kneser_check(x, FqSubset::from_mask(f, my)).holds) ++kneser_fail;
      }
    }
  }
  std::mt19937_64 rng(8989);
  for (const Order& o : std::vector<Order>{{2, 3}, {3, 2}, {2, 4}}) {
    const FieldPtr f = make_field(o.p, o.m);
    for (int i = 0; i < 10000; ++i) {
      ++sampled;
      if (!kneser_check(draw_nonempty(f, rng), draw_nonempty(f, rng)).holds) ++kneser_fail;
    }
  }

  std::uint64_t sets = 0, dichotomy_fail = 0;
  for (const Order& o : kDeskFields) {
    const FieldPtr f = make_field(o.p, o.m);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << f->q()); ++mask) {
      const FqSubset b = FqSubset::from_mask(f, mask);
      if (b.cardinality() < 2) continue;
      ++sets;
      try {
        const Dichotomy d = dichotomy(b);
        const FqSubset doubled = testing::brute_sumset(b, b);
        bool ok = d.doubled == doubled;
        if (d.alternative == Dichotomy::Alternative::large_doubling) {
          ok = ok && 2 * doubled.cardinality() >= 3 * b.cardinality();
        } else {
          const FqSubset& g = *d.group;
          FqSubset stab(f);
          for (ElementIndex s = 0; s < f->q(); ++s)
            if (translate(f->element(s), doubled) == doubled) stab.insert(s);
          ok = ok && g == stab && d.base->index() == b.min_member() &&
               b.is_subset_of(translate(*d.base, g)) && 3 * b.cardinality() > 2 * g.cardinality() &&
               doubled == translate(*d.base + *d.base, g);
        }
        if (!ok) ++dichotomy_fail;
      } catch (const LemmaViolation&) {
        ++dichotomy_fail;
      }
    }
  }
  return {kneser_fail == 0 && dichotomy_fail == 0,
          "Kneser " + std::to_string(exhaustive) + " exhaustive + " + std::to_string(sampled) + " sampled pairs, " +
              std::to_string(kneser_fail) + " failures; dichotomy " + std::to_string(sets) + " sets, " +
              std::to_string(dichotomy_fail) + " failures"};
}

Outcome criterion_sharpness() {
  std::vector<std::string> failed;
  auto check = [&](const std::string& name, const FqSubset& a, const FqSubset& b, const FqSubset* c) {
    const std::uint32_t q = a.field().q();
    const FqSubset ab = productset(a, b);
    bool ok = a.cardinality() * b.cardinality() == q;
    ok = ok && !minimal_basis_order(ab, static_cast<int>(4 * q)).minimal_order.has_value();
    if (c != nullptr) ok = ok && ab.is_subset_of(*c);
    if (!ok) failed.push_back(name);
  };
  int count = 0;
  for (const Order& o : kDeskFields) {
    const SetPair s = trivial_counterexample(make_field(o.p, o.m));
    check("trivial q=" + std::to_string(order_of(o)), s.a, s.b, nullptr);
    ++count;
  }
  for (const Order& o : std::vector<Order>{{2, 2}, {3, 2}, {2, 4}}) {
    const SetPair s = subfield_counterexample(make_field(o.p, o.m));
    check("subfield q=" + std::to_string(order_of(o)), s.a, s.b, nullptr);
    ++count;
  }
  for (auto [p, m, k, l] : {std::tuple{2u, 4u, 2u, 2u}, {3u, 2u, 1u, 1u}, {2u, 6u, 2u, 4u}}) {
    const std::string name = "box(" + std::to_string(p) + "," + std::to_string(m) + "," + std::to_string(k) + "," +
                             std::to_string(l) + ")";
    try {
      const BoxCounterexample box = box_counterexample(p, m, k, l);
      check(name, box.a, box.b, &box.c);
    } catch (const LemmaViolation&) {
      failed.push_back(name);
    }
    ++count;
  }
  std::string detail = std::to_string(count) + " constructions";
  for (const auto& f : failed) detail += "; failed " + f;
  return {failed.empty(), detail};
}

Outcome criterion_oracle_consistency() {
  std::uint64_t pairs = 0, mismatches = 0;
  for (const Order& o : kDeskFields) {
    const FieldPtr f = make_field(o.p, o.m);
    std::vector<FqSubset> small;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << f->q()); ++mask) {
      const FqSubset s = FqSubset::from_mask(f, mask);
      if (s.cardinality() <= 4) small.push_back(s);
    }
    for (const auto& a : small) {
      for (const auto& b : small) {
        ++pairs;
        if (!(cross_difference_set(a, b) == testing::brute_cross_difference(a, b))) ++mismatches;
      }
    }
  }
  const bool ok = g_consistency.certificates > 0 && g_consistency.inconsistent == 0 && mismatches == 0;
  return {ok, std::to_string(g_consistency.certificates) + " certificates, " +
                  std::to_string(g_consistency.inconsistent) + " below oracle; cross-difference " +
                  std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches"};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome criterion_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "fqbasis_acceptance_determinism";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::vector<std::vector<std::string>> configs = {
      {"sweep", "--p", "3", "--m", "2", "--mode", "random", "--seed", "424242", "--trials", "2000"},
      {"sweep", "--p", "2", "--m", "4", "--mode", "random", "--seed", "7", "--trials", "1000", "--theorem", "sym8"},
      {"sweep", "--p", "2", "--m", "2", "--filter", "=q"},
      {"sweep", "--p", "5", "--m", "1", "--filter", ">=2q", "--theorem", "twoq8"},
  };
  int identical = 0;
  std::string detail;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "1", "2"}) {
      const auto base = dir / ("run" + std::to_string(i) + "_" + std::to_string(outputs.size()));
      auto args = configs[i];
      args.insert(args.end(), {"--threads", threads, "--out", base.string() + ".jsonl", "--summary",
                               base.string() + ".summary.json"});
      std::ostringstream out, err;
      const int code = cli::run(args, out, err);
      if (code != cli::kExitOk) detail += " config " + std::to_string(i) + " exit " + std::to_string(code);
      outputs.push_back(read_file(base.string() + ".jsonl") + read_file(base.string() + ".summary.json") + out.str());
    }
    if (!outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2]) ++identical;
  }
  std::filesystem::remove_all(dir);
  return {identical == static_cast<int>(configs.size()) && detail.empty(),
          std::to_string(identical) + "/" + std::to_string(configs.size()) +
              " configurations byte-identical over 3 runs" + detail};
}

}  // namespace
}  // namespace fqbasis

int main() {
  using namespace fqbasis;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "16AB = F_q, exhaustive q <= 9", criterion_main16},
      {2, "8AB = F_q for symmetric / antisymmetric B, exhaustive", criterion_sym_antisym},
      {3, "8AB = F_q at |A||B| >= 2q, exhaustive", criterion_twoq},
      {4, "16AB = F_q on 10000 seeded pairs at q = 13, 16, 25, 27", criterion_sampled},
      {5, "collision energy identity", criterion_energy},
      {6, "sumset lower bounds for the chosen xi, exhaustive q <= 8", criterion_xi_bounds},
      {7, "symmetric/antisymmetric extraction, exhaustive q <= 9", criterion_extraction},
      {8, "Kneser inequality and doubling dichotomy", criterion_kneser_dichotomy},
      {9, "sharpness constructions at |A||B| = q", criterion_sharpness},
      {10, "oracle consistency and cross-difference set", criterion_oracle_consistency},
      {11, "byte-identical repeated sweeps", criterion_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s [%d] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
