#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include "fqbasis/collision.hpp"
#include "fqbasis/errors.hpp"
#include "fqbasis/json_io.hpp"
#include "fqbasis/sharpness.hpp"
#include "fqbasis/sweep.hpp"
#include "fqbasis/theorem.hpp"

namespace fqbasis::cli {
namespace {

using nlohmann::json;

constexpr const char* kOutDirEnv = "FQBASIS_OUT_DIR";

struct FieldArgs {
  std::uint32_t p = 0;
  std::uint32_t m = 1;
};

void add_field_options(CLI::App* cmd, FieldArgs& f) {
  cmd->add_option("--p", f.p, "Characteristic (prime)")->required();
  cmd->add_option("--m", f.m, "Extension degree")->default_val(1);
}

std::optional<TheoremId> theorem_option(const std::string& name) {
  if (name == "auto") return std::nullopt;
  auto id = parse_theorem_id(name);
  if (!id) throw PreconditionError("unknown theorem '" + name + "' (auto, antisym8, sym8, main16, twoq8)");
  return id;
}

json oracle_json(const OracleResult& r) { return to_json(r); }

int emit(std::ostream& out, const json& j, int code = kExitOk) {
  out << j.dump(2) << '\n';
  return code;
}

std::string default_sweep_path(const SweepConfig& c) {
  const char* dir = std::getenv(kOutDirEnv);
  if (dir == nullptr || *dir == '\0') return {};
  std::string name = "sweep_p" + std::to_string(c.p) + "_m" + std::to_string(c.m);
  if (c.mode == SweepMode::random) name += "_seed" + std::to_string(*c.seed);
  return (std::filesystem::path(dir) / (name + ".jsonl")).string();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certify and brute-force check additive bases N(AB) = F_q over finite fields"};
  app.require_subcommand(1);

  // field
  FieldArgs field_args;
  auto* field_cmd = app.add_subcommand("field", "Print the canonical field description");
  add_field_options(field_cmd, field_args);

  // verify
  FieldArgs verify_field;
  std::string verify_a, verify_b, verify_theorem_name = "auto";
  std::optional<int> verify_cap;
  bool verify_replay = false;
  auto* verify_cmd = app.add_subcommand("verify", "Certify N(AB) = F_q for one pair and run the oracle");
  add_field_options(verify_cmd, verify_field);
  verify_cmd->add_option("--A", verify_a, "Set literal, e.g. 0,1,3")->required();
  verify_cmd->add_option("--B", verify_b, "Set literal")->required();
  verify_cmd->add_option("--theorem", verify_theorem_name, "auto|antisym8|sym8|main16|twoq8");
  verify_cmd->add_option("--cap", verify_cap, "Oracle cap (default 2q)");
  verify_cmd->add_flag("--replay", verify_replay, "Replay the certificate and report mismatches");

  // oracle
  FieldArgs oracle_field;
  std::string oracle_x;
  std::optional<int> oracle_cap;
  auto* oracle_cmd = app.add_subcommand("oracle", "Least k with kX = F_q");
  add_field_options(oracle_cmd, oracle_field);
  oracle_cmd->add_option("--X", oracle_x, "Set literal")->required();
  oracle_cmd->add_option("--cap", oracle_cap, "Largest k tried (default 2q)");

  // energy
  FieldArgs energy_field;
  std::string energy_a, energy_b;
  auto* energy_cmd = app.add_subcommand("energy", "Check the summed collision-energy identity");
  add_field_options(energy_cmd, energy_field);
  energy_cmd->add_option("--A", energy_a, "Set literal")->required();
  energy_cmd->add_option("--B", energy_b, "Set literal")->required();

  // counterexample
  FieldArgs ce_field;
  std::string ce_kind;
  std::uint32_t ce_k = 0, ce_l = 0;
  std::optional<int> ce_cap;
  auto* ce_cmd = app.add_subcommand("counterexample", "Build a pair with |A||B| = q that is not a basis");
  ce_cmd->add_option("kind", ce_kind, "trivial|subfield|box")->required()->check(
      CLI::IsMember({"trivial", "subfield", "box"}));
  add_field_options(ce_cmd, ce_field);
  ce_cmd->add_option("--k", ce_k, "Box: terms in A");
  ce_cmd->add_option("--l", ce_l, "Box: terms in B");
  ce_cmd->add_option("--cap", ce_cap, "Oracle cap (default 4q)");

  // sweep
  FieldArgs sweep_field;
  std::string sweep_mode = "exhaustive", sweep_filter = ">q", sweep_theorem = "auto";
  std::string sweep_out, sweep_summary_path, sweep_csv;
  SweepConfig sweep_cfg;
  std::optional<std::uint64_t> sweep_seed;
  std::optional<int> sweep_cap;
  auto* sweep_cmd = app.add_subcommand("sweep", "Check many pairs exhaustively or by seeded sampling");
  add_field_options(sweep_cmd, sweep_field);
  sweep_cmd->add_option("--mode", sweep_mode, "exhaustive|random")->check(CLI::IsMember({"exhaustive", "random"}));
  sweep_cmd->add_option("--filter", sweep_filter, "Pair filter: >q, >=2q, =q or an integer lower bound");
  sweep_cmd->add_option("--trials", sweep_cfg.trials, "Accepted pairs in random mode");
  sweep_cmd->add_option("--seed", sweep_seed, "RNG seed (random mode)");
  sweep_cmd->add_option("--theorem", sweep_theorem, "auto|antisym8|sym8|main16|twoq8");
  sweep_cmd->add_option("--cap", sweep_cap, "Oracle cap (default 2q)");
  sweep_cmd->add_option("--threads", sweep_cfg.threads, "Worker threads")->default_val(1);
  sweep_cmd->add_option("--budget", sweep_cfg.exhaustive_budget, "Exhaustive pair budget (4^q must fit)");
  sweep_cmd->add_option("--out", sweep_out, "JSON Lines output for per-pair records");
  sweep_cmd->add_option("--summary", sweep_summary_path, "Summary JSON path (default <out>.summary.json)");
  sweep_cmd->add_option("--csv", sweep_csv, "Also write a one-row CSV summary");
  sweep_cmd->add_flag("--timing", sweep_cfg.timing, "Include wall-clock timings (output no longer reproducible)");

  std::vector<const char*> argv{"fqbasis"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*field_cmd) {
      const FieldPtr f = make_field(field_args.p, field_args.m);
      json j = field_to_json(f->spec());
      j["q"] = f->q();
      j["primitive_element"] = f->primitive_index();
      return emit(out, j);
    }

    if (*verify_cmd) {
      const FieldPtr f = make_field(verify_field.p, verify_field.m);
      const FqSubset a = parse_set_literal(f, verify_a);
      const FqSubset b = parse_set_literal(f, verify_b);
      const auto theorem = theorem_option(verify_theorem_name);
      PairReport report = verify_pair(a, b, verify_cap);
      if (theorem) {
        report.certificate = verify_theorem(*theorem, a, b);
        report.consistent = report.oracle.minimal_order.has_value() &&
                            report.certificate->claimed_order >= *report.oracle.minimal_order;
      }
      json j = to_json(report);
      if (verify_replay && report.certificate) {
        const ReplayResult rr = replay_certificate(*report.certificate);
        j["replay"] = {{"ok", rr.ok}, {"mismatches", rr.mismatches}};
        if (!rr.ok) return emit(out, j, kExitViolation);
      }
      return emit(out, j, report.consistent ? kExitOk : kExitViolation);
    }

    if (*oracle_cmd) {
      const FieldPtr f = make_field(oracle_field.p, oracle_field.m);
      return emit(out, oracle_json(minimal_basis_order(parse_set_literal(f, oracle_x), oracle_cap)));
    }

    if (*energy_cmd) {
      const FieldPtr f = make_field(energy_field.p, energy_field.m);
      const FqSubset a = parse_set_literal(f, energy_a);
      const FqSubset b = parse_set_literal(f, energy_b);
      const EnergyIdentityReport r = energy_identity_check(a, b);
      const json j = {{"q", f->q()},
                      {"A", subset_to_json(a)},
                      {"B", subset_to_json(b)},
                      {"total", r.total},
                      {"expected", r.expected},
                      {"equal", r.equal}};
      return emit(out, j, r.equal ? kExitOk : kExitViolation);
    }

    if (*ce_cmd) {
      json j = {{"construction", ce_kind}};
      FieldPtr f;
      std::optional<SetPair> pair;
      std::optional<FqSubset> closed;
      if (ce_kind == "box") {
        if (ce_cmd->count("--k") == 0 || ce_cmd->count("--l") == 0) {
          throw PreconditionError("box needs --k and --l");
        }
        BoxCounterexample box = box_counterexample(ce_field.p, ce_field.m, ce_k, ce_l);
        f = box.field;
        j["generator"] = box.generator.index();
        j["k"] = ce_k;
        j["l"] = ce_l;
        j["C"] = subset_to_json(box.c);
        j["C_size"] = box.c.cardinality();
        j["AB_in_C"] = productset(box.a, box.b).is_subset_of(box.c);
        j["C_closed_under_addition"] = sumset(box.c, box.c) == box.c;
        closed = box.c;
        pair = SetPair{box.a, box.b};
      } else {
        f = make_field(ce_field.p, ce_field.m);
        pair = ce_kind == "trivial" ? trivial_counterexample(f) : subfield_counterexample(f);
      }
      const FqSubset ab = productset(pair->a, pair->b);
      const OracleResult oracle = minimal_basis_order(ab, ce_cap.value_or(static_cast<int>(4 * f->q())));
      j["field"] = field_to_json(f->spec());
      j["A"] = subset_to_json(pair->a);
      j["B"] = subset_to_json(pair->b);
      j["product_size"] = std::uint64_t{pair->a.cardinality()} * pair->b.cardinality();
      j["AB"] = subset_to_json(ab);
      j["oracle"] = oracle_json(oracle);
      const bool sharp = !oracle.minimal_order.has_value() && j["product_size"] == f->q();
      j["sharp"] = sharp;
      return emit(out, j, sharp ? kExitOk : kExitViolation);
    }

    if (*sweep_cmd) {
      sweep_cfg.p = sweep_field.p;
      sweep_cfg.m = sweep_field.m;
      sweep_cfg.mode = sweep_mode == "random" ? SweepMode::random : SweepMode::exhaustive;
      sweep_cfg.filter = PairFilter::parse(sweep_filter);
      sweep_cfg.seed = sweep_seed;
      sweep_cfg.theorem = theorem_option(sweep_theorem);
      sweep_cfg.oracle_cap = sweep_cap;
      validate(sweep_cfg);

      if (sweep_out.empty()) sweep_out = default_sweep_path(sweep_cfg);
      std::ofstream records;
      if (!sweep_out.empty()) {
        records.open(sweep_out, std::ios::binary | std::ios::trunc);
        if (!records) throw PreconditionError("cannot write " + sweep_out);
      }
      const bool timing = sweep_cfg.timing;
      const SweepSummary summary = sweep(sweep_cfg, [&](const PairRecord& r) {
        if (records.is_open()) records << to_json(r, timing).dump() << '\n';
      });
      const json sj = to_json(summary, timing);
      if (sweep_summary_path.empty() && !sweep_out.empty()) sweep_summary_path = sweep_out + ".summary.json";
      if (!sweep_summary_path.empty()) {
        std::ofstream s(sweep_summary_path, std::ios::binary | std::ios::trunc);
        if (!s) throw PreconditionError("cannot write " + sweep_summary_path);
        s << sj.dump(2) << '\n';
      }
      if (!sweep_csv.empty()) {
        std::ofstream csv(sweep_csv, std::ios::binary | std::ios::trunc);
        if (!csv) throw PreconditionError("cannot write " + sweep_csv);
        csv << "p,m,mode,filter,theorem,candidates,checked,skipped,certified,max_claimed_order,"
               "max_oracle_order,oracle_none,violations\n";
        csv << sweep_cfg.p << ',' << sweep_cfg.m << ',' << sweep_mode << ',' << sweep_cfg.filter.to_string() << ','
            << sweep_theorem << ',' << summary.candidates << ',' << summary.checked << ',' << summary.skipped << ','
            << summary.certified << ',' << summary.max_claimed_order.value_or(0) << ','
            << summary.max_oracle_order.value_or(0) << ',' << summary.oracle_none << ','
            << summary.violation_count << '\n';
      }
      return emit(out, sj, summary.violation_count == 0 ? kExitOk : kExitViolation);
    }
  } catch (const LemmaViolation& e) {
    err << "VIOLATION: " << e.what() << '\n';
    return kExitViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fqbasis::cli
