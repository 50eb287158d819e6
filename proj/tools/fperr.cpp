// SPDX-License-Identifier: Apache-2.0

// fperr: exact-arithmetic playground and verifier for parameterized
// floating-point systems, round-to-nearest tie policies, rounded
// accumulation, sharp error bounds, and worst-case witnesses.
//
// Every number is an exact rational printed as p/q; nothing is ever
// evaluated in hardware floating point. There is no default system and no
// default tie policy: each invocation states both. Systems are unbounded
// above, so no command reports overflow.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fperr/verifier.hpp"

using namespace fperr;

namespace {

struct NumberStyle {
  int decimal_digits = -1;  // >= 0 adds an approximate decimal annotation
  std::string show(const Rat& r) const {
    if (decimal_digits < 0) return r.str();
    return r.str() + " (~" + r.decimal(decimal_digits) + ")";
  }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<TiePolicy> parse_policy_list(const std::string& text) {
  std::vector<TiePolicy> out;
  for (const std::string& p : split(text, ',')) out.push_back(parse_policy(p));
  if (out.empty()) throw std::invalid_argument("empty policy list");
  return out;
}

RoundingTuple tuple_for(const FpSystem& sys, const std::string& policy_text, std::size_t n) {
  std::vector<TiePolicy> ps = parse_policy_list(policy_text);
  if (ps.size() == 1) return RoundingTuple::uniform(sys, ps[0], n);
  if (ps.size() != n)
    throw std::invalid_argument("policy list length must match the number of roundings (" +
                                std::to_string(n) + ")");
  return RoundingTuple::of_policies(sys, ps);
}

std::vector<Rat> parse_values(const std::vector<std::string>& texts, long base) {
  std::vector<Rat> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(Rat::parse(t, base));
  return out;
}

std::vector<Rat> parse_csv_values(const std::string& text, long base) {
  return parse_values(split(text, ','), base);
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* env = std::getenv("FPERR_SEED")) return std::strtoull(env, nullptr, 10);
  return fallback;
}

void print_trace_summary(const SumTrace& t, const NumberStyle& style, bool want_trace,
                         bool want_json) {
  if (want_json) {
    std::cout << "{\"record\":\"result\",\"system\":\"" << t.system.str() << "\",\"result\":\""
              << t.result().str() << "\",\"error\":\"" << t.total_error().str() << "\"}\n";
    if (want_trace) std::cout << trace_records(t);
    return;
  }
  std::cout << "result " << style.show(t.result()) << "\n";
  std::cout << "error " << style.show(t.total_error()) << "\n";
  if (want_trace) std::cout << trace_records(t);
}

int run_verify(std::uint64_t seed, long trials, bool json, const std::string& corpus_dir);
SweepConfig load_sweep_config(const std::string& path);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact floating-point rounding-error laboratory"};
  app.require_subcommand(1);

  std::string system_text, policy_text, product_policy_text, value_text;
  std::string xs_text, ys_text, config_path, corpus_dir, kind_text, witness_name, exps_text;
  std::vector<std::string> values_text;
  NumberStyle style;
  long n_param = 1;
  long mu = 7, beta = 2;
  bool no_fuse_first = false, want_trace = false, want_json = false;
  std::string norm1_text, cum_text, max_text, observed_text;
  bool all_nonneg = false, all_members = false, verbose = false;
  long trials = 2000;
  std::uint64_t seed = 1;
  bool seed_given = false;

  auto add_system = [&](CLI::App* cmd) {
    cmd->add_option("--system", system_text, "system spec, e.g. perfect:b2:m3 or ieee:b2:m3:e-6")
        ->required();
  };
  auto add_policy = [&](CLI::App* cmd) {
    cmd->add_option("--policy", policy_text, "tie policy: down | up | even (or a comma list)")
        ->required();
  };
  auto add_decimal = [&](CLI::App* cmd) {
    cmd->add_option("--decimal", style.decimal_digits,
                    "annotate outputs with a k-digit decimal approximation");
  };

  CLI::App* round_cmd = app.add_subcommand("round", "round a rational to nearest");
  add_system(round_cmd);
  add_policy(round_cmd);
  add_decimal(round_cmd);
  round_cmd->add_option("value", value_text, "rational to round")->required();

  CLI::App* sqrt_cmd = app.add_subcommand("sqrt-round", "round the square root of a rational");
  add_system(sqrt_cmd);
  add_policy(sqrt_cmd);
  add_decimal(sqrt_cmd);
  sqrt_cmd->add_option("value", value_text, "nonnegative rational under the root")->required();

  CLI::App* sum_cmd = app.add_subcommand("sum", "rounded recursive sum of n+1 rationals");
  add_system(sum_cmd);
  add_policy(sum_cmd);
  add_decimal(sum_cmd);
  sum_cmd->add_option("values", values_text, "summands")->required()->expected(-2);
  sum_cmd->add_flag("--no-fuse-first", no_fuse_first,
                    "round every summand (outside the standard convention)");
  sum_cmd->add_flag("--trace", want_trace, "print per-step records");
  sum_cmd->add_flag("--json", want_json, "machine-readable output");

  CLI::App* dot_cmd = app.add_subcommand("dot", "dot product with rounded products");
  add_system(dot_cmd);
  add_policy(dot_cmd);
  add_decimal(dot_cmd);
  dot_cmd->add_option("--x", xs_text, "comma list of x components")->required();
  dot_cmd->add_option("--y", ys_text, "comma list of y components")->required();
  dot_cmd->add_option("--product-policy", product_policy_text,
                      "tie policy for the products (defaults to --policy)");
  dot_cmd->add_flag("--trace", want_trace, "print per-step records");
  dot_cmd->add_flag("--json", want_json, "machine-readable output");

  CLI::App* fma_cmd = app.add_subcommand("fma-dot", "dot product with fused multiply-adds");
  add_system(fma_cmd);
  add_policy(fma_cmd);
  add_decimal(fma_cmd);
  fma_cmd->add_option("--x", xs_text, "comma list of x components")->required();
  fma_cmd->add_option("--y", ys_text, "comma list of y components")->required();
  fma_cmd->add_flag("--trace", want_trace, "print per-step records");
  fma_cmd->add_flag("--json", want_json, "machine-readable output");

  CLI::App* bound_cmd = app.add_subcommand("bound", "evaluate one error bound");
  bound_cmd->add_option("kind", kind_text, "bound kind, e.g. norm-one-sharp")->required();
  add_system(bound_cmd);
  add_decimal(bound_cmd);
  bound_cmd->add_option("--n", n_param, "number of roundings")->required();
  bound_cmd->add_option("--norm1", norm1_text, "sum of |summands| (or |x_k y_k|)");
  bound_cmd->add_option("--cum", cum_text, "sum of |prefix sums|");
  bound_cmd->add_option("--max", max_text, "max |summand|");
  bound_cmd->add_option("--observed", observed_text, "observed signed error fl - exact");
  bound_cmd->add_flag("--all-nonneg", all_nonneg, "summands are all nonnegative");
  bound_cmd->add_flag("--all-members", all_members, "summands are members of the system");
  bound_cmd->add_flag("--verbose", verbose, "print hypotheses and applicability");

  CLI::App* witness_cmd = app.add_subcommand("witness", "generate and replay a worst-case family");
  witness_cmd->add_option("name", witness_name, "family name, e.g. norm-one-sharp")->required();
  witness_cmd->add_option("--n", n_param, "size parameter (m for quadratic-growth)")->required();
  witness_cmd->add_option("--mu", mu, "precision exponent of the perfect system")->required();
  witness_cmd->add_option("--beta", beta, "base of the perfect system (default 2)");
  add_policy(witness_cmd);
  add_decimal(witness_cmd);
  witness_cmd->add_option("--exponents", exps_text, "comma list e_1..e_n for max-cumulative");
  witness_cmd->add_flag("--json", want_json, "machine-readable output");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification battery");
  verify_cmd->add_option("--trials", trials, "trials per sweep configuration");
  verify_cmd->add_option("--seed", seed, "sweep seed (FPERR_SEED overrides the default)")
      ->each([&](const std::string&) { seed_given = true; });
  verify_cmd->add_flag("--json", want_json, "machine-readable report");
  verify_cmd->add_option("--corpus-dir", corpus_dir, "write argmax inputs per bound kind here");

  CLI::App* sweep_cmd = app.add_subcommand("sweep-report", "run one sweep and print its records");
  sweep_cmd->add_option("--config", config_path, "key=value sweep config file");
  sweep_cmd->add_option("--system", system_text, "system spec");
  sweep_cmd->add_option("--policy", policy_text, "comma list of tie policies");
  sweep_cmd->add_option("--n-lo", n_param, "smallest n");
  long n_hi = 8;
  sweep_cmd->add_option("--n-hi", n_hi, "largest n");
  sweep_cmd->add_option("--trials", trials, "trial count");
  sweep_cmd->add_option("--seed", seed, "seed (FPERR_SEED overrides the default)")
      ->each([&](const std::string&) { seed_given = true; });
  std::string generator_text = "log-uniform-binades";
  sweep_cmd->add_option("--generator", generator_text, "input generator");
  std::string kinds_text;
  sweep_cmd->add_option("--kinds", kinds_text, "comma list of bound kinds (default battery)");

  try {
    app.parse(argc, argv);

    if (round_cmd->parsed()) {
      FpSystem sys = FpSystem::parse(system_text);
      Rounder r(sys, parse_policy(policy_text));
      std::cout << style.show(r.round(Rat::parse(value_text, sys.base))) << "\n";
      return 0;
    }

    if (sqrt_cmd->parsed()) {
      FpSystem sys = FpSystem::parse(system_text);
      Rounder r(sys, parse_policy(policy_text));
      std::cout << style.show(r.round_sqrt(Rat::parse(value_text, sys.base))) << "\n";
      return 0;
    }

    if (sum_cmd->parsed()) {
      FpSystem sys = FpSystem::parse(system_text);
      std::vector<Rat> xs = parse_values(values_text, sys.base);
      std::size_t roundings = no_fuse_first ? xs.size() : xs.size() - 1;
      RoundingTuple tuple = tuple_for(sys, policy_text, roundings);
      SumTrace t = no_fuse_first ? fp_sum_plain(tuple, xs) : fp_sum(tuple, xs);
      print_trace_summary(t, style, want_trace, want_json);
      return 0;
    }

    if (dot_cmd->parsed()) {
      FpSystem sys = FpSystem::parse(system_text);
      DotInputs d{parse_csv_values(xs_text, sys.base), parse_csv_values(ys_text, sys.base)};
      if (d.x.size() < 2) throw std::invalid_argument("dot needs at least two pairs");
      RoundingTuple tuple = tuple_for(sys, policy_text, d.x.size() - 1);
      std::string pp = product_policy_text.empty() ? policy_text : product_policy_text;
      std::vector<TiePolicy> pps = parse_policy_list(pp);
      std::vector<Rounder> prods;
      for (std::size_t k = 0; k < d.x.size(); ++k)
        prods.emplace_back(sys, pps[pps.size() == 1 ? 0 : k % pps.size()]);
      SumTrace t = fp_dot(tuple, prods, d);
      print_trace_summary(t, style, want_trace, want_json);
      return 0;
    }

    if (fma_cmd->parsed()) {
      FpSystem sys = FpSystem::parse(system_text);
      DotInputs d{parse_csv_values(xs_text, sys.base), parse_csv_values(ys_text, sys.base)};
      RoundingTuple tuple = tuple_for(sys, policy_text, d.x.size());
      SumTrace t = fma_dot(tuple, d);
      print_trace_summary(t, style, want_trace, want_json);
      return 0;
    }

    if (bound_cmd->parsed()) {
      FpSystem sys = FpSystem::parse(system_text);
      auto kind = kind_from_name(kind_text);
      if (!kind) throw std::invalid_argument("unknown bound kind '" + kind_text + "'");
      BoundInputs in;
      if (!norm1_text.empty()) in.norm1 = Rat::parse(norm1_text, sys.base);
      if (!cum_text.empty()) in.cumulative_abs = Rat::parse(cum_text, sys.base);
      if (!max_text.empty()) in.max_abs = Rat::parse(max_text, sys.base);
      if (!observed_text.empty()) in.observed = Rat::parse(observed_text, sys.base);
      if (all_nonneg) in.all_nonnegative = true;
      if (all_members) in.all_members = true;
      BoundReport rep = evaluate(*kind, sys, n_param, in);
      std::cout << style.show(rep.bound_value) << "\n";
      if (verbose) {
        std::cout << "applicable " << (rep.applicable ? "true" : "false") << "\n";
        for (const Hypothesis& h : rep.hypotheses)
          std::cout << "hypothesis " << h.name << " " << (h.holds ? "holds" : "fails")
                    << (h.detail.empty() ? "" : " (" + h.detail + ")") << "\n";
        if (rep.observed) std::cout << "observed " << style.show(*rep.observed) << "\n";
        if (rep.ratio) std::cout << "ratio " << style.show(*rep.ratio) << "\n";
      }
      return 0;
    }

    if (witness_cmd->parsed()) {
      FpSystem sys = FpSystem::perfect(beta, mu);
      std::optional<std::vector<long>> exps;
      if (!exps_text.empty()) {
        std::vector<long> es;
        for (const std::string& e : split(exps_text, ',')) es.push_back(std::stol(e));
        exps = std::move(es);
      }
      Witness w = make_witness(witness_name, sys, n_param, parse_policy(policy_text), exps);
      Replay r = replay(w);
      if (want_json) {
        std::cout << "{\"record\":\"witness\",\"name\":\"" << w.name << "\",\"system\":\""
                  << sys.str() << "\",\"policy\":\"" << policy_name(w.policy)
                  << "\",\"result\":\"" << r.actual_result.str() << "\",\"error\":\""
                  << r.actual_error.str() << "\",\"replay\":\"" << (r.pass ? "PASS" : "FAIL")
                  << "\"}\n";
      } else {
        std::cout << "inputs";
        for (const Rat& x : w.inputs) std::cout << " " << x.str();
        std::cout << "\n";
        for (const std::string& note : w.constraint_notes) std::cout << "note " << note << "\n";
        std::cout << "result " << style.show(r.actual_result) << " error "
                  << style.show(r.actual_error) << ", replay: " << (r.pass ? "PASS" : "FAIL")
                  << "\n";
        if (!r.pass)
          std::cout << "residual result " << r.result_residual.str() << " error "
                    << r.error_residual.str() << "\n";
      }
      return r.pass ? 0 : 1;
    }

    if (verify_cmd->parsed()) {
      return run_verify(seed_given ? seed : seed_from_env(seed), trials, want_json, corpus_dir);
    }

    if (sweep_cmd->parsed()) {
      SweepConfig cfg;
      if (!config_path.empty()) cfg = load_sweep_config(config_path);
      if (!system_text.empty()) cfg.system = FpSystem::parse(system_text);
      if (!policy_text.empty()) cfg.policies = parse_policy_list(policy_text);
      if (sweep_cmd->count("--n-lo")) cfg.n_lo = n_param;
      if (sweep_cmd->count("--n-hi")) cfg.n_hi = n_hi;
      if (sweep_cmd->count("--trials")) cfg.trials = trials;
      cfg.seed = seed_given ? seed : seed_from_env(cfg.seed);
      if (sweep_cmd->count("--generator")) cfg.generator = parse_generator(generator_text);
      if (!kinds_text.empty()) {
        cfg.kinds.clear();
        for (const std::string& k : split(kinds_text, ',')) {
          auto kind = kind_from_name(k);
          if (!kind) throw std::invalid_argument("unknown bound kind '" + k + "'");
          cfg.kinds.push_back(*kind);
        }
      }
      SweepReport rep = sweep(cfg);
      std::cout << rep.machine_records();
      return rep.total_violations() == 0 ? 0 : 1;
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      app.exit(e);
      return 0;
    }
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

namespace {

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  SweepConfig cfg;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (key == "system") cfg.system = FpSystem::parse(value);
    else if (key == "policies") cfg.policies = parse_policy_list(value);
    else if (key == "n_lo") cfg.n_lo = std::stol(value);
    else if (key == "n_hi") cfg.n_hi = std::stol(value);
    else if (key == "trials") cfg.trials = std::stol(value);
    else if (key == "seed") cfg.seed = std::strtoull(value.c_str(), nullptr, 10);
    else if (key == "generator") cfg.generator = parse_generator(value);
    else if (key == "binade_lo") cfg.binade_lo = std::stol(value);
    else if (key == "binade_hi") cfg.binade_hi = std::stol(value);
    else if (key == "inject_witnesses") cfg.inject_witnesses = value == "true" || value == "1";
    else if (key == "kinds") {
      cfg.kinds.clear();
      for (const std::string& k : split(value, ',')) {
        auto kind = kind_from_name(k);
        if (!kind) throw std::invalid_argument("unknown bound kind '" + k + "'");
        cfg.kinds.push_back(*kind);
      }
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" +
                                  key + "'");
    }
  }
  return cfg;
}

struct StageOutcome {
  std::string name;
  long checked = 0;
  long violations = 0;
};

int run_verify(std::uint64_t seed, long trials, bool json, const std::string& corpus_dir) {
  std::vector<StageOutcome> stages;
  std::ostringstream machine;
  long violations = 0;

  auto stage = [&](const std::string& name, long checked, long bad) {
    stages.push_back({name, checked, bad});
    violations += bad;
    machine << "{\"record\":\"stage\",\"name\":\"" << name << "\",\"checked\":" << checked
            << ",\"violations\":" << bad << "}\n";
  };

  // witness replays and bound attainment
  {
    long checked = 0, bad = 0;
    FpSystem s10 = FpSystem::perfect(2, 10);
    FpSystem s12 = FpSystem::perfect(2, 12);
    for (long n = 1; n <= 8; ++n) {
      for (TiePolicy p : {TiePolicy::Downward, TiePolicy::Upward}) {
        Replay r = replay(norm_one_sharp(s10, n, p));
        ++checked;
        if (!r.pass) ++bad;
      }
      Replay rq = replay(quadratic_growth(s12, std::min<long>(n, 6), TiePolicy::Downward));
      ++checked;
      if (!rq.pass) ++bad;
      Replay rb = replay(min_cumulative(FpSystem::perfect(2, 5), std::min<long>(n, 4),
                                        TiePolicy::Downward));
      ++checked;
      if (!rb.pass) ++bad;
      Replay rm = replay(mixed_signs(s12, n, TiePolicy::Upward));
      ++checked;
      if (!rm.pass) ++bad;
    }
    for (long base : {2L, 3L}) {
      FpSystem sys = FpSystem::perfect(base, base == 2 ? 9 : 5);
      for (long n = 1; n <= 5; ++n) {
        Witness w = max_cumulative(sys, n, TiePolicy::Upward);
        Replay r = replay(w);
        ++checked;
        if (!r.pass) ++bad;
        BoundReport rep = evaluate(BoundKind::CumulativePositiveUpper, sys, n,
                                   BoundInputs::from_summary(error_summary(r.trace)));
        ++checked;
        if (!(rep.ratio && *rep.ratio == Rat(1))) ++bad;
      }
    }
    stage("witnesses", checked, bad);
  }

  // randomized bound sweeps
  {
    long checked = 0, bad = 0;
    struct Combo { SystemKind kind; long base; long mu; long emin; InputGenerator gen; };
    const Combo combos[] = {
        {SystemKind::Perfect, 2, 9, 0, InputGenerator::NearMidpoints},
        {SystemKind::Perfect, 3, 6, 0, InputGenerator::LogUniformBinades},
        {SystemKind::Perfect, 10, 3, 0, InputGenerator::MixedSigns},
        {SystemKind::IEEE, 2, 9, -14, InputGenerator::SubnormalHeavy},
        {SystemKind::IEEE, 3, 6, -11, InputGenerator::LogUniformBinades},
        {SystemKind::IEEE, 10, 3, -8, InputGenerator::NearMidpoints},
        {SystemKind::MPFR, 2, 9, -14, InputGenerator::SubnormalHeavy},
        {SystemKind::MPFR, 3, 6, -11, InputGenerator::NearMidpoints},
        {SystemKind::MPFR, 10, 3, -8, InputGenerator::LogUniformBinades},
    };
    for (const Combo& c : combos) {
      SweepConfig cfg;
      cfg.system = c.kind == SystemKind::Perfect ? FpSystem::perfect(c.base, c.mu)
                   : c.kind == SystemKind::IEEE  ? FpSystem::ieee(c.base, c.mu, c.emin)
                                                 : FpSystem::mpfr(c.base, c.mu, c.emin);
      cfg.policies = {TiePolicy::Downward, TiePolicy::Upward, TiePolicy::ToEven};
      cfg.n_lo = 1;
      cfg.n_hi = 20;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.generator = c.gen;
      cfg.inject_witnesses = c.kind == SystemKind::Perfect && c.base == 2;
      SweepReport rep = sweep(cfg);
      machine << rep.machine_records();
      for (const auto& [kind, st] : rep.stats) checked += st.applicable;
      bad += rep.total_violations();
      if (!corpus_dir.empty()) {
        std::filesystem::create_directories(corpus_dir);
        std::ofstream corpus(std::filesystem::path(corpus_dir) /
                                 (cfg.system.str() + ".argmax.txt"),
                             std::ios::app);
        for (const auto& [kind, st] : rep.stats) {
          if (!st.max_ratio) continue;
          corpus << cfg.system.str() << " " << kind_name(kind) << " trial=" << st.argmax_trial
                 << " ratio=" << st.max_ratio->str() << " inputs=";
          for (std::size_t i = 0; i < st.argmax_inputs.size(); ++i)
            corpus << (i ? "," : "") << st.argmax_inputs[i].str();
          corpus << "\n";
        }
      }
    }
    stage("bound-sweeps", checked, bad);
  }

  // exhaustive lemma checks on small unperfect systems
  {
    long checked = 0, bad = 0;
    for (const FpSystem& sys : {FpSystem::ieee(2, 3, -6), FpSystem::mpfr(2, 3, -6)}) {
      Derived d = derive(sys);
      PairExhaustiveReport rep = exhaustive_pairs(sys, Rat(sys.base * sys.base) * d.nu);
      checked += rep.pairs;
      bad += rep.failures;
    }
    FpSystem mpfr = FpSystem::mpfr(2, 3, -6);
    Derived d = derive(mpfr);
    ++checked;
    if (is_exact_small_sum(mpfr, Rat(3) * d.alpha / Rat(2), -d.alpha) ||
        contains(mpfr, d.alpha / Rat(2)))
      ++bad;
    stage("exhaustive-pairs", checked, bad);
  }

  // square-root roundtrips
  {
    long checked = 0, bad = 0;
    for (TiePolicy p : {TiePolicy::Downward, TiePolicy::Upward, TiePolicy::ToEven}) {
      for (long msize = 3; msize <= 6; ++msize) {
        SqrtReport rep = sqrt_roundtrip(FpSystem::perfect(2, msize), -2, 2, p);
        checked += rep.checked;
        bad += rep.exact_failures + rep.ratio_failures;
      }
      for (long base : {3L, 10L}) {
        SqrtReport rep = sqrt_roundtrip(FpSystem::perfect(base, 2), -1, 1, p);
        checked += rep.checked;
        bad += rep.ratio_failures;
      }
      SqrtReport rep = sqrt_roundtrip(FpSystem::ieee(2, 4, -9), -1, 1, p);
      checked += rep.checked;
      bad += rep.exact_failures + rep.ratio_failures;
    }
    stage("sqrt-roundtrip", checked, bad);
  }

  // chained products
  {
    long checked = 0, bad = 0;
    for (long base : {2L, 10L}) {
      ProductChainReport rep = product_chain_check(
          FpSystem::perfect(base, base == 2 ? 9 : 3), trials, seed, TiePolicy::Downward);
      checked += rep.trials;
      bad += rep.violations;
    }
    stage("product-chain", checked, bad);
  }

  // per-op sharp bound
  {
    long checked = 0, bad = 0;
    for (const FpSystem& sys : {FpSystem::perfect(2, 9), FpSystem::ieee(2, 6, -12),
                                FpSystem::mpfr(10, 3, -9)}) {
      SimpleReport rep = per_op_sharp_check(sys, trials, seed);
      checked += rep.checked;
      bad += rep.violations;
    }
    stage("per-op-sharp", checked, bad);
  }

  // closed-form inequalities between the bound constants
  {
    SimpleReport rep = formula_inequalities_check();
    stage("formula-inequalities", rep.checked, rep.violations);
  }

  if (json) {
    std::cout << machine.str();
    std::cout << "{\"record\":\"verify-end\",\"violations\":" << violations << "}\n";
  } else {
    for (const StageOutcome& s : stages)
      std::cout << (s.violations == 0 ? "PASS" : "FAIL") << " " << s.name << " (" << s.checked
                << " checks, " << s.violations << " violations)\n";
    std::cout << (violations == 0 ? "OK" : "FAILED") << "\n";
  }
  return violations == 0 ? 0 : 1;
}

}  // namespace
