// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "fperr/bounds.hpp"
#include "fperr/witnesses.hpp"

namespace fperr {

/// Deterministic RNG: raw mt19937_64 output (standardized across
/// implementations) through plain reduction, so seeded runs are
/// byte-identical everywhere. Distribution quality is irrelevant here;
/// reproducibility is the contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool chance(unsigned num, unsigned den) { return below(den) < num; }

 private:
  std::mt19937_64 eng_;
};

/// Stream-splitting mix so each trial draws from an independent sequence.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

enum class InputGenerator { LogUniformBinades, NearMidpoints, MixedSigns, SubnormalHeavy };

InputGenerator parse_generator(std::string_view name);
std::string_view generator_name(InputGenerator g);

/// A randomized bound-checking run. Reproducible: the report is a pure
/// function of this struct. Policies rotate per trial; trial kinds rotate
/// sum / dot / fma; n is drawn per trial from [n_lo, n_hi].
struct SweepConfig {
  FpSystem system;
  std::vector<TiePolicy> policies{TiePolicy::Downward};
  long n_lo = 1;
  long n_hi = 8;
  long trials = 1000;
  std::uint64_t seed = 1;
  InputGenerator generator = InputGenerator::LogUniformBinades;
  std::vector<BoundKind> kinds;  // empty = full trace-driven battery
  bool inject_witnesses = false;
  long binade_lo = -4;  // magnitude window: values in [base^lo, base^(hi+1))
  long binade_hi = 4;
};

struct BoundStats {
  long checked = 0;
  long applicable = 0;
  long violations = 0;
  std::optional<Rat> max_ratio;
  long argmax_trial = -1;
  std::vector<Rat> argmax_inputs;
  std::string argmax_kind;  // "sum" | "dot" | "fma"
};

struct SweepReport {
  SweepConfig config;
  std::vector<std::pair<BoundKind, BoundStats>> stats;  // kind enum order

  long total_violations() const;
  const BoundStats* find(BoundKind kind) const;
  /// Machine-readable JSON lines; deterministic (no timing, fixed order).
  std::string machine_records() const;
  std::string table() const;
};

SweepReport sweep(const SweepConfig& cfg);

/// Exhaustive pair check of the exact-sum lemmas and Sterbenz subtraction
/// over all members with |x| <= max_abs. Unperfect systems only.
struct PairExhaustiveReport {
  long members = 0;
  long pairs = 0;
  long small_sum_hypothesis = 0;
  long ieee_sum_hypothesis = 0;
  long sterbenz_hypothesis = 0;
  long failures = 0;
  std::vector<std::string> counterexamples;
};
PairExhaustiveReport exhaustive_pairs(const FpSystem& sys, const Rat& max_abs);

/// fl(sqrt(fl(x^2))) over every normal member in the binade window with
/// x^2 >= nu: equals |x| exactly in base 2, and the rounded quotient
/// fl(|x| / fl(sqrt(fl(x^2)))) never exceeds 1 in any base.
struct SqrtReport {
  long checked = 0;
  long exact_failures = 0;  // base-2 identity failures
  long ratio_failures = 0;
  std::vector<std::string> failures;
};
SqrtReport sqrt_roundtrip(const FpSystem& sys, long binade_lo, long binade_hi, TiePolicy policy);

/// Chained products p_hat_k of random quadruples stay within [1-ku, 1+ku]
/// of the exact p_k for k = 1, 2, 3. Perfect systems only; degenerate draws
/// with some p_k = 0 are resampled.
struct ProductChainReport {
  long trials = 0;
  long violations = 0;
  std::vector<std::string> failures;
};
ProductChainReport product_chain_check(const FpSystem& sys, long trials, std::uint64_t seed,
                                       TiePolicy policy);

struct SimpleReport {
  long checked = 0;
  long violations = 0;
  std::vector<std::string> failures;
};

/// Random values with |z| >= nu, half of them exact midpoints: the rounding
/// error never exceeds |z| u/(1+u), under every tie policy.
SimpleReport per_op_sharp_check(const FpSystem& sys, long trials, std::uint64_t seed);

/// Exact inequalities between the bound constants over a (base, u, n) grid
/// with 20nu <= 1: tau_n <= 1 with tau_1 = 1/(1+u), the beta_n majorants,
/// the kappa_n bracket, u/(1+u) < u < u/(1-u), sharp <= linear norm-one,
/// and the three-factor linearization chain.
SimpleReport formula_inequalities_check();

/// Hill climb toward the worst observed/bound ratio for one bound kind,
/// moving partial sums onto grid midpoints (where the maximizers live).
struct SearchResult {
  std::vector<Rat> inputs;
  Rat ratio{-1};
  long improvements = 0;
};
SearchResult worst_ratio_search(const FpSystem& sys, BoundKind kind, long n, long budget,
                                std::uint64_t seed, TiePolicy policy,
                                const std::vector<Rat>* start = nullptr);

}  // namespace fperr
