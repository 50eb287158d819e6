// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fperr/accumulate.hpp"

namespace fperr {

/// The closed-form error-bound catalog. Each kind is one formula together
/// with its hypotheses; `n` counts roundings throughout, so a sum or dot
/// has n+1 summands (pairs) and an fma dot with parameter n uses an
/// (n+1)-tuple.
enum class BoundKind {
  PerOpSharp,               // |fl(z)-z| <= |z| u/(1+u), |z| >= nu
  PerOpClassic,             // |fl(z)-z| <= |z| u/(1-u)
  NaiveGamma,               // gamma_n = nu/(1-nu) times sum |x_k|
  NormOneSharp,             // (nu/(1+nu)) sum |y_k|
  NormOneLinear,            // nu sum |y_k|
  NormOneUnperfect,         // n a/2 + (nu/(1+nu)) (n a/2 + sum |y_k|)
  MaxQuadratic,             // (n(n+1)u/(1+nu)) max |y_k|
  CumulativePositiveUpper,  // tau_n u sum of prefix sums, y_k >= 0
  CumulativePositiveLower,  // (u/(1+u)) sum of prefix sums, y_k >= 0
  CumulativeSigned,         // (u/(1-(n-2)u)) sum |prefix sums|
  SignedUnperfect,          // (1+2nu) n a/2 + (u/(1-(n-2)u)) sum |prefix|
  SignedUnperfectReduced,   // (3/2)(1+nu/2) u sum |prefix|, u sum >= n a
  DotPerfect,               // beta_n u sum |x_k y_k|
  DotPerfectLinear,         // (n+1) u sum |x_k y_k|
  DotIEEE,                  // 1.05 (n+1) a/2 + beta_n u sum
  DotIEEEReduced,           // (3/2)(n+1) u sum, u sum >= a
  DotMPFR,                  // (2.05 n + 1.05) a/2 + beta_n u sum
  FmaPerfect,               // ((n+1)u/(1+(n+1)u)) sum |x_k y_k|
  FmaUnperfect,             // (n+1) a/2 + ((n+1)u/(1+(n+1)u)) ((n+1)a/2 + sum)
  ProductChain,             // |p_hat_k / p_k - 1| <= k u, k <= 3
};

std::string_view kind_name(BoundKind kind);  // "norm-one-sharp", ...
std::optional<BoundKind> kind_from_name(std::string_view name);
const std::vector<BoundKind>& all_kinds();

/// Aggregates a bound evaluation may consume. `observed` is the signed
/// deviation fl - exact of the computation being judged; each kind orients
/// it itself (absolute value for two-sided bounds, +delta / -delta for the
/// one-sided cumulative pair, the relative deviation for ProductChain).
struct BoundInputs {
  std::optional<Rat> norm1;
  std::optional<Rat> cumulative_abs;
  std::optional<Rat> max_abs;
  std::optional<bool> all_nonnegative;
  std::optional<bool> all_members;
  std::optional<Rat> observed;

  static BoundInputs from_summary(const ErrorSummary& s);
};

struct Hypothesis {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct BoundReport {
  BoundKind kind = BoundKind::NormOneSharp;
  std::vector<Hypothesis> hypotheses;
  bool applicable = false;  // conjunction of the hypotheses
  Rat bound_value;
  std::optional<Rat> observed;  // oriented per kind; <= bound_value iff satisfied
  std::optional<Rat> ratio;     // observed / bound when bound > 0

  bool satisfied() const { return !observed || *observed <= bound_value; }
};

/// Evaluates one bound. The bound value is always computed, even when some
/// hypothesis fails (applicable = false), so sweeps can chart hypothesis
/// boundaries; a missing aggregate for the kind is a usage error.
BoundReport evaluate(BoundKind kind, const FpSystem& sys, long n, const BoundInputs& in);

/// All aggregate-driven kinds with their hypotheses satisfied, sorted
/// ascending by exact bound value.
std::vector<BoundReport> tightest_applicable(const FpSystem& sys, long n, const BoundInputs& in);

/// beta_n = (n+1+3nu) / (1+(n+1)u+nu^2) of the per-product dot bounds.
Rat dot_beta_factor(long n, const Rat& u);
/// tau_n = 1 / (1 + u((base-2)/(base-1) + n/(base^n - 1))) of the positive
/// cumulative upper bound.
Rat cumulative_tau_factor(long base, long n, const Rat& u);

}  // namespace fperr
