// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fperr/accumulate.hpp"

namespace fperr {

/// A witness hypothesis does not hold for the requested parameters.
class constraint_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A worst-case input family instance: inputs plus the exact predicted
/// rounded result and total error. Replaying the inputs through fp_sum
/// under (system, policy) must reproduce the prediction exactly.
struct Witness {
  std::string name;
  FpSystem system;
  TiePolicy policy;
  std::vector<Rat> inputs;
  Rat predicted_result;
  Rat predicted_error;
  std::vector<std::string> constraint_notes;
};

/// x_0 = 1, x_k = u: error exactly -nu (Downward) or +nu (Upward, needs
/// 2nu < 1); attains the sharp norm-one bound with ratio one.
Witness norm_one_sharp(const FpSystem& sys, long n, TiePolicy policy);

/// n = 2^m - 1 parcels near 1 whose running sums stay glued to integers;
/// error exactly -(n^2+2n+3)/3 u, quadratic in n over max |y_k|.
Witness quadratic_growth(const FpSystem& sys, long m, TiePolicy policy);

/// x_k = u^-k: every step ties downward onto the previous power; the error
/// meets the lower cumulative bound with factor kappa_n in (1-u, 1].
Witness min_cumulative(const FpSystem& sys, long n, TiePolicy policy);

/// Geometric escalation x_k = base^{e_k}(1+u) - base^{e_k-1}(1+2u) whose
/// partial sums all tie upward; with the default exponents e_k = k-1 the
/// error equals tau_n u times the cumulative sum exactly.
Witness max_cumulative(const FpSystem& sys, long n, TiePolicy policy,
                       std::optional<std::vector<long>> exponents = std::nullopt);

/// Halving negative tail after 1 + u: error exactly 2(1-2^-n)u, above the
/// positive-sum upper bound evaluated as if the signs were ignored.
Witness mixed_signs(const FpSystem& sys, long n, TiePolicy policy);

/// The eligible generator names: "norm-one-sharp", "quadratic-growth",
/// "min-cumulative", "max-cumulative", "mixed-signs".
const std::vector<std::string>& witness_names();

/// Dispatch by name; `n` is the family's size parameter (m for
/// quadratic-growth).
Witness make_witness(const std::string& name, const FpSystem& sys, long n, TiePolicy policy,
                     std::optional<std::vector<long>> exponents = std::nullopt);

struct Replay {
  bool pass = false;
  Rat actual_result;
  Rat actual_error;
  Rat result_residual;  // actual - predicted
  Rat error_residual;
  SumTrace trace;
};

/// Runs the witness inputs through fp_sum and compares exactly.
Replay replay(const Witness& w);

}  // namespace fperr
