// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fperr/rounding.hpp"

namespace fperr {

/// Full per-step record of a rounded accumulation.
///
/// `summands` are the n+1 quantities whose sum is being approximated (the
/// x_k of a sum, the exact products x_k y_k of a dot product). `parcels`
/// are the accumulation arguments z_1..z_N after the first-pair convention:
/// a sum of n+1 numbers uses n roundings with z_1 = x_0 + x_1 fused exactly.
/// Every pre-rounding value is kept as an exact rational.
struct SumTrace {
  FpSystem system;
  std::vector<Rat> summands;
  std::vector<Rat> parcels;
  std::vector<Rat> partials;     // s_0 = 0, s_k = fl_k(s_{k-1} + z_k), all members
  std::vector<Rat> step_errors;  // s_k - (s_{k-1} + z_k)
  std::vector<std::optional<Rat>> xi_factors;  // s_k / (s_{k-1} + z_k) when defined
  std::vector<Rat> exact_products;             // dot / fma traces only
  std::vector<Rat> rounded_products;           // fp_dot only

  const Rat& result() const { return partials.back(); }
  Rat exact_sum() const;
  Rat total_error() const { return result() - exact_sum(); }
};

struct DotInputs {
  std::vector<Rat> x;
  std::vector<Rat> y;
};

/// S_N over the given parcels with no fusing; summands supplied separately
/// for the error aggregates.
SumTrace accumulate_raw(const RoundingTuple& tuple, std::vector<Rat> parcels,
                        std::vector<Rat> summands);

/// The rounded sum of n+1 numbers with n roundings: the first two summands
/// fuse exactly into z_1 = x_0 + x_1 before any rounding.
SumTrace fp_sum(const RoundingTuple& tuple, std::span<const Rat> xs);

/// Plain variant without the fused first pair: one rounding per summand.
/// Exploration only; the bound catalog is stated for fp_sum's convention.
SumTrace fp_sum_plain(const RoundingTuple& tuple, std::span<const Rat> xs);

/// Dot product with every product rounded first, then accumulated by
/// fp_sum's convention: n+1 product rounders, n sum rounders.
SumTrace fp_dot(const RoundingTuple& sum_tuple, std::span<const Rounder> product_rounders,
                const DotInputs& d);

/// Fused-multiply-add dot product: S_{n+1} over the exact products, one
/// rounding per step (the first step rounds x_0 y_0 alone).
SumTrace fma_dot(const RoundingTuple& tuple, const DotInputs& d);

/// Exact aggregates of a trace, the raw material for every bound:
/// norm1 = sum |summands|, cumulative_abs = sum_k |sum of parcels up to k|,
/// max_abs = max |summand|, plus the input properties hypothesis checks need.
struct ErrorSummary {
  Rat total_error;
  Rat norm1;
  Rat cumulative_abs;
  Rat max_abs;
  bool all_nonnegative = false;  // over summands
  bool all_members = false;      // over summands
};
ErrorSummary error_summary(const SumTrace& t);

/// Machine-readable per-step records, one JSON object per line:
/// {"k":1,"input":...,"partial_before":...,"partial_after":...,"step_error":...}
std::string trace_records(const SumTrace& t);

}  // namespace fperr
