// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fperr/system.hpp"

namespace fperr {

/// Tie selection among the two equidistant nearest candidates.
/// Downward picks the smaller value, Upward the larger. ToEven picks the
/// candidate with even integer remainder on its grid (and 0 for the tie at
/// half the smallest positive member); it is an extension kept out of the
/// worst-case witness families, which pin Downward or Upward.
enum class TiePolicy { Downward, Upward, ToEven };

TiePolicy parse_policy(std::string_view name);  // "down" | "up" | "even"
std::string_view policy_name(TiePolicy policy);

/// Round-to-nearest over the rationals for one system and tie policy,
/// optionally composed with sign mirroring and power-of-base scaling.
/// The induced function is total on Q, exact, and pure; rounders are
/// immutable and safe to share across threads.
class Rounder {
 public:
  Rounder(FpSystem sys, TiePolicy policy) : sys_(std::move(sys)), policy_(policy) {}

  const FpSystem& system() const { return sys_; }
  TiePolicy policy() const { return policy_; }

  Rat round(const Rat& z) const;

  /// fl(sqrt(q)) for q >= 0, computed by ordering sqrt(q) against grid
  /// points and midpoints via squaring; the square root itself is never
  /// materialized.
  Rat round_sqrt(const Rat& q) const;

  /// The rounder z -> -round(-z); swaps Downward and Upward ties.
  Rounder symmetric() const;

  /// The rounder z -> sigma * base^-m * round(sigma * base^m * z).
  /// Only perfect systems are scale invariant; others are rejected.
  Rounder scaled(long m, int sigma) const;

 private:
  FpSystem sys_;
  TiePolicy policy_;
  int sigma_ = 1;
  long scale_m_ = 0;

  TiePolicy effective_policy() const;
};

/// An ordered list of rounders sharing one system; position k rounds the
/// k-th partial sum.
class RoundingTuple {
 public:
  explicit RoundingTuple(std::vector<Rounder> rounders);
  static RoundingTuple uniform(const FpSystem& sys, TiePolicy policy, std::size_t n);
  static RoundingTuple of_policies(const FpSystem& sys, const std::vector<TiePolicy>& policies);

  std::size_t dimension() const { return rounders_.size(); }
  const Rounder& at(std::size_t k) const { return rounders_.at(k); }
  const FpSystem& system() const;

 private:
  std::vector<Rounder> rounders_;
};

}  // namespace fperr
