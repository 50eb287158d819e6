// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fperr/rational.hpp"

namespace fperr {

enum class SystemKind { Perfect, MPFR, IEEE };

/// A parameterized floating-point system F: base >= 2, precision exponent
/// mu >= 1, and for the unperfect kinds a minimal exponent emin < -mu.
/// Nonzero normal members have the form sign * base^e * (base^mu + r) with
/// integer r in [0, (base-1) base^mu); IEEE systems additionally contain the
/// subnormals base^emin * r with integer 0 < |r| < base^mu. Systems are
/// unbounded above: there is no emax and no overflow anywhere in this model.
struct FpSystem {
  SystemKind kind = SystemKind::Perfect;
  long base = 2;
  long precision = 1;
  long emin = 0;  // meaningful iff kind != Perfect

  static FpSystem perfect(long base, long precision);
  static FpSystem mpfr(long base, long precision, long emin);
  static FpSystem ieee(long base, long precision, long emin);

  /// "perfect:b<base>:m<mu>" | "ieee:b<base>:m<mu>:e<emin>" | "mpfr:..."
  static FpSystem parse(std::string_view spec);
  std::string str() const;

  bool unperfect() const { return kind != SystemKind::Perfect; }
  bool operator==(const FpSystem&) const = default;
};

/// u = 1/(2 base^mu); alpha = smallest positive member (0 for perfect);
/// nu = smallest positive normal member (0 for perfect).
struct Derived {
  Rat u;
  Rat alpha;
  Rat nu;
};
Derived derive(const FpSystem& sys);

/// Unique decomposition z = sign * base^e * (base^mu + w) with
/// w in [0, (base-1) base^mu), defined for every nonzero rational.
struct NormalForm {
  int sign = 1;
  long exponent = 0;
  Rat remainder;
};
NormalForm normal_form(const FpSystem& sys, const Rat& z);
Rat reconstruct(const FpSystem& sys, const NormalForm& nf);

/// Largest integer t with base^t <= value (value > 0).
long ilog_base(long base, const Rat& value);

/// Membership test by the integer-form decomposition; exact for all bases.
bool contains(const FpSystem& sys, const Rat& x);

/// Grid neighbors: largest member <= z and smallest member >= z
/// (both equal to z when z is a member; (0,0) at z = 0).
struct Neighbors {
  Rat below;
  Rat above;
};
Neighbors neighbors(const FpSystem& sys, const Rat& z);

/// Hypothesis check for the exact-sum lemmas: alpha <= |x+y| <= base*nu,
/// or (IEEE) 0 < |x+y| <= base*nu. When the hypotheses hold the sum is
/// verified to be a member; a failure would falsify the lemma and throws.
/// Inputs must be members.
bool is_exact_small_sum(const FpSystem& sys, const Rat& x, const Rat& y);

/// Sterbenz hypothesis alpha <= b-a <= a; verifies b-a is a member when it
/// holds. Inputs must be members.
bool sterbenz_exact(const FpSystem& sys, const Rat& a, const Rat& b);

/// Every member x with |x| <= max_abs, ascending. Unperfect systems only
/// (the perfect set is infinite below any bound); throws otherwise.
std::vector<Rat> members_up_to(const FpSystem& sys, const Rat& max_abs);

/// Positive normal members x with base^b <= x < base^(b+1) for b in
/// [binade_lo, binade_hi], ascending. Binades whose exponent is invalid for
/// the system are skipped.
std::vector<Rat> positive_members_in_binades(const FpSystem& sys, long binade_lo, long binade_hi);

}  // namespace fperr
