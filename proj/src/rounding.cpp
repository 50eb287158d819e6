// SPDX-License-Identifier: Apache-2.0

#include "fperr/rounding.hpp"

namespace fperr {

TiePolicy parse_policy(std::string_view name) {
  if (name == "down") return TiePolicy::Downward;
  if (name == "up") return TiePolicy::Upward;
  if (name == "even") return TiePolicy::ToEven;
  throw parse_error("unknown tie policy '" + std::string(name) + "'", 0);
}

std::string_view policy_name(TiePolicy policy) {
  switch (policy) {
    case TiePolicy::Downward: return "down";
    case TiePolicy::Upward: return "up";
    case TiePolicy::ToEven: return "even";
  }
  return "?";
}

namespace {

// Tie between value-ordered candidates lo < hi whose integer remainders on
// the generating grid are r_lo and r_lo + 1 in magnitude order; for negative
// values the magnitude order is (hi, lo).
Rat pick_tie(TiePolicy policy, const Rat& lo, const Rat& hi, const mpz_class& mag_lo_rem,
             bool negative) {
  switch (policy) {
    case TiePolicy::Downward: return lo;
    case TiePolicy::Upward: return hi;
    case TiePolicy::ToEven: {
      bool lo_mag_even = mpz_even_p(mag_lo_rem.get_mpz_t()) != 0;
      // magnitude-lower candidate is `lo` for positive values, `hi` for negative
      const Rat& mag_lo = negative ? hi : lo;
      const Rat& mag_hi = negative ? lo : hi;
      return lo_mag_even ? mag_lo : mag_hi;
    }
  }
  return lo;
}

Rat round_nearest(const FpSystem& sys, TiePolicy policy, const Rat& z) {
  if (z.is_zero()) return z;
  bool negative = z.sign() < 0;
  if (sys.unperfect()) {
    Derived d = derive(sys);
    Rat a = abs(z);
    if (sys.kind == SystemKind::IEEE && a < d.nu) {
      // subnormal grid base^emin * r, including r = 0
      Rat scaled = z / d.alpha;
      if (scaled.is_integer()) return z;
      Rat lo = d.alpha * Rat(scaled.floor());
      Rat hi = d.alpha * Rat(scaled.ceil());
      Rat mid = (lo + hi) / Rat(2);
      if (z < mid) return lo;
      if (z > mid) return hi;
      mpz_class mag_lo_rem = negative ? ::abs(scaled.ceil()) : ::abs(scaled.floor());
      if (policy == TiePolicy::ToEven && (lo.is_zero() || hi.is_zero())) return Rat(0);
      return pick_tie(policy, lo, hi, mag_lo_rem, negative);
    }
    if (sys.kind == SystemKind::MPFR && a <= d.alpha) {
      // fl(z) in {0, sign(z) alpha}; below alpha/2 only 0 is nearest
      Rat twice = a * Rat(2);
      Rat cap = negative ? -d.alpha : d.alpha;
      if (twice < d.alpha) return Rat(0);
      if (twice > d.alpha) return cap;
      Rat lo = negative ? cap : Rat(0);
      Rat hi = negative ? Rat(0) : cap;
      if (policy == TiePolicy::ToEven) return Rat(0);
      return pick_tie(policy, lo, hi, 0, negative);
    }
  }
  NormalForm nf = normal_form(sys, z);
  mpz_class fw = nf.remainder.floor();
  if (nf.remainder == Rat(fw)) return z;  // member: rounding is the identity
  Rat step = Rat::pow_base(sys.base, nf.exponent);
  Rat lo_mag = Rat::pow_base(sys.base, sys.precision + nf.exponent) + step * Rat(fw);
  Rat hi_mag = lo_mag + step;
  Rat lo = negative ? -hi_mag : lo_mag;
  Rat hi = negative ? -lo_mag : hi_mag;
  Rat mid = (lo + hi) / Rat(2);
  if (z < mid) return lo;
  if (z > mid) return hi;
  return pick_tie(policy, lo, hi, fw, negative);
}

// fl(sqrt(q)) for q >= 0 by comparing q against squared grid points.
Rat round_sqrt_nearest(const FpSystem& sys, TiePolicy policy, const Rat& q) {
  if (q.sign() < 0) throw std::domain_error("round_sqrt of a negative value");
  if (q.is_zero()) return Rat(0);
  if (sys.unperfect()) {
    Derived d = derive(sys);
    Rat nu2 = d.nu * d.nu;
    if (sys.kind == SystemKind::IEEE && q < nu2) {
      // sqrt(q) on the subnormal grid: r = floor(sqrt(q)/alpha)
      mpz_class r = isqrt_floor(q / (d.alpha * d.alpha));
      Rat lo = d.alpha * Rat(r);
      Rat hi = d.alpha * Rat(mpz_class(r + 1));
      Rat mid = (lo + hi) / Rat(2);
      auto c = cmp_sqrt(q, mid);
      if (c == std::strong_ordering::less) return lo;
      if (c == std::strong_ordering::greater) return hi;
      if (policy == TiePolicy::ToEven && lo.is_zero()) return Rat(0);
      return pick_tie(policy, lo, hi, r, false);
    }
    if (sys.kind == SystemKind::MPFR && q <= d.alpha * d.alpha) {
      Rat half = d.alpha / Rat(2);
      auto c = cmp_sqrt(q, half);
      if (c == std::strong_ordering::less) return Rat(0);
      if (c == std::strong_ordering::greater) return d.alpha;
      if (policy == TiePolicy::ToEven) return Rat(0);
      return pick_tie(policy, Rat(0), d.alpha, 0, false);
    }
  }
  // normal range: find e with base^(2(e+mu)) <= q < base^(2(e+mu)+2)
  long t = ilog_base(sys.base, q);
  long e = (t >= 0 ? t / 2 : -((-t + 1) / 2)) - sys.precision;
  Rat bmu = Rat::pow_base(sys.base, sys.precision);
  mpz_class big = isqrt_floor(q * Rat::pow_base(sys.base, -2 * e));
  Rat r = Rat(big) - bmu;
  Rat step = Rat::pow_base(sys.base, e);
  Rat lo = step * (bmu + r);
  if (cmp_sqrt(q, lo) == std::strong_ordering::equal) return lo;  // exact square
  Rat hi = lo + step;
  Rat mid = lo + step / Rat(2);
  auto c = cmp_sqrt(q, mid);
  if (c == std::strong_ordering::less) return lo;
  if (c == std::strong_ordering::greater) return hi;
  return pick_tie(policy, lo, hi, r.floor(), false);
}

TiePolicy flipped(TiePolicy policy) {
  switch (policy) {
    case TiePolicy::Downward: return TiePolicy::Upward;
    case TiePolicy::Upward: return TiePolicy::Downward;
    case TiePolicy::ToEven: return TiePolicy::ToEven;
  }
  return policy;
}

}  // namespace

TiePolicy Rounder::effective_policy() const {
  return sigma_ < 0 ? flipped(policy_) : policy_;
}

Rat Rounder::round(const Rat& z) const {
  if (sigma_ == 1 && scale_m_ == 0) return round_nearest(sys_, policy_, z);
  Rat scale = Rat::pow_base(sys_.base, scale_m_);
  Rat t = scale * z;
  if (sigma_ < 0) t = -t;
  Rat r = round_nearest(sys_, policy_, t);
  if (sigma_ < 0) r = -r;
  return r / scale;
}

Rat Rounder::round_sqrt(const Rat& q) const {
  if (q.sign() < 0) throw std::domain_error("round_sqrt of a negative value");
  if (sigma_ == 1 && scale_m_ == 0) return round_sqrt_nearest(sys_, policy_, q);
  // sigma beta^-m fl(sigma beta^m sqrt(q)): the inner value is
  // +-sqrt(beta^(2m) q), and a negated argument flips the tie direction.
  Rat q_scaled = q * Rat::pow_base(sys_.base, 2 * scale_m_);
  Rat r = round_sqrt_nearest(sys_, effective_policy(), q_scaled);
  return r * Rat::pow_base(sys_.base, -scale_m_);
}

Rounder Rounder::symmetric() const {
  Rounder out = *this;
  out.sigma_ = -out.sigma_;
  return out;
}

Rounder Rounder::scaled(long m, int sigma) const {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
  if (sys_.unperfect())
    throw std::invalid_argument("scaled rounders need a perfect system: scale invariance fails below nu");
  Rounder out = *this;
  out.sigma_ *= sigma;
  out.scale_m_ += m;
  return out;
}

RoundingTuple::RoundingTuple(std::vector<Rounder> rounders) : rounders_(std::move(rounders)) {
  if (rounders_.empty()) throw std::invalid_argument("rounding tuple must not be empty");
  for (const Rounder& r : rounders_)
    if (!(r.system() == rounders_.front().system()))
      throw std::invalid_argument("all rounders in a tuple must share one system");
}

RoundingTuple RoundingTuple::uniform(const FpSystem& sys, TiePolicy policy, std::size_t n) {
  return RoundingTuple(std::vector<Rounder>(n, Rounder(sys, policy)));
}

RoundingTuple RoundingTuple::of_policies(const FpSystem& sys, const std::vector<TiePolicy>& policies) {
  std::vector<Rounder> rs;
  rs.reserve(policies.size());
  for (TiePolicy p : policies) rs.emplace_back(sys, p);
  return RoundingTuple(std::move(rs));
}

const FpSystem& RoundingTuple::system() const { return rounders_.front().system(); }

}  // namespace fperr
