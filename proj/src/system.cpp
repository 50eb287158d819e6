// SPDX-License-Identifier: Apache-2.0

#include "fperr/system.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace fperr {

namespace {

void validate(const FpSystem& sys) {
  if (sys.base < 2) throw std::invalid_argument("base must be >= 2");
  if (sys.precision < 1) throw std::invalid_argument("precision exponent must be >= 1");
  if (sys.unperfect() && sys.emin >= -sys.precision)
    throw std::invalid_argument("emin must be smaller than -precision");
}

}  // namespace

FpSystem FpSystem::perfect(long base, long precision) {
  FpSystem s{SystemKind::Perfect, base, precision, 0};
  validate(s);
  return s;
}

FpSystem FpSystem::mpfr(long base, long precision, long emin) {
  FpSystem s{SystemKind::MPFR, base, precision, emin};
  validate(s);
  return s;
}

FpSystem FpSystem::ieee(long base, long precision, long emin) {
  FpSystem s{SystemKind::IEEE, base, precision, emin};
  validate(s);
  return s;
}

FpSystem FpSystem::parse(std::string_view spec) {
  auto fail = [&](const char* what, std::size_t at) -> long { throw parse_error(what, at); };
  std::size_t pos = spec.find(':');
  if (pos == std::string_view::npos) fail("expected ':' after system kind", spec.size());
  std::string_view kind = spec.substr(0, pos);

  auto field = [&](char tag) {
    if (pos >= spec.size()) fail("missing field", pos);
    ++pos;  // ':'
    if (pos >= spec.size() || spec[pos] != tag) fail("unexpected field tag", pos);
    std::size_t start = ++pos;
    if (pos < spec.size() && spec[pos] == '-') ++pos;
    while (pos < spec.size() && std::isdigit(static_cast<unsigned char>(spec[pos]))) ++pos;
    if (pos == start) fail("expected number", pos);
    return std::atol(std::string(spec.substr(start, pos - start)).c_str());
  };

  long base = field('b');
  long mu = field('m');
  FpSystem out;
  if (kind == "perfect") {
    out = perfect(base, mu);
  } else if (kind == "ieee") {
    out = ieee(base, mu, field('e'));
  } else if (kind == "mpfr") {
    out = mpfr(base, mu, field('e'));
  } else {
    fail("unknown system kind", 0);
  }
  if (pos != spec.size()) fail("trailing characters", pos);
  return out;
}

std::string FpSystem::str() const {
  std::string out;
  switch (kind) {
    case SystemKind::Perfect: out = "perfect"; break;
    case SystemKind::MPFR: out = "mpfr"; break;
    case SystemKind::IEEE: out = "ieee"; break;
  }
  out += ":b" + std::to_string(base) + ":m" + std::to_string(precision);
  if (unperfect()) out += ":e" + std::to_string(emin);
  return out;
}

Derived derive(const FpSystem& sys) {
  Derived d;
  d.u = Rat(1) / Rat(2 * Rat::pow_base(sys.base, sys.precision));
  switch (sys.kind) {
    case SystemKind::Perfect:
      d.alpha = Rat(0);
      d.nu = Rat(0);
      break;
    case SystemKind::IEEE:
      d.alpha = Rat::pow_base(sys.base, sys.emin);
      d.nu = Rat::pow_base(sys.base, sys.emin + sys.precision);
      break;
    case SystemKind::MPFR:
      d.nu = Rat::pow_base(sys.base, sys.emin + sys.precision);
      d.alpha = d.nu;
      break;
  }
  return d;
}

long ilog_base(long base, const Rat& value) {
  if (value.sign() <= 0) throw std::domain_error("ilog_base needs a positive value");
  // Bit-length estimate, then exact correction.
  double bits = static_cast<double>(mpz_sizeinbase(value.num().get_mpz_t(), 2)) -
                static_cast<double>(mpz_sizeinbase(value.den().get_mpz_t(), 2));
  long t = static_cast<long>(bits * 0.6931471805599453 / std::log(static_cast<double>(base)));
  while (Rat::pow_base(base, t) > value) --t;
  while (Rat::pow_base(base, t + 1) <= value) ++t;
  return t;
}

NormalForm normal_form(const FpSystem& sys, const Rat& z) {
  if (z.is_zero()) throw std::domain_error("normal form of zero");
  NormalForm nf;
  nf.sign = z.sign();
  Rat a = abs(z);
  long t = ilog_base(sys.base, a);
  nf.exponent = t - sys.precision;
  nf.remainder = a * Rat::pow_base(sys.base, -nf.exponent) - Rat::pow_base(sys.base, sys.precision);
  return nf;
}

Rat reconstruct(const FpSystem& sys, const NormalForm& nf) {
  Rat mag = Rat::pow_base(sys.base, nf.exponent) *
            (Rat::pow_base(sys.base, sys.precision) + nf.remainder);
  return nf.sign < 0 ? -mag : mag;
}

bool contains(const FpSystem& sys, const Rat& x) {
  if (x.is_zero()) return true;
  if (sys.unperfect()) {
    Derived d = derive(sys);
    Rat a = abs(x);
    if (a < d.nu) {
      if (sys.kind != SystemKind::IEEE) return false;
      Rat r = a / d.alpha;
      return r.is_integer();  // 0 < r < base^mu guaranteed by a < nu
    }
  }
  NormalForm nf = normal_form(sys, x);
  if (!nf.remainder.is_integer()) return false;
  return !sys.unperfect() || nf.exponent >= sys.emin;
}

Neighbors neighbors(const FpSystem& sys, const Rat& z) {
  if (z.is_zero()) return {Rat(0), Rat(0)};
  if (sys.unperfect()) {
    Derived d = derive(sys);
    Rat a = abs(z);
    if (a < d.nu) {
      if (sys.kind == SystemKind::IEEE) {
        Rat scaled = z / d.alpha;
        return {d.alpha * Rat(scaled.floor()), d.alpha * Rat(scaled.ceil())};
      }
      // MPFR: nothing strictly between 0 and nu.
      return z.sign() > 0 ? Neighbors{Rat(0), d.nu} : Neighbors{-d.nu, Rat(0)};
    }
  }
  NormalForm nf = normal_form(sys, z);
  Rat step = Rat::pow_base(sys.base, nf.exponent);
  Rat base_mag = Rat::pow_base(sys.base, sys.precision + nf.exponent);
  Rat lo_mag = base_mag + step * Rat(nf.remainder.floor());
  if (nf.remainder.is_integer()) return {z, z};
  Rat hi_mag = lo_mag + step;
  if (z.sign() > 0) return {lo_mag, hi_mag};
  return {-hi_mag, -lo_mag};
}

namespace {

void require_member(const FpSystem& sys, const Rat& x, const char* who) {
  if (!contains(sys, x)) throw std::domain_error(std::string(who) + ": input is not a member of the system");
}

}  // namespace

bool is_exact_small_sum(const FpSystem& sys, const Rat& x, const Rat& y) {
  require_member(sys, x, "is_exact_small_sum");
  require_member(sys, y, "is_exact_small_sum");
  Derived d = derive(sys);
  Rat s = abs(x + y);
  Rat top = Rat(sys.base) * d.nu;
  bool hyp = (s >= d.alpha && s <= top) ||
             (sys.kind == SystemKind::IEEE && !s.is_zero() && s <= top);
  if (hyp && !contains(sys, x + y))
    throw std::logic_error("exact-sum lemma violated; this is a bug");
  return hyp;
}

bool sterbenz_exact(const FpSystem& sys, const Rat& a, const Rat& b) {
  require_member(sys, a, "sterbenz_exact");
  require_member(sys, b, "sterbenz_exact");
  Rat diff = b - a;
  bool hyp = diff >= derive(sys).alpha && diff <= a;
  if (hyp && !contains(sys, diff))
    throw std::logic_error("Sterbenz exactness violated; this is a bug");
  return hyp;
}

std::vector<Rat> members_up_to(const FpSystem& sys, const Rat& max_abs) {
  if (!sys.unperfect())
    throw std::invalid_argument("members_up_to: perfect systems are infinite below any bound");
  std::vector<Rat> positives;
  Derived d = derive(sys);
  if (sys.kind == SystemKind::IEEE) {
    for (long r = 1; Rat(r) < Rat::pow_base(sys.base, sys.precision); ++r) {
      Rat v = d.alpha * Rat(r);
      if (v > max_abs) break;
      positives.push_back(v);
    }
  }
  Rat bmu = Rat::pow_base(sys.base, sys.precision);
  long span = (sys.base - 1) * static_cast<long>(bmu.num().get_si());
  for (long e = sys.emin;; ++e) {
    Rat scale = Rat::pow_base(sys.base, e);
    if (scale * bmu > max_abs) break;
    for (long r = 0; r < span; ++r) {
      Rat v = scale * (bmu + Rat(r));
      if (v > max_abs) break;
      positives.push_back(v);
    }
  }
  std::vector<Rat> out;
  out.reserve(positives.size() * 2 + 1);
  for (auto it = positives.rbegin(); it != positives.rend(); ++it) out.push_back(-*it);
  out.push_back(Rat(0));
  for (const Rat& v : positives) out.push_back(v);
  return out;
}

std::vector<Rat> positive_members_in_binades(const FpSystem& sys, long binade_lo, long binade_hi) {
  std::vector<Rat> out;
  Rat bmu = Rat::pow_base(sys.base, sys.precision);
  long span = (sys.base - 1) * static_cast<long>(bmu.num().get_si());
  for (long b = binade_lo; b <= binade_hi; ++b) {
    long e = b - sys.precision;
    if (sys.unperfect() && e < sys.emin) continue;
    Rat scale = Rat::pow_base(sys.base, e);
    for (long r = 0; r < span; ++r) out.push_back(scale * (bmu + Rat(r)));
  }
  return out;
}

}  // namespace fperr
