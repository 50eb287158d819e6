// SPDX-License-Identifier: Apache-2.0

#include "fperr/rational.hpp"

#include <cctype>
#include <ostream>

namespace fperr {

Rat::Rat(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (sgn(den) == 0) throw std::domain_error("rational with zero denominator");
  v_.canonicalize();
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  return Rat(mpq_class(a.v_ / b.v_));
}

Rat Rat::pow_base(long base, long exponent) {
  if (base < 2) throw std::domain_error("base must be at least 2");
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Rat(p);
  return Rat(mpz_class(1), p);
}

mpz_class Rat::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

mpz_class Rat::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

namespace {

std::size_t scan_digits(std::string_view s, std::size_t pos) {
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  return pos;
}

mpz_class digits_to_z(std::string_view s) { return mpz_class(std::string(s), 10); }

}  // namespace

Rat Rat::parse(std::string_view text) { return parse(text, 0); }

Rat Rat::parse(std::string_view text, long base) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::size_t start = pos;
  pos = scan_digits(text, pos);
  if (pos == start) throw parse_error("expected digits", pos);
  mpz_class head = digits_to_z(text.substr(start, pos - start));

  Rat value;
  if (pos == text.size()) {
    value = Rat(head);
  } else if (text[pos] == '/') {
    std::size_t dstart = ++pos;
    pos = scan_digits(text, pos);
    if (pos == dstart) throw parse_error("expected denominator digits", pos);
    if (pos != text.size()) throw parse_error("trailing characters", pos);
    mpz_class den = digits_to_z(text.substr(dstart, pos - dstart));
    if (den == 0) throw parse_error("zero denominator", dstart);
    value = Rat(head, den);
  } else if (text[pos] == '.') {
    std::size_t fstart = ++pos;
    pos = scan_digits(text, pos);
    if (pos == fstart) throw parse_error("expected fraction digits", pos);
    if (pos != text.size()) throw parse_error("trailing characters", pos);
    std::string_view frac = text.substr(fstart, pos - fstart);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    value = Rat(head * scale + digits_to_z(frac), scale);
  } else if (text[pos] == '@') {
    if (base < 2) throw parse_error("scaled form m@e needs an ambient base", pos);
    std::size_t estart = ++pos;
    bool eneg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      eneg = text[pos] == '-';
      ++pos;
      estart = pos;
    }
    pos = scan_digits(text, pos);
    if (pos == estart) throw parse_error("expected exponent digits", pos);
    if (pos != text.size()) throw parse_error("trailing characters", pos);
    mpz_class e = digits_to_z(text.substr(estart, pos - estart));
    if (!e.fits_slong_p()) throw parse_error("exponent out of range", estart);
    long exp = e.get_si();
    value = Rat(head) * pow_base(base, eneg ? -exp : exp);
  } else {
    throw parse_error("unexpected character", pos);
  }
  return negative ? -value : value;
}

std::string Rat::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rat::decimal(int digits) const {
  if (digits < 0) digits = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round to nearest, ties away from zero
  mpz_class num = v_.get_num() * scale * 2 + v_.get_den() * (sign() < 0 ? -1 : 1);
  mpz_class scaled;
  mpz_tdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), mpz_class(v_.get_den() * 2).get_mpz_t());
  mpz_class mag = ::abs(scaled);
  std::string s = mag.get_str();
  std::string out = sgn(scaled) < 0 ? "-" : "";
  if (digits == 0) return out + s;
  if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return out + s;
}

Rat pow_rat(const Rat& base, long exponent) {
  if (exponent == 0) return Rat(1);
  if (base.is_zero() && exponent < 0) throw std::domain_error("zero to a negative power");
  unsigned long mag = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.num().get_mpz_t(), mag);
  mpz_pow_ui(den.get_mpz_t(), base.den().get_mpz_t(), mag);
  return exponent > 0 ? Rat(num, den) : Rat(den, num);
}

std::strong_ordering cmp_sqrt(const Rat& q, const Rat& m) {
  if (q.sign() < 0 || m.sign() < 0) throw std::domain_error("cmp_sqrt needs nonnegative arguments");
  return q <=> m * m;
}

mpz_class isqrt_floor(const Rat& x) {
  if (x.sign() < 0) throw std::domain_error("isqrt_floor of negative value");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), x.floor().get_mpz_t());
  while (Rat(mpz_class((r + 1) * (r + 1))) <= x) ++r;
  while (Rat(mpz_class(r * r)) > x) --r;
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace fperr
