// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fperr {

/// Raised by the text parsers; carries the byte offset of the offending
/// character within the input.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Exact rational scalar.
///
/// Always stored in lowest terms with denominator >= 1; zero is 0/1.
/// Values are immutable once constructed and safe to share between threads.
/// All arithmetic is exact field arithmetic over Q; there is no hardware
/// floating point anywhere in this type.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit on purpose, integers embed in Q
  Rat(const mpz_class& n) : v_(n) {}
  Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }
  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b);

  Rat& operator+=(const Rat& b) { v_ += b.v_; return *this; }
  Rat& operator-=(const Rat& b) { v_ -= b.v_; return *this; }
  Rat& operator*=(const Rat& b) { v_ *= b.v_; return *this; }
  Rat& operator/=(const Rat& b) { return *this = *this / b; }

  friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t());
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  /// Exact beta^e for any base >= 2 and signed exponent.
  static Rat pow_base(long base, long exponent);

  mpz_class floor() const;
  mpz_class ceil() const;

  /// Parses "p/q", plain integers, and exact decimals ("1.25").
  static Rat parse(std::string_view text);
  /// Also accepts the scaled-integer form "m@e" meaning m * base^e.
  static Rat parse(std::string_view text, long base);

  /// Canonical form: "p" when integral, "p/q" otherwise.
  std::string str() const;
  /// Approximate decimal with the given number of fraction digits,
  /// rounded to nearest (ties away from zero). For annotations only.
  std::string decimal(int digits) const;

 private:
  mpq_class v_;
};

inline Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }

/// Exact integer power of a rational (negative exponents invert; 0^e with
/// e < 0 is a domain error).
Rat pow_rat(const Rat& base, long exponent);

/// Orders sqrt(q) against m without materializing the square root:
/// both sides are nonnegative, so the ordering of q and m*m decides.
std::strong_ordering cmp_sqrt(const Rat& q, const Rat& m);

/// Largest integer r with r*r <= x (x >= 0).
mpz_class isqrt_floor(const Rat& x);

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace fperr
