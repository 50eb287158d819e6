// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "doctest.h"
#include "fperr/system.hpp"
#include "fperr/verifier.hpp"

using namespace fperr;

namespace {

Rat q(const char* s) { return Rat::parse(s); }

Rat random_nonzero(Rng& rng) {
  Rat r;
  do {
    r = Rat(mpz_class(rng.range(-100000, 100000)), mpz_class(rng.range(1, 100000)));
  } while (r.is_zero());
  return r;
}

}  // namespace

TEST_CASE("derived constants") {
  Derived d = derive(FpSystem::perfect(2, 4));
  CHECK(d.u == q("1/32"));
  CHECK(d.alpha == Rat(0));
  CHECK(d.nu == Rat(0));

  d = derive(FpSystem::ieee(2, 3, -6));
  CHECK(d.u == q("1/16"));
  CHECK(d.alpha == q("1/64"));
  CHECK(d.nu == q("1/8"));

  d = derive(FpSystem::mpfr(10, 2, -5));
  CHECK(d.u == q("1/200"));
  CHECK(d.alpha == q("1/1000"));
  CHECK(d.nu == q("1/1000"));
}

TEST_CASE("system validation and spec strings") {
  CHECK_THROWS_AS(FpSystem::perfect(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(FpSystem::perfect(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(FpSystem::ieee(2, 3, -3), std::invalid_argument);  // emin >= -mu
  CHECK(FpSystem::parse("perfect:b2:m3") == FpSystem::perfect(2, 3));
  CHECK(FpSystem::parse("ieee:b2:m3:e-6") == FpSystem::ieee(2, 3, -6));
  CHECK(FpSystem::parse("mpfr:b10:m2:e-5") == FpSystem::mpfr(10, 2, -5));
  CHECK(FpSystem::parse("mpfr:b10:m2:e-5").str() == "mpfr:b10:m2:e-5");
  CHECK_THROWS_AS(FpSystem::parse("foo:b2:m3"), parse_error);
  CHECK_THROWS_AS(FpSystem::parse("perfect:b2"), parse_error);
  CHECK_THROWS_AS(FpSystem::parse("perfect:b2:m3:x"), parse_error);
}

TEST_CASE("normal form") {
  FpSystem sys = FpSystem::perfect(2, 3);
  NormalForm nf = normal_form(sys, q("81/64"));
  CHECK(nf.sign == 1);
  CHECK(nf.exponent == -3);
  CHECK(nf.remainder == q("17/8"));

  nf = normal_form(sys, Rat(1));
  CHECK(nf.sign == 1);
  CHECK(nf.exponent == -3);
  CHECK(nf.remainder == Rat(0));

  nf = normal_form(sys, Rat(-8));  // -beta^mu
  CHECK(nf.sign == -1);
  CHECK(nf.exponent == 0);
  CHECK(nf.remainder == Rat(0));

  CHECK_THROWS_AS(normal_form(sys, Rat(0)), std::domain_error);
}

TEST_CASE("normal form round-trips on random rationals") {
  for (const FpSystem& sys :
       {FpSystem::perfect(2, 3), FpSystem::perfect(10, 2), FpSystem::perfect(3, 4)}) {
    Rng rng(21);
    Rat span = Rat::pow_base(sys.base, sys.precision + 1) - Rat::pow_base(sys.base, sys.precision);
    for (int i = 0; i < 10000; ++i) {
      Rat z = random_nonzero(rng);
      NormalForm nf = normal_form(sys, z);
      CHECK(nf.remainder >= Rat(0));
      CHECK(nf.remainder < span);
      CHECK(reconstruct(sys, nf) == z);
    }
  }
}

TEST_CASE("membership") {
  FpSystem ieee = FpSystem::ieee(2, 3, -6);
  FpSystem mpfr = FpSystem::mpfr(2, 3, -6);
  CHECK(contains(ieee, q("3/64")));        // subnormal r = 3
  CHECK_FALSE(contains(mpfr, q("3/64")));  // below nu, no subnormals
  CHECK(contains(ieee, Rat(0)));
  CHECK(contains(ieee, q("-3/64")));
  CHECK(contains(mpfr, q("1/8")));  // nu itself

  // non-integer remainder is never a member
  FpSystem perfect = FpSystem::perfect(2, 3);
  Rat mid = Rat::pow_base(2, -3) * (Rat(8) + q("1/2"));
  CHECK_FALSE(contains(perfect, mid));
  CHECK_FALSE(contains(ieee, mid * Rat::pow_base(2, -3)));
  CHECK(contains(perfect, q("17/16") + q("1/16")));  // 9/8
}

TEST_CASE("membership respects the exponent floor") {
  FpSystem mpfr = FpSystem::mpfr(2, 3, -6);
  CHECK(contains(mpfr, q("1/8")));
  // 1/16 = 2^(-7) * (2^3 + 0) sits below the exponent floor
  CHECK_FALSE(contains(mpfr, q("1/16")));
}

TEST_CASE("neighbors") {
  FpSystem perfect = FpSystem::perfect(2, 3);
  Neighbors nb = neighbors(perfect, q("17/16"));
  CHECK(nb.below == Rat(1));
  CHECK(nb.above == q("9/8"));

  nb = neighbors(perfect, q("9/8"));
  CHECK(nb.below == q("9/8"));
  CHECK(nb.above == q("9/8"));

  FpSystem ieee = FpSystem::ieee(2, 3, -6);
  nb = neighbors(ieee, q("5/128"));
  CHECK(nb.below == q("2/64"));
  CHECK(nb.above == q("3/64"));

  nb = neighbors(ieee, q("-5/128"));
  CHECK(nb.below == q("-3/64"));
  CHECK(nb.above == q("-2/64"));

  nb = neighbors(perfect, Rat(0));
  CHECK(nb.below == Rat(0));
  CHECK(nb.above == Rat(0));

  FpSystem mpfr = FpSystem::mpfr(2, 3, -6);
  nb = neighbors(mpfr, q("1/20"));  // inside (0, nu)
  CHECK(nb.below == Rat(0));
  CHECK(nb.above == q("1/8"));
}

TEST_CASE("neighbors agree with the enumerated grid on a small IEEE system") {
  FpSystem sys = FpSystem::ieee(2, 3, -6);
  Rat limit = Rat(2);
  std::vector<Rat> slab = members_up_to(sys, limit);
  Rng rng(22);
  for (int i = 0; i < 4000; ++i) {
    // random rational well inside the slab
    Rat z = Rat(mpz_class(rng.range(-1500, 1500)), mpz_class(rng.range(1, 1000)));
    if (abs(z) > limit) continue;
    Neighbors nb = neighbors(sys, z);
    CHECK(contains(sys, nb.below));
    CHECK(contains(sys, nb.above));
    CHECK(nb.below <= z);
    CHECK(nb.above >= z);
    // brute-force against the slab
    Rat lo = slab.front(), hi = slab.back();
    for (const Rat& m : slab) {
      if (m <= z && m > lo) lo = m;
      if (m >= z && m < hi) hi = m;
    }
    CHECK(nb.below == lo);
    CHECK(nb.above == hi);
  }
}

TEST_CASE("alpha is minimal and nu bounds the normal range") {
  FpSystem sys = FpSystem::ieee(2, 3, -6);
  Derived d = derive(sys);
  for (const Rat& x : members_up_to(sys, Rat(4))) {
    if (x.is_zero()) continue;
    CHECK(abs(x) >= d.alpha);
    if (abs(x) >= d.nu) {
      NormalForm nf = normal_form(sys, x);
      CHECK(nf.remainder.is_integer());
      CHECK(nf.exponent >= sys.emin);
    }
  }
}

TEST_CASE("scale closure") {
  FpSystem perfect = FpSystem::perfect(3, 2);
  Rng rng(23);
  for (int i = 0; i < 2000; ++i) {
    Rat z = random_nonzero(rng);
    bool in = contains(perfect, z);
    CHECK(contains(perfect, z * Rat(3)) == in);
    CHECK(contains(perfect, z / Rat(3)) == in);
  }
  FpSystem ieee = FpSystem::ieee(2, 3, -6);
  for (const Rat& x : members_up_to(ieee, Rat(2))) CHECK(contains(ieee, x * Rat(2)));
}

TEST_CASE("exact small sums") {
  FpSystem ieee = FpSystem::ieee(2, 3, -6);
  CHECK(is_exact_small_sum(ieee, q("3/64"), q("5/64")));
  CHECK(contains(ieee, q("8/64")));
  CHECK_FALSE(is_exact_small_sum(ieee, Rat(0), Rat(0)));

  FpSystem mpfr = FpSystem::mpfr(2, 3, -6);
  // 3/16 - 1/8 = 1/16 < alpha: hypothesis fails, and indeed 1/16 is no member
  CHECK_FALSE(is_exact_small_sum(mpfr, q("3/16"), q("-1/8")));
  CHECK_FALSE(contains(mpfr, q("1/16")));

  CHECK_THROWS_AS(is_exact_small_sum(ieee, q("1/3"), Rat(0)), std::domain_error);
}

TEST_CASE("sterbenz") {
  FpSystem perfect = FpSystem::perfect(2, 3);
  CHECK(sterbenz_exact(perfect, q("3/2"), Rat(2)));
  CHECK(contains(perfect, q("1/2")));
  CHECK(sterbenz_exact(perfect, Rat(1), Rat(1)));  // b - a = 0 >= alpha = 0

  FpSystem mpfr = FpSystem::mpfr(2, 3, -6);
  CHECK_FALSE(sterbenz_exact(mpfr, Rat(1), Rat(1)));            // 0 < alpha
  CHECK_FALSE(sterbenz_exact(mpfr, q("1/8"), q("3/16")));       // b - a = 1/16 < alpha
  CHECK_THROWS_AS(sterbenz_exact(mpfr, q("1/64"), Rat(1)), std::domain_error);
}

TEST_CASE("enumeration helpers") {
  FpSystem ieee = FpSystem::ieee(2, 3, -6);
  std::vector<Rat> slab = members_up_to(ieee, q("1/2"));
  CHECK(std::is_sorted(slab.begin(), slab.end()));
  CHECK(std::count(slab.begin(), slab.end(), Rat(0)) == 1);
  for (const Rat& x : slab) CHECK(contains(ieee, x));
  CHECK_THROWS_AS(members_up_to(FpSystem::perfect(2, 3), Rat(1)), std::invalid_argument);

  std::vector<Rat> window = positive_members_in_binades(FpSystem::perfect(2, 3), 0, 1);
  CHECK(window.size() == 16);  // two binades of 8
  CHECK(window.front() == Rat(1));
  CHECK(window.back() == q("15/4"));
}
