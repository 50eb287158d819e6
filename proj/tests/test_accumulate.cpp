// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "fperr/accumulate.hpp"
#include "fperr/verifier.hpp"

using namespace fperr;

namespace {

Rat q(const char* s) { return Rat::parse(s); }

std::vector<Rat> random_inputs(Rng& rng, std::size_t count) {
  std::vector<Rat> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(Rat(mpz_class(rng.range(-4000, 4000)), mpz_class(rng.range(1, 400))));
  return out;
}

}  // namespace

TEST_CASE("rounded sums of ones and us") {
  FpSystem sys = FpSystem::perfect(2, 7);  // u = 1/256
  Derived d = derive(sys);
  std::vector<Rat> xs{Rat(1), d.u, d.u};

  SumTrace down = fp_sum(RoundingTuple::uniform(sys, TiePolicy::Downward, 2), xs);
  CHECK(down.result() == Rat(1));
  CHECK(down.total_error() == -Rat(2) * d.u);
  CHECK(down.partials.size() == 3);
  CHECK(down.partials[0] == Rat(0));
  CHECK(down.parcels[0] == Rat(1) + d.u);

  SumTrace up = fp_sum(RoundingTuple::uniform(sys, TiePolicy::Upward, 2), xs);
  CHECK(up.result() == Rat(1) + Rat(4) * d.u);
  CHECK(up.total_error() == Rat(2) * d.u);
}

TEST_CASE("a representable pair sums exactly") {
  FpSystem sys = FpSystem::perfect(2, 4);
  std::vector<Rat> xs{q("3/2"), q("1/2")};
  SumTrace t = fp_sum(RoundingTuple::uniform(sys, TiePolicy::Downward, 1), xs);
  CHECK(t.result() == Rat(2));
  CHECK(t.total_error() == Rat(0));
}

TEST_CASE("dimension checks") {
  FpSystem sys = FpSystem::perfect(2, 4);
  RoundingTuple t2 = RoundingTuple::uniform(sys, TiePolicy::Downward, 2);
  std::vector<Rat> two{Rat(1), Rat(1)};
  CHECK_THROWS_AS(fp_sum(t2, two), std::invalid_argument);
  CHECK_THROWS_AS(fma_dot(t2, DotInputs{{Rat(1)}, {Rat(1)}}), std::invalid_argument);
  std::vector<Rounder> prods(2, Rounder(sys, TiePolicy::Downward));
  CHECK_THROWS_AS(fp_dot(t2, prods, DotInputs{{Rat(1), Rat(1)}, {Rat(1), Rat(1)}}),
                  std::invalid_argument);
}

TEST_CASE("dot with unit vectors is exact") {
  FpSystem sys = FpSystem::perfect(2, 7);
  std::vector<Rounder> prods(3, Rounder(sys, TiePolicy::Downward));
  DotInputs d{{Rat(1), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)}};
  SumTrace t = fp_dot(RoundingTuple::uniform(sys, TiePolicy::Downward, 2), prods, d);
  CHECK(t.result() == Rat(1));
  CHECK(t.total_error() == Rat(0));
  CHECK(t.rounded_products.size() == 3);
}

TEST_CASE("dot with representable products reduces to the sum example") {
  FpSystem sys = FpSystem::perfect(2, 7);
  Derived dd = derive(sys);
  std::vector<Rounder> prods(3, Rounder(sys, TiePolicy::Downward));
  DotInputs d{{Rat(1), Rat(1), Rat(1)}, {Rat(1), dd.u, dd.u}};
  SumTrace t = fp_dot(RoundingTuple::uniform(sys, TiePolicy::Downward, 2), prods, d);
  CHECK(t.exact_products == std::vector<Rat>{Rat(1), dd.u, dd.u});
  CHECK(t.rounded_products == t.exact_products);
  CHECK(t.total_error() == -Rat(2) * dd.u);
}

TEST_CASE("fma dot") {
  FpSystem sys = FpSystem::perfect(2, 7);
  Derived dd = derive(sys);

  DotInputs zeros{{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
  SumTrace t0 = fma_dot(RoundingTuple::uniform(sys, TiePolicy::Downward, 2), zeros);
  CHECK(t0.result() == Rat(0));
  CHECK(t0.total_error() == Rat(0));

  DotInputs d{{Rat(1), Rat(1)}, {Rat(1), dd.u * dd.u}};
  SumTrace t = fma_dot(RoundingTuple::uniform(sys, TiePolicy::Downward, 2), d);
  CHECK(t.partials[1] == Rat(1));
  CHECK(t.result() == Rat(1));
  CHECK(t.total_error() == -dd.u * dd.u);

  DotInputs single{{q("3/2")}, {q("1/2")}};
  SumTrace t1 = fma_dot(RoundingTuple::uniform(sys, TiePolicy::Downward, 1), single);
  CHECK(t1.result() == Rounder(sys, TiePolicy::Downward).round(q("3/4")));
}

TEST_CASE("error summary aggregates") {
  FpSystem sys = FpSystem::perfect(2, 7);
  Derived dd = derive(sys);
  std::vector<Rat> xs{Rat(1), dd.u, dd.u};
  ErrorSummary s = error_summary(fp_sum(RoundingTuple::uniform(sys, TiePolicy::Downward, 2), xs));
  CHECK(s.norm1 == Rat(1) + Rat(2) * dd.u);
  CHECK(s.max_abs == Rat(1));
  CHECK(s.all_nonnegative);
  CHECK(s.all_members);

  std::vector<Rat> zeros{Rat(0), Rat(0)};
  ErrorSummary z = error_summary(fp_sum(RoundingTuple::uniform(sys, TiePolicy::Downward, 1), zeros));
  CHECK(z.norm1 == Rat(0));
  CHECK(z.cumulative_abs == Rat(0));
  CHECK(z.max_abs == Rat(0));
  CHECK(z.total_error == Rat(0));
}

TEST_CASE("error summary matches the mixed-signs cumulative formula") {
  // x = (u, 1, -(1/2)(1+3u)) at n = 2: sum of |prefix sums| is
  // 2 (1 - 2^-2)(1+3u) - 2*2u
  FpSystem sys = FpSystem::perfect(2, 7);
  Derived dd = derive(sys);
  std::vector<Rat> xs{dd.u, Rat(1), -q("1/2") * (Rat(1) + Rat(3) * dd.u)};
  ErrorSummary s = error_summary(fp_sum(RoundingTuple::uniform(sys, TiePolicy::Upward, 2), xs));
  Rat expected = Rat(2) * (Rat(1) - q("1/4")) * (Rat(1) + Rat(3) * dd.u) - Rat(4) * dd.u;
  CHECK(s.cumulative_abs == expected);
  CHECK_FALSE(s.all_nonnegative);
}

TEST_CASE("telescoping holds on random traces") {
  for (const FpSystem& sys : {FpSystem::perfect(2, 6), FpSystem::ieee(2, 4, -9),
                              FpSystem::mpfr(3, 3, -7)}) {
    Rng rng(41);
    for (int i = 0; i < 400; ++i) {
      std::size_t n = static_cast<std::size_t>(rng.range(1, 7));
      std::vector<Rat> xs = random_inputs(rng, n + 1);
      SumTrace t = fp_sum(RoundingTuple::uniform(sys, TiePolicy::ToEven, n), xs);
      Rat parcel_sum, err_sum;
      for (const Rat& z : t.parcels) parcel_sum += z;
      for (const Rat& e : t.step_errors) err_sum += e;
      CHECK(t.result() - parcel_sum == err_sum);
      CHECK(t.total_error() == err_sum);  // summands and parcels share the same total
      for (const Rat& p : t.partials) CHECK(contains(sys, p));
    }
  }
}

TEST_CASE("xi factors stay in the sharp band on perfect systems") {
  FpSystem sys = FpSystem::perfect(2, 8);
  Derived dd = derive(sys);
  Rat lo = Rat(1) / (Rat(1) + dd.u);
  Rat hi = (Rat(1) + Rat(2) * dd.u) / (Rat(1) + dd.u);
  Rng rng(42);
  for (int i = 0; i < 600; ++i) {
    std::size_t n = static_cast<std::size_t>(rng.range(1, 6));
    std::vector<Rat> xs = random_inputs(rng, n + 1);
    TiePolicy p = i % 2 ? TiePolicy::Downward : TiePolicy::Upward;
    SumTrace t = fp_sum(RoundingTuple::uniform(sys, p, n), xs);
    for (const auto& xi : t.xi_factors) {
      if (!xi) continue;
      CHECK(*xi >= lo);
      CHECK(*xi <= hi);
    }
  }
}

TEST_CASE("scaled tuples commute with scaling the inputs") {
  FpSystem sys = FpSystem::perfect(2, 5);
  Rng rng(43);
  for (int i = 0; i < 250; ++i) {
    std::size_t n = static_cast<std::size_t>(rng.range(1, 5));
    std::vector<Rat> xs = random_inputs(rng, n + 1);
    long m = rng.range(-3, 3);
    int sigma = rng.chance(1, 2) ? 1 : -1;
    Rat factor = Rat(sigma) * Rat::pow_base(2, m);

    std::vector<Rat> scaled_xs;
    for (const Rat& x : xs) scaled_xs.push_back(factor * x);

    std::vector<Rounder> scaled_rounders(n, Rounder(sys, TiePolicy::Downward).scaled(-m, sigma));
    SumTrace direct = fp_sum(RoundingTuple::uniform(sys, TiePolicy::Downward, n), xs);
    SumTrace lifted = fp_sum(RoundingTuple(scaled_rounders), scaled_xs);
    for (std::size_t k = 0; k < direct.partials.size(); ++k)
      CHECK(lifted.partials[k] == factor * direct.partials[k]);
  }
}

TEST_CASE("plain variant rounds the first summand") {
  FpSystem sys = FpSystem::perfect(2, 7);
  Derived dd = derive(sys);
  std::vector<Rat> xs{Rat(1) + dd.u, dd.u};
  SumTrace t = fp_sum_plain(RoundingTuple::uniform(sys, TiePolicy::Downward, 2), xs);
  CHECK(t.partials[1] == Rat(1));  // fl(1 + u) ties down
  std::vector<Rat> fused{Rat(1) + dd.u, dd.u};
  CHECK_THROWS_AS(fp_sum_plain(RoundingTuple::uniform(sys, TiePolicy::Downward, 3), fused),
                  std::invalid_argument);
}

TEST_CASE("trace records are stable") {
  FpSystem sys = FpSystem::perfect(2, 3);
  std::vector<Rat> xs{Rat(1), q("1/16"), q("1/16")};
  SumTrace t = fp_sum(RoundingTuple::uniform(sys, TiePolicy::Downward, 2), xs);
  CHECK(trace_records(t) ==
        "{\"k\":1,\"input\":\"17/16\",\"partial_before\":\"0\",\"partial_after\":\"1\","
        "\"step_error\":\"-1/16\"}\n"
        "{\"k\":2,\"input\":\"1/16\",\"partial_before\":\"1\",\"partial_after\":\"1\","
        "\"step_error\":\"-1/16\"}\n");
}
