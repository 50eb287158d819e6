// SPDX-License-Identifier: Apache-2.0

#include "fperr/witnesses.hpp"

namespace fperr {

namespace {

Derived check_perfect(const FpSystem& sys, const char* who, bool base2_only) {
  if (sys.kind != SystemKind::Perfect)
    throw constraint_error(std::string(who) + " needs a perfect system");
  if (base2_only && sys.base != 2)
    throw constraint_error(std::string(who) + " is stated for base 2");
  return derive(sys);
}

void check_policy(TiePolicy got, TiePolicy want, const char* who) {
  if (got != want)
    throw constraint_error(std::string(who) + " needs tie policy '" +
                           std::string(policy_name(want)) + "'");
}

}  // namespace

Witness norm_one_sharp(const FpSystem& sys, long n, TiePolicy policy) {
  Derived d = check_perfect(sys, "norm-one-sharp", true);
  if (n < 1) throw constraint_error("norm-one-sharp needs n >= 1");
  if (policy == TiePolicy::ToEven)
    throw constraint_error("norm-one-sharp is stated for downward or upward ties");
  Witness w{"norm-one-sharp", sys, policy, {}, Rat(1), Rat(0), {}};
  w.inputs.push_back(Rat(1));
  for (long k = 1; k <= n; ++k) w.inputs.push_back(d.u);
  Rat nu_total = Rat(n) * d.u;
  if (policy == TiePolicy::Downward) {
    w.predicted_result = Rat(1);
    w.predicted_error = -nu_total;
  } else {
    if (!(Rat(2) * nu_total < Rat(1)))
      throw constraint_error("norm-one-sharp with upward ties needs 2nu < 1");
    w.predicted_result = Rat(1) + Rat(2) * nu_total;
    w.predicted_error = nu_total;
    w.constraint_notes.push_back("2nu < 1");
  }
  return w;
}

Witness quadratic_growth(const FpSystem& sys, long m, TiePolicy policy) {
  Derived d = check_perfect(sys, "quadratic-growth", true);
  check_policy(policy, TiePolicy::Downward, "quadratic-growth");
  if (m < 1) throw constraint_error("quadratic-growth needs m >= 1");
  if (!(Rat::pow_base(2, m) * d.u < Rat(1)))
    throw constraint_error("quadratic-growth needs 2^m u < 1");
  long n = (1L << m) - 1;
  Witness w{"quadratic-growth", sys, policy, {}, Rat(n + 1), Rat(0), {}};
  w.inputs.push_back(Rat(1));
  if (n >= 1) w.inputs.push_back(Rat(1) + Rat(2) * d.u);
  long level = 1;  // floor(log2 k)
  for (long k = 2; k <= n; ++k) {
    if ((k & (k - 1)) == 0) level = 63 - __builtin_clzll(static_cast<unsigned long long>(k));
    w.inputs.push_back(Rat(1) + Rat::pow_base(2, level) * d.u);
  }
  w.predicted_error = -Rat(n * n + 2 * n + 3, 1) / Rat(3) * d.u;
  w.constraint_notes.push_back("2^m u < 1");
  w.constraint_notes.push_back(
      "parcels follow the worked verification (y0 = 1, y1 = 1+2u, y_k = 1+2^floor(log2 k) u), "
      "which is what the stated error formula is derived for");
  return w;
}

Witness min_cumulative(const FpSystem& sys, long n, TiePolicy policy) {
  Derived d = check_perfect(sys, "min-cumulative", true);
  check_policy(policy, TiePolicy::Downward, "min-cumulative");
  if (n < 1) throw constraint_error("min-cumulative needs n >= 1");
  Witness w{"min-cumulative", sys, policy, {}, Rat(0), Rat(0), {}};
  for (long k = 0; k <= n; ++k) w.inputs.push_back(pow_rat(d.u, -k));
  w.predicted_result = pow_rat(d.u, -n);
  // error = -kappa_n u sum of prefix sums = -u^(1-n) (1-u^n)/(1-u)
  Rat un = pow_rat(d.u, n);
  Rat kappa = (Rat(1) - d.u) * (Rat(1) - un) /
              (Rat(1) - un - Rat(n) * un * d.u * (Rat(1) - d.u));
  Rat cum;
  Rat prefix;
  for (long k = 0; k <= n; ++k) {
    prefix += w.inputs[static_cast<std::size_t>(k)];
    if (k >= 1) cum += prefix;
  }
  w.predicted_error = -kappa * d.u * cum;
  return w;
}

Witness max_cumulative(const FpSystem& sys, long n, TiePolicy policy,
                       std::optional<std::vector<long>> exponents) {
  Derived d = check_perfect(sys, "max-cumulative", false);
  check_policy(policy, TiePolicy::Upward, "max-cumulative");
  if (n < 1) throw constraint_error("max-cumulative needs n >= 1");
  std::vector<long> es;
  if (exponents) {
    es = *exponents;
    if (static_cast<long>(es.size()) != n)
      throw constraint_error("max-cumulative needs one exponent per step");
    if (es[0] != 0)
      throw constraint_error("max-cumulative needs e_1 = 0 (the first tie sits at 1 + u)");
    for (std::size_t k = 1; k < es.size(); ++k)
      if (es[k] <= es[k - 1]) throw constraint_error("exponents must be strictly increasing");
  } else {
    for (long k = 1; k <= n; ++k) es.push_back(k - 1);
  }
  Witness w{"max-cumulative", sys, policy, {}, Rat(0), Rat(0), {}};
  w.inputs.push_back(d.u);
  w.inputs.push_back(Rat(1));
  for (long k = 2; k <= n; ++k) {
    Rat hi = Rat::pow_base(sys.base, es[static_cast<std::size_t>(k - 1)]);
    Rat lo = Rat::pow_base(sys.base, es[static_cast<std::size_t>(k - 2)]);
    w.inputs.push_back(hi * (Rat(1) + d.u) - lo * (Rat(1) + Rat(2) * d.u));
  }
  w.predicted_result =
      Rat::pow_base(sys.base, es.back()) * (Rat(1) + Rat(2) * d.u);
  Rat sigma;
  for (long e : es) sigma += Rat::pow_base(sys.base, e);
  w.predicted_error = d.u * sigma;
  if (!exponents)
    w.constraint_notes.push_back("default exponents e_k = k-1 attain the cumulative upper bound");
  return w;
}

Witness mixed_signs(const FpSystem& sys, long n, TiePolicy policy) {
  Derived d = check_perfect(sys, "mixed-signs", true);
  check_policy(policy, TiePolicy::Upward, "mixed-signs");
  if (n < 1) throw constraint_error("mixed-signs needs n >= 1");
  if (!(Rat::pow_base(2, n) * d.u <= Rat(1)))
    throw constraint_error("mixed-signs needs 2^n u <= 1");
  Witness w{"mixed-signs", sys, policy, {}, Rat(0), Rat(0), {}};
  w.inputs.push_back(d.u);
  w.inputs.push_back(Rat(1));
  for (long k = 2; k <= n; ++k)
    w.inputs.push_back(-Rat::pow_base(2, 1 - k) * (Rat(1) + Rat(3) * d.u));
  Rat half_pow = Rat::pow_base(2, -n);
  w.predicted_result = Rat::pow_base(2, 1 - n) * (Rat(1) + Rat(2) * d.u);
  w.predicted_error = Rat(2) * (Rat(1) - half_pow) * d.u;
  w.constraint_notes.push_back("2^n u <= 1");
  return w;
}

const std::vector<std::string>& witness_names() {
  static const std::vector<std::string> names{
      "norm-one-sharp", "quadratic-growth", "min-cumulative", "max-cumulative", "mixed-signs"};
  return names;
}

Witness make_witness(const std::string& name, const FpSystem& sys, long n, TiePolicy policy,
                     std::optional<std::vector<long>> exponents) {
  if (name == "norm-one-sharp") return norm_one_sharp(sys, n, policy);
  if (name == "quadratic-growth") return quadratic_growth(sys, n, policy);
  if (name == "min-cumulative") return min_cumulative(sys, n, policy);
  if (name == "max-cumulative") return max_cumulative(sys, n, policy, std::move(exponents));
  if (name == "mixed-signs") return mixed_signs(sys, n, policy);
  throw std::invalid_argument("unknown witness family '" + name + "'");
}

Replay replay(const Witness& w) {
  RoundingTuple tuple = RoundingTuple::uniform(w.system, w.policy, w.inputs.size() - 1);
  Replay r;
  r.trace = fp_sum(tuple, w.inputs);
  r.actual_result = r.trace.result();
  r.actual_error = r.trace.total_error();
  r.result_residual = r.actual_result - w.predicted_result;
  r.error_residual = r.actual_error - w.predicted_error;
  r.pass = r.result_residual.is_zero() && r.error_residual.is_zero();
  return r;
}

}  // namespace fperr
