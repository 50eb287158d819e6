// SPDX-License-Identifier: Apache-2.0

#include "fperr/verifier.hpp"

#include <algorithm>
#include <sstream>

namespace fperr {

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 finalizer over the xored pair
  std::uint64_t z = base ^ (stream + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

InputGenerator parse_generator(std::string_view name) {
  if (name == "log-uniform-binades") return InputGenerator::LogUniformBinades;
  if (name == "near-midpoints") return InputGenerator::NearMidpoints;
  if (name == "mixed-signs") return InputGenerator::MixedSigns;
  if (name == "subnormal-heavy") return InputGenerator::SubnormalHeavy;
  throw parse_error("unknown generator '" + std::string(name) + "'", 0);
}

std::string_view generator_name(InputGenerator g) {
  switch (g) {
    case InputGenerator::LogUniformBinades: return "log-uniform-binades";
    case InputGenerator::NearMidpoints: return "near-midpoints";
    case InputGenerator::MixedSigns: return "mixed-signs";
    case InputGenerator::SubnormalHeavy: return "subnormal-heavy";
  }
  return "?";
}

namespace {

// One sample: a grid point of the system in the configured binade window,
// perturbed onto the adjacent grid midpoint for a generator-dependent share
// of draws (the worst cases live at midpoints).
Rat sample_magnitude(Rng& rng, const FpSystem& sys, const SweepConfig& cfg) {
  unsigned mid_num = 1, mid_den = 2;
  switch (cfg.generator) {
    case InputGenerator::NearMidpoints: mid_num = 7; mid_den = 8; break;
    case InputGenerator::SubnormalHeavy: mid_num = 1; mid_den = 4; break;
    default: break;
  }
  if (cfg.generator == InputGenerator::SubnormalHeavy && sys.unperfect() && rng.chance(1, 2)) {
    // small grid base^emin * r below (or straddling) nu
    long top = 1;
    for (long i = 0; i < sys.precision; ++i) top *= sys.base;
    long r = rng.range(1, top - 1);
    Rat v = Rat::pow_base(sys.base, sys.emin) * Rat(r);
    if (rng.chance(mid_num, mid_den))
      v += Rat::pow_base(sys.base, sys.emin) / Rat(2);
    return v;
  }
  long binade = rng.range(cfg.binade_lo, cfg.binade_hi);
  long e = binade - sys.precision;
  long span = sys.base - 1;
  for (long i = 0; i < sys.precision; ++i) span *= sys.base;
  long r = static_cast<long>(rng.below(static_cast<std::uint64_t>(span)));
  Rat v = Rat::pow_base(sys.base, e) *
          (Rat::pow_base(sys.base, sys.precision) + Rat(r));
  if (rng.chance(mid_num, mid_den)) v += Rat::pow_base(sys.base, e) / Rat(2);
  return v;
}

std::vector<Rat> sample_vector(Rng& rng, const FpSystem& sys, const SweepConfig& cfg,
                               std::size_t count, bool force_nonneg) {
  std::vector<Rat> out;
  out.reserve(count);
  bool negatives_allowed = !force_nonneg;
  for (std::size_t i = 0; i < count; ++i) {
    Rat v = sample_magnitude(rng, sys, cfg);
    if (negatives_allowed && rng.chance(1, 2)) v = -v;
    out.push_back(std::move(v));
  }
  return out;
}

bool is_sum_kind(BoundKind k) {
  switch (k) {
    case BoundKind::NormOneSharp:
    case BoundKind::NormOneLinear:
    case BoundKind::NormOneUnperfect:
    case BoundKind::MaxQuadratic:
    case BoundKind::CumulativePositiveUpper:
    case BoundKind::CumulativePositiveLower:
    case BoundKind::CumulativeSigned:
    case BoundKind::SignedUnperfect:
    case BoundKind::SignedUnperfectReduced:
      return true;
    default:
      return false;
  }
}

bool is_dot_kind(BoundKind k) {
  switch (k) {
    case BoundKind::DotPerfect:
    case BoundKind::DotPerfectLinear:
    case BoundKind::DotIEEE:
    case BoundKind::DotIEEEReduced:
    case BoundKind::DotMPFR:
      return true;
    default:
      return false;
  }
}

bool is_fma_kind(BoundKind k) {
  return k == BoundKind::FmaPerfect || k == BoundKind::FmaUnperfect;
}

std::vector<BoundKind> default_battery() {
  std::vector<BoundKind> out;
  for (BoundKind k : all_kinds())
    if (is_sum_kind(k) || is_dot_kind(k) || is_fma_kind(k)) out.push_back(k);
  return out;
}

}  // namespace

long SweepReport::total_violations() const {
  long v = 0;
  for (const auto& [kind, st] : stats) v += st.violations;
  return v;
}

const BoundStats* SweepReport::find(BoundKind kind) const {
  for (const auto& [k, st] : stats)
    if (k == kind) return &st;
  return nullptr;
}

std::string SweepReport::machine_records() const {
  std::ostringstream os;
  os << "{\"record\":\"sweep\",\"system\":\"" << config.system.str() << "\",\"policies\":\"";
  for (std::size_t i = 0; i < config.policies.size(); ++i)
    os << (i ? "," : "") << policy_name(config.policies[i]);
  os << "\",\"generator\":\"" << generator_name(config.generator) << "\",\"n\":\"" << config.n_lo
     << ".." << config.n_hi << "\",\"trials\":" << config.trials << ",\"seed\":" << config.seed
     << "}\n";
  for (const auto& [kind, st] : stats) {
    os << "{\"record\":\"bound\",\"kind\":\"" << kind_name(kind) << "\",\"checked\":" << st.checked
       << ",\"applicable\":" << st.applicable << ",\"violations\":" << st.violations
       << ",\"max_ratio\":\"" << (st.max_ratio ? st.max_ratio->str() : "none")
       << "\",\"argmax_trial\":" << st.argmax_trial << "}\n";
  }
  os << "{\"record\":\"sweep-end\",\"violations\":" << total_violations() << "}\n";
  return os.str();
}

std::string SweepReport::table() const {
  std::ostringstream os;
  os << "sweep " << config.system.str() << " trials=" << config.trials << " seed=" << config.seed
     << "\n";
  for (const auto& [kind, st] : stats) {
    os << "  " << kind_name(kind) << ": checked=" << st.checked << " applicable=" << st.applicable
       << " violations=" << st.violations
       << " max_ratio=" << (st.max_ratio ? st.max_ratio->decimal(6) : "-") << "\n";
  }
  return os.str();
}

SweepReport sweep(const SweepConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("sweep needs at least one trial");
  if (cfg.policies.empty()) throw std::invalid_argument("sweep needs at least one tie policy");
  if (cfg.n_lo < 1 || cfg.n_hi < cfg.n_lo) throw std::invalid_argument("bad n range");

  SweepReport report;
  report.config = cfg;
  std::vector<BoundKind> kinds = cfg.kinds.empty() ? default_battery() : cfg.kinds;
  for (BoundKind k : all_kinds())
    if (std::find(kinds.begin(), kinds.end(), k) != kinds.end())
      report.stats.emplace_back(k, BoundStats{});

  std::vector<Witness> injected;
  if (cfg.inject_witnesses && cfg.system.kind == SystemKind::Perfect && cfg.system.base == 2) {
    long n = std::min<long>(4, cfg.n_hi);
    for (TiePolicy p : {TiePolicy::Downward, TiePolicy::Upward})
      if (std::find(cfg.policies.begin(), cfg.policies.end(), p) != cfg.policies.end())
        injected.push_back(norm_one_sharp(cfg.system, n, p));
  }

  for (long t = 0; t < cfg.trials; ++t) {
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    TiePolicy policy = cfg.policies[static_cast<std::size_t>(t) % cfg.policies.size()];
    int mode = static_cast<int>(t % 3);  // 0 sum, 1 dot, 2 fma

    SumTrace trace;
    long n = 0;
    std::string mode_name;
    if (static_cast<std::size_t>(t) < injected.size()) {
      const Witness& w = injected[static_cast<std::size_t>(t)];
      policy = w.policy;
      n = static_cast<long>(w.inputs.size()) - 1;
      trace = fp_sum(RoundingTuple::uniform(cfg.system, policy, w.inputs.size() - 1), w.inputs);
      mode = 0;
      mode_name = "sum";
    } else if (mode == 0) {
      n = rng.range(cfg.n_lo, cfg.n_hi);
      bool nonneg = rng.chance(1, 2);
      std::vector<Rat> xs =
          sample_vector(rng, cfg.system, cfg, static_cast<std::size_t>(n) + 1, nonneg);
      trace = fp_sum(RoundingTuple::uniform(cfg.system, policy, static_cast<std::size_t>(n)), xs);
      mode_name = "sum";
    } else if (mode == 1) {
      n = rng.range(cfg.n_lo, cfg.n_hi);
      DotInputs d{sample_vector(rng, cfg.system, cfg, static_cast<std::size_t>(n) + 1, false),
                  sample_vector(rng, cfg.system, cfg, static_cast<std::size_t>(n) + 1, false)};
      std::vector<Rounder> prod(static_cast<std::size_t>(n) + 1, Rounder(cfg.system, policy));
      trace = fp_dot(RoundingTuple::uniform(cfg.system, policy, static_cast<std::size_t>(n)), prod, d);
      mode_name = "dot";
    } else {
      n = rng.range(cfg.n_lo, cfg.n_hi);
      DotInputs d{sample_vector(rng, cfg.system, cfg, static_cast<std::size_t>(n) + 1, false),
                  sample_vector(rng, cfg.system, cfg, static_cast<std::size_t>(n) + 1, false)};
      trace = fma_dot(RoundingTuple::uniform(cfg.system, policy, static_cast<std::size_t>(n) + 1), d);
      mode_name = "fma";
    }

    BoundInputs in = BoundInputs::from_summary(error_summary(trace));
    for (auto& [kind, st] : report.stats) {
      bool fits = (mode == 0 && is_sum_kind(kind)) || (mode == 1 && is_dot_kind(kind)) ||
                  (mode == 2 && is_fma_kind(kind));
      if (!fits) continue;
      BoundReport rep = evaluate(kind, cfg.system, n, in);
      ++st.checked;
      if (!rep.applicable) continue;
      ++st.applicable;
      if (!rep.satisfied()) ++st.violations;
      if (rep.ratio && (!st.max_ratio || *rep.ratio > *st.max_ratio)) {
        st.max_ratio = rep.ratio;
        st.argmax_trial = t;
        st.argmax_inputs = trace.summands;
        st.argmax_kind = mode_name;
      }
    }
  }
  return report;
}

PairExhaustiveReport exhaustive_pairs(const FpSystem& sys, const Rat& max_abs) {
  if (!sys.unperfect())
    throw std::invalid_argument(
        "exhaustive_pairs: a perfect system has no finite slab; pick an unperfect system");
  PairExhaustiveReport rep;
  std::vector<Rat> slab = members_up_to(sys, max_abs);
  rep.members = static_cast<long>(slab.size());
  Derived d = derive(sys);
  Rat top = Rat(sys.base) * d.nu;
  for (const Rat& x : slab) {
    for (const Rat& y : slab) {
      ++rep.pairs;
      Rat s = x + y;
      Rat a = abs(s);
      bool small_hyp = a >= d.alpha && a <= top;
      bool ieee_hyp = sys.kind == SystemKind::IEEE && !s.is_zero() && a <= top;
      if (small_hyp) ++rep.small_sum_hypothesis;
      if (ieee_hyp) ++rep.ieee_sum_hypothesis;
      if ((small_hyp || ieee_hyp) && !contains(sys, s)) {
        ++rep.failures;
        if (rep.counterexamples.size() < 8)
          rep.counterexamples.push_back("sum " + x.str() + " + " + y.str());
      }
      if (ieee_hyp && a < d.alpha) {
        ++rep.failures;
        if (rep.counterexamples.size() < 8)
          rep.counterexamples.push_back("ieee magnitude " + x.str() + " + " + y.str());
      }
      Rat diff = y - x;
      if (diff >= d.alpha && diff <= x) {
        ++rep.sterbenz_hypothesis;
        if (!contains(sys, diff)) {
          ++rep.failures;
          if (rep.counterexamples.size() < 8)
            rep.counterexamples.push_back("sterbenz " + y.str() + " - " + x.str());
        }
      }
    }
  }
  return rep;
}

SqrtReport sqrt_roundtrip(const FpSystem& sys, long binade_lo, long binade_hi, TiePolicy policy) {
  SqrtReport rep;
  Rounder r(sys, policy);
  Derived d = derive(sys);
  for (const Rat& x : positive_members_in_binades(sys, binade_lo, binade_hi)) {
    if (x * x < d.nu) continue;
    ++rep.checked;
    Rat sq = r.round(x * x);
    Rat root = r.round_sqrt(sq);
    if (sys.base == 2 && !(root == x)) {
      ++rep.exact_failures;
      if (rep.failures.size() < 8) rep.failures.push_back("sqrt identity at x = " + x.str());
    }
    Rat quotient = r.round(x / root);
    if (quotient > Rat(1)) {
      ++rep.ratio_failures;
      if (rep.failures.size() < 8) rep.failures.push_back("quotient above one at x = " + x.str());
    }
  }
  return rep;
}

ProductChainReport product_chain_check(const FpSystem& sys, long trials, std::uint64_t seed,
                                       TiePolicy policy) {
  if (sys.kind != SystemKind::Perfect)
    throw std::invalid_argument("product_chain_check is stated for perfect systems");
  ProductChainReport rep;
  Rounder r(sys, policy);
  Derived d = derive(sys);
  SweepConfig window;  // reuse the sampler's binade window defaults
  window.system = sys;
  window.binade_lo = -3;
  window.binade_hi = 3;
  for (long t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    Rat vals[4];
    bool ok = false;
    while (!ok) {
      for (Rat& v : vals) {
        v = sample_magnitude(rng, sys, window);
        if (rng.chance(1, 2)) v = -v;
      }
      ok = !vals[0].is_zero() && !vals[1].is_zero() && !vals[2].is_zero() && !vals[3].is_zero();
    }
    ++rep.trials;
    Rat p1 = vals[0] * vals[1];
    Rat p2 = p1 * vals[2];
    Rat p3 = p2 * vals[3];
    Rat h1 = r.round(p1);
    Rat h2 = r.round(h1 * vals[2]);
    Rat h3 = r.round(h2 * vals[3]);
    const Rat exact[3] = {p1, p2, p3};
    const Rat chained[3] = {h1, h2, h3};
    for (int k = 0; k < 3; ++k) {
      Rat ratio = chained[k] / exact[k];
      Rat ku = Rat(k + 1) * d.u;
      if (ratio < Rat(1) - ku || ratio > Rat(1) + ku) {
        ++rep.violations;
        if (rep.failures.size() < 8)
          rep.failures.push_back("k=" + std::to_string(k + 1) + " at trial " + std::to_string(t));
      }
    }
  }
  return rep;
}

SimpleReport per_op_sharp_check(const FpSystem& sys, long trials, std::uint64_t seed) {
  SimpleReport rep;
  Derived d = derive(sys);
  SweepConfig window;
  window.system = sys;
  window.generator = InputGenerator::NearMidpoints;
  const TiePolicy policies[3] = {TiePolicy::Downward, TiePolicy::Upward, TiePolicy::ToEven};
  for (long t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    Rat z = sample_magnitude(rng, sys, window);
    if (rng.chance(1, 2)) z = -z;
    if (abs(z) < d.nu || z.is_zero()) continue;
    ++rep.checked;
    Rounder r(sys, policies[t % 3]);
    Rat fl = r.round(z);
    if (abs(fl - z) > abs(z) * d.u / (Rat(1) + d.u)) {
      ++rep.violations;
      if (rep.failures.size() < 8) rep.failures.push_back("per-op bound at z = " + z.str());
    }
  }
  return rep;
}

SimpleReport formula_inequalities_check() {
  SimpleReport rep;
  auto fail = [&](const std::string& what) {
    ++rep.violations;
    if (rep.failures.size() < 8) rep.failures.push_back(what);
  };
  struct Grid { long base; long mu; };
  for (const Grid& g : {Grid{2, 9}, Grid{2, 12}, Grid{3, 6}, Grid{10, 3}}) {
    Rat u = Rat(1) / (Rat(2) * Rat::pow_base(g.base, g.mu));
    ++rep.checked;
    if (!(u / (Rat(1) + u) < u && u < u / (Rat(1) - u))) fail("epsilon chain");
    if (!(cumulative_tau_factor(g.base, 1, u) == Rat(1) / (Rat(1) + u))) fail("tau_1");
    for (long n = 1; n <= 20; ++n) {
      if (Rat(20 * n) * u > Rat(1)) break;
      ++rep.checked;
      Rat tau = cumulative_tau_factor(g.base, n, u);
      if (!(tau <= Rat(1) && tau > Rat(0))) fail("tau range");
      Rat bn = dot_beta_factor(n, u);
      if (!(bn <= Rat(n + 1) / (Rat(1) + Rat(n) * u / Rat(2)))) fail("beta_n first majorant");
      if (!(bn <= Rat(n + 1) / (Rat(1) + Rat(n - 3) * u))) fail("beta_n second majorant");
      if (Rat(2 * n) * u < Rat(1)) {
        Rat un = pow_rat(u, n);
        Rat kappa = (Rat(1) - u) * (Rat(1) - un) /
                    (Rat(1) - un - Rat(n) * un * u * (Rat(1) - u));
        if (!(Rat(1) - u < kappa && kappa < Rat(1))) fail("kappa bracket");
      }
      Rat mass = Rat(3) + Rat(n);
      Rat sharp = mass * Rat(n) * u / (Rat(1) + Rat(n) * u);
      if (!(sharp <= mass * Rat(n) * u)) fail("sharp vs linear norm-one");
    }
    // three-factor linearization chain on a small deterministic set
    const long picks[4][3] = {{1, 1, 1}, {2, 5, 9}, {17, 3, 20}, {20, 20, 20}};
    for (const auto& pick : picks) {
      for (long k = 1; k <= 3; ++k) {
        ++rep.checked;
        Rat sum_n, f_prod(1), g_prod(1);
        for (long i = 0; i < k; ++i) {
          Rat ni(pick[i]);
          sum_n += ni;
          f_prod *= (Rat(1) + Rat(2) * ni * u) / (Rat(1) + ni * u);
          g_prod *= Rat(1) / (Rat(1) + ni * u);
        }
        if (!(Rat(1) - sum_n * u <= g_prod && g_prod <= f_prod &&
              f_prod <= Rat(1) + sum_n * u))
          fail("linearization chain");
      }
    }
  }
  return rep;
}

namespace {

// Midpoint of the grid interval the value sits in; for members, the first
// midpoint above.
Rat midpoint_above(const FpSystem& sys, const Rat& v) {
  if (v.is_zero()) return Rat(0);
  Neighbors nb = neighbors(sys, v);
  if (!(nb.below == nb.above)) return (nb.below + nb.above) / Rat(2);
  Derived d = derive(sys);
  if (sys.unperfect() && abs(v) < d.nu) return v + d.alpha / Rat(2);
  NormalForm nf = normal_form(sys, v);
  return v + Rat::pow_base(sys.base, nf.exponent) / Rat(2);
}

}  // namespace

SearchResult worst_ratio_search(const FpSystem& sys, BoundKind kind, long n, long budget,
                                std::uint64_t seed, TiePolicy policy,
                                const std::vector<Rat>* start) {
  if (budget < 1) throw std::invalid_argument("search budget must be at least 1");
  if (n < 1) throw std::invalid_argument("search needs n >= 1");
  RoundingTuple tuple = RoundingTuple::uniform(sys, policy, static_cast<std::size_t>(n));

  auto ratio_of = [&](const std::vector<Rat>& xs) -> Rat {
    SumTrace t = fp_sum(tuple, xs);
    BoundReport rep = evaluate(kind, sys, n, BoundInputs::from_summary(error_summary(t)));
    if (!rep.applicable || !rep.ratio) return Rat(-1);
    return *rep.ratio;
  };

  SweepConfig window;
  window.system = sys;
  window.binade_lo = -2;
  window.binade_hi = 2;

  Rng rng(mix_seed(seed, 0));
  std::vector<Rat> best;
  if (start) {
    best = *start;
    if (static_cast<long>(best.size()) != n + 1)
      throw std::invalid_argument("start vector must have n+1 entries");
  } else {
    best = sample_vector(rng, sys, window, static_cast<std::size_t>(n) + 1, true);
  }
  SearchResult res;
  res.inputs = best;
  res.ratio = ratio_of(best);

  for (long it = 0; it < budget; ++it) {
    std::vector<Rat> cand = res.inputs;
    std::uint64_t move = rng.below(8);
    if (move == 0) {
      // snap the head summand to a power of the base
      Rat a = abs(cand[0]);
      if (!a.is_zero()) {
        long t = ilog_base(sys.base, a);
        cand[0] = Rat::pow_base(sys.base, t);
      }
    } else if (move == 1) {
      // snap the head to a power of the base, then rebuild the tail so every
      // partial sum lands on the midpoint just above it (the maximizer shape)
      Rat a = abs(cand[0]);
      if (a.is_zero()) continue;
      cand[0] = Rat::pow_base(sys.base, ilog_base(sys.base, a));
      Rat partial;
      for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k) {
        Rat anchor = k == 1 ? cand[0] : partial;
        if (anchor.is_zero()) break;
        Rat target = midpoint_above(sys, anchor);
        cand[k == 1 ? 1 : k] = target - anchor;
        partial = tuple.at(k - 1).round(target);
      }
    } else {
      // land one partial sum exactly on the midpoint above it
      SumTrace t = fp_sum(tuple, cand);
      std::size_t k = 1 + static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)));
      Rat pre = t.partials[k - 1] + t.parcels[k - 1];
      if (pre.is_zero()) continue;
      Rat target = midpoint_above(sys, t.partials[k - 1].is_zero() ? pre : t.partials[k - 1]);
      if (target.is_zero()) continue;
      Rat delta = target - pre;
      std::size_t input_index = k == 1 ? 1 : k;  // parcel 1 fuses inputs 0 and 1
      cand[input_index] += delta;
    }
    Rat r = ratio_of(cand);
    if (r > res.ratio) {
      res.ratio = r;
      res.inputs = std::move(cand);
      ++res.improvements;
    }
  }
  return res;
}

}  // namespace fperr
