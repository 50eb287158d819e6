// SPDX-License-Identifier: Apache-2.0

#include "fperr/accumulate.hpp"

#include <sstream>

namespace fperr {

Rat SumTrace::exact_sum() const {
  Rat s;
  for (const Rat& x : summands) s += x;
  return s;
}

SumTrace accumulate_raw(const RoundingTuple& tuple, std::vector<Rat> parcels,
                        std::vector<Rat> summands) {
  if (parcels.size() != tuple.dimension())
    throw std::invalid_argument("parcel count must match the tuple dimension");
  SumTrace t;
  t.system = tuple.system();
  t.summands = std::move(summands);
  t.parcels = std::move(parcels);
  t.partials.reserve(t.parcels.size() + 1);
  t.partials.emplace_back(0);
  for (std::size_t k = 0; k < t.parcels.size(); ++k) {
    Rat pre = t.partials.back() + t.parcels[k];
    Rat post = tuple.at(k).round(pre);
    t.step_errors.push_back(post - pre);
    t.xi_factors.push_back(pre.is_zero() ? std::optional<Rat>{} : std::optional<Rat>{post / pre});
    t.partials.push_back(std::move(post));
  }
  return t;
}

SumTrace fp_sum(const RoundingTuple& tuple, std::span<const Rat> xs) {
  if (tuple.dimension() < 1 || xs.size() != tuple.dimension() + 1)
    throw std::invalid_argument("fp_sum needs n+1 summands for an n-tuple, n >= 1");
  std::vector<Rat> parcels;
  parcels.reserve(xs.size() - 1);
  parcels.push_back(xs[0] + xs[1]);
  parcels.insert(parcels.end(), xs.begin() + 2, xs.end());
  return accumulate_raw(tuple, std::move(parcels), {xs.begin(), xs.end()});
}

SumTrace fp_sum_plain(const RoundingTuple& tuple, std::span<const Rat> xs) {
  if (xs.size() != tuple.dimension())
    throw std::invalid_argument("fp_sum_plain needs one summand per rounder");
  return accumulate_raw(tuple, {xs.begin(), xs.end()}, {xs.begin(), xs.end()});
}

SumTrace fp_dot(const RoundingTuple& sum_tuple, std::span<const Rounder> product_rounders,
                const DotInputs& d) {
  std::size_t n = sum_tuple.dimension();
  if (d.x.size() != d.y.size() || d.x.size() != n + 1 || product_rounders.size() != n + 1)
    throw std::invalid_argument("fp_dot needs n+1 pairs and product rounders for an n-tuple");
  for (const Rounder& r : product_rounders)
    if (!(r.system() == sum_tuple.system()))
      throw std::invalid_argument("product rounders must share the sum tuple's system");
  std::vector<Rat> exact, rounded;
  exact.reserve(n + 1);
  rounded.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    exact.push_back(d.x[k] * d.y[k]);
    rounded.push_back(product_rounders[k].round(exact.back()));
  }
  std::vector<Rat> parcels;
  parcels.reserve(n);
  parcels.push_back(rounded[0] + rounded[1]);
  parcels.insert(parcels.end(), rounded.begin() + 2, rounded.end());
  SumTrace t = accumulate_raw(sum_tuple, std::move(parcels), exact);
  t.exact_products = std::move(exact);
  t.rounded_products = std::move(rounded);
  return t;
}

SumTrace fma_dot(const RoundingTuple& tuple, const DotInputs& d) {
  if (d.x.size() != d.y.size() || d.x.size() != tuple.dimension())
    throw std::invalid_argument("fma_dot needs an (n+1)-tuple for vectors of length n+1");
  std::vector<Rat> products;
  products.reserve(d.x.size());
  for (std::size_t k = 0; k < d.x.size(); ++k) products.push_back(d.x[k] * d.y[k]);
  SumTrace t = accumulate_raw(tuple, products, products);
  t.exact_products = std::move(products);
  return t;
}

ErrorSummary error_summary(const SumTrace& t) {
  ErrorSummary s;
  s.total_error = t.total_error();
  s.all_nonnegative = true;
  s.all_members = true;
  bool first = true;
  for (const Rat& x : t.summands) {
    Rat a = abs(x);
    s.norm1 += a;
    if (first || a > s.max_abs) s.max_abs = a;
    first = false;
    if (x.sign() < 0) s.all_nonnegative = false;
    if (s.all_members && !contains(t.system, x)) s.all_members = false;
  }
  Rat prefix;
  for (const Rat& z : t.parcels) {
    prefix += z;
    s.cumulative_abs += abs(prefix);
  }
  return s;
}

std::string trace_records(const SumTrace& t) {
  std::ostringstream os;
  for (std::size_t k = 0; k < t.parcels.size(); ++k) {
    os << "{\"k\":" << k + 1 << ",\"input\":\"" << t.parcels[k].str() << "\",\"partial_before\":\""
       << t.partials[k].str() << "\",\"partial_after\":\"" << t.partials[k + 1].str()
       << "\",\"step_error\":\"" << t.step_errors[k].str() << "\"}\n";
  }
  return os.str();
}

}  // namespace fperr
