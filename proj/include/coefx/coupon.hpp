#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "coefx/bracket.hpp"
#include "coefx/errors.hpp"
#include "coefx/exppoly.hpp"
#include "coefx/laurent.hpp"
#include "coefx/rational.hpp"

namespace coefx {

inline constexpr std::size_t kMaxCouponsFormula = 24;
inline constexpr std::size_t kMaxCouponsOracle = 20;

// Trials draw coupon c with probability probabilities[c]; the question is how
// many trials it takes to see `target` distinct coupons.
struct CouponProblem {
  std::vector<Rational> probabilities;
  int target = 1;
};

inline void validate(const CouponProblem& p) {
  if (p.probabilities.empty()) throw InvalidArgument("at least one coupon is needed");
  Rational total;
  for (std::size_t i = 0; i < p.probabilities.size(); ++i) {
    if (p.probabilities[i].sign() <= 0)
      throw InvalidArgument("probability of coupon " + std::to_string(i) + " is not positive");
    total += p.probabilities[i];
  }
  if (total != Rational(1)) throw InvalidArgument("probabilities sum to " + total.str() + ", not 1");
  if (p.target < 1 || static_cast<std::size_t>(p.target) > p.probabilities.size())
    throw InvalidArgument("target " + std::to_string(p.target) + " must lie in 1.." +
                          std::to_string(p.probabilities.size()));
}

namespace detail {
inline void require_at_most(const CouponProblem& p, std::size_t cap) {
  if (p.probabilities.size() > cap)
    throw InvalidArgument(std::to_string(p.probabilities.size()) + " coupons exceeds the limit of " +
                          std::to_string(cap));
}

inline Rational subset_probability(const CouponProblem& p, std::uint32_t mask) {
  Rational s;
  for (std::size_t i = 0; i < p.probabilities.size(); ++i)
    if (mask >> i & 1u) s += p.probabilities[i];
  return s;
}
}  // namespace detail

// Sum over A with |A| < n of e^{p(A) t} (-1)^{n-1-|A|} C(|C|-|A|-1, |C|-n).
inline ExpPoly integrand_closed_form(const CouponProblem& p) {
  validate(p);
  detail::require_at_most(p, kMaxCouponsFormula);
  const int m = static_cast<int>(p.probabilities.size());
  const int n = p.target;
  ExpPoly out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    int a = std::popcount(mask);
    if (a >= n) continue;
    out += ExpPoly::exponential(detail::subset_probability(p, mask), sign_power(n - 1 - a) * binomial(m - a - 1, m - n));
  }
  return out;
}

// Sum over B with |B| < n of prod_{c in B} (e^{p(c) t} - 1).
inline ExpPoly integrand_subset_sum(const CouponProblem& p) {
  validate(p);
  detail::require_at_most(p, kMaxCouponsFormula);
  const int m = static_cast<int>(p.probabilities.size());
  ExpPoly out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (std::popcount(mask) >= p.target) continue;
    ExpPoly term(1);
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1u) term = term * (ExpPoly::exponential(p.probabilities[static_cast<std::size_t>(i)]) - ExpPoly(1));
    out += term;
  }
  return out;
}

// [z^n/(z-1)] prod_c (1 + z (e^{p(c) t} - 1)), expanded as a polynomial in z
// with exponential-polynomial coefficients.
inline ExpPoly integrand_bracket(const CouponProblem& p) {
  validate(p);
  detail::require_at_most(p, kMaxCouponsFormula);
  const int m = static_cast<int>(p.probabilities.size());
  using Series = BasicLSeries<ExpPoly>;
  Series product = Series::constant("z", ExpPoly(1), m);
  for (const auto& pc : p.probabilities) {
    Series factor = Series::from_coefficients("z", 0, {ExpPoly(1), ExpPoly::exponential(pc) - ExpPoly(1)}, m);
    product = truncate(product * factor, m);
  }
  return leftward_sum_bracket(p.target, product);
}

inline Rational expected_trials_bracket(const CouponProblem& p) {
  return integrate_against_decay(integrand_bracket(p));
}

inline Rational expected_trials_formula(const CouponProblem& p) {
  validate(p);
  detail::require_at_most(p, kMaxCouponsFormula);
  const int m = static_cast<int>(p.probabilities.size());
  const int n = p.target;
  Rational total;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    int a = std::popcount(mask);
    if (a >= n) continue;
    total += sign_power(n - 1 - a) * binomial(m - a - 1, m - n) / (Rational(1) - detail::subset_probability(p, mask));
  }
  return total;
}

// Expected trials by backward recursion over the sets S of coupons seen so
// far: E[S] = 0 once |S| = n, otherwise
// E[S] = (1 + sum_{c not in S} p(c) E[S + c]) / (1 - p(S)).
inline Rational markov_oracle(const CouponProblem& p) {
  validate(p);
  detail::require_at_most(p, kMaxCouponsOracle);
  const int m = static_cast<int>(p.probabilities.size());
  const std::uint32_t full = 1u << m;
  std::vector<Rational> e(full);
  std::vector<Rational> ps(full);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::uint32_t low = mask & (~mask + 1u);
    ps[mask] = ps[mask ^ low] + p.probabilities[static_cast<std::size_t>(std::countr_zero(low))];
  }
  for (std::uint32_t mask = full; mask-- > 0;) {
    if (std::popcount(mask) >= p.target) continue;
    Rational acc(1);
    for (int i = 0; i < m; ++i)
      if (!(mask >> i & 1u)) acc += p.probabilities[static_cast<std::size_t>(i)] * e[mask | 1u << i];
    e[mask] = acc / (Rational(1) - ps[mask]);
  }
  return e[0];
}

}  // namespace coefx
