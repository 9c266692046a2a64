#pragma once

#include <string>
#include <vector>

#include "coefx/errors.hpp"
#include "coefx/laurent.hpp"
#include "coefx/rational.hpp"

namespace coefx {

namespace detail {
inline void require_unit_valuation(const LSeries& f) {
  if (f.is_zero_window() || f.valuation() != 1)
    throw CompositionValuationError("series must have valuation exactly 1 with a nonzero linear coefficient");
}
}  // namespace detail

// The compositional inverse g of f, known through z^order:
// f(g(z)) = g(f(z)) = z + O(z^{order+1}).
//
// g_1 = 1/f_1, and each later g_n is fixed by the z^n coefficient of f(g),
// which is f_1 g_n plus terms involving only g_1 .. g_{n-1}.
inline LSeries revert(const LSeries& f, int order) {
  detail::require_unit_valuation(f);
  if (order < 1) throw InvalidArgument("reversion order must be >= 1");
  if (f.order() < order)
    throw InsufficientPrecision("series known through order " + std::to_string(f.order()) + ", reversion needs " +
                                std::to_string(order));
  const std::string& v = f.variable();
  const Rational f1 = f.coefficient(1);
  std::vector<Rational> g{Rational(1) / f1};
  for (int n = 2; n <= order; ++n) {
    auto partial = LSeries::from_coefficients(v, 1, g, n);
    Rational c = compose(truncate(f, n), partial).coefficient(n);
    g.push_back(-c / f1);
  }
  return LSeries::from_coefficients(v, 1, std::move(g), order);
}

// [z^n] g(z)^m for the inverse g of f, computed without reverting:
// (m/n) [z^{-m}] f(z)^{-n}.
inline Rational lagrange_coefficient(const LSeries& f, int m, int n) {
  detail::require_unit_valuation(f);
  if (n == 0) throw InvalidArgument("lagrange_coefficient needs n != 0");
  if (m == 0) return Rational(0);
  return Rational(m) / Rational(n) * pow(f, -n).coefficient(-m);
}

}  // namespace coefx
