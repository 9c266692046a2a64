#pragma once

#include <algorithm>
#include <string>

#include "coefx/errors.hpp"
#include "coefx/laurent.hpp"

namespace coefx {

// [F(x)] G(x) = sum_n f_n g_n for an R-series F and an L-series G.
//
// The sum runs over the finite overlap [valuation(g), top(f)]. Both factors
// must be known on all of it: low_order(f) <= valuation(g) and
// order(g) >= top(f). Anything less raises InsufficientPrecision rather than
// returning a silently truncated value.
template <CoefficientRing R>
R bracket(const BasicRSeries<R>& f, const BasicLSeries<R>& g) {
  detail::require_same_variable(f.variable(), g.variable());
  int lo = g.valuation();
  int hi = f.top();
  if (f.low_order() > lo)
    throw InsufficientPrecision("bracket argument known only down to " + std::to_string(f.low_order()) +
                                " but the operand starts at " + std::to_string(lo));
  if (g.order() < hi)
    throw InsufficientPrecision("operand known only through order " + std::to_string(g.order()) +
                                " but the bracket argument reaches " + std::to_string(hi));
  R total(0);
  for (int n = lo; n <= hi; ++n) {
    R fn = f.coefficient(n);
    if (detail::is_zero(fn)) continue;
    total = total + fn * g.coefficient(n);
  }
  return total;
}

// A finite Laurent polynomial read as an R-series known down to low_order.
template <CoefficientRing R>
BasicRSeries<R> laurent_polynomial_r(std::string var, const std::map<int, R>& terms, int low_order) {
  if (!terms.empty()) low_order = std::min(low_order, terms.begin()->first);
  return BasicRSeries<R>::make(std::move(var), terms, low_order);
}

// [x^n] G(x)
template <CoefficientRing R>
R extract_coefficient(int n, const BasicLSeries<R>& g) {
  if (n > g.order()) return g.coefficient(n);  // raises InsufficientPrecision
  auto f = BasicRSeries<R>::make(g.variable(), {{n, R(1)}}, std::min(n, g.valuation()));
  return bracket(f, g);
}

// The R-series x^{n-1} + x^{n-2} + ... known down to low_order; as a
// function it is x^n/(x-1) expanded in descending powers.
template <CoefficientRing R = Rational>
BasicRSeries<R> leftward_series(std::string var, int n, int low_order) {
  if (low_order > n - 1)
    throw InvalidArgument("leftward series needs low_order <= n-1 (got " + std::to_string(low_order) +
                          ", n=" + std::to_string(n) + ")");
  std::map<int, R> terms;
  for (int e = low_order; e <= n - 1; ++e) terms.emplace(e, R(1));
  return BasicRSeries<R>::make(std::move(var), terms, low_order);
}

// [x^n/(x-1)] G(x) = g_{n-1} + g_{n-2} + ... + g_valuation.
template <CoefficientRing R>
R leftward_sum_bracket(int n, const BasicLSeries<R>& g) {
  if (g.order() < n - 1)
    throw InsufficientPrecision("leftward sum up to exponent " + std::to_string(n - 1) +
                                " needs order >= that, series has order " + std::to_string(g.order()));
  R total(0);
  for (int k = g.valuation(); k <= n - 1; ++k) total = total + g.coefficient(k);
  return total;
}

}  // namespace coefx
