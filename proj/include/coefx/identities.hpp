#pragma once

#include <algorithm>
#include <map>
#include <string>

#include "coefx/bivariate.hpp"
#include "coefx/bracket.hpp"
#include "coefx/errors.hpp"
#include "coefx/laurent.hpp"
#include "coefx/rational.hpp"

namespace coefx {

// ----------------------------------------------------- random-graph reduction

// [w^m z^n] e^{U(wz)/w + V(wz)} reduced to one variable:
// (1/(n-m)!) [z^n] U(z)^{n-m} e^{V(z)}. Needs U(0) = 0; V(0) must vanish too
// because e^{V(0)} is not rational in general.
inline Rational random_graph_coeff(const LSeries& u, const LSeries& v, int m, int n) {
  if (m < 0 || n < 0) throw InvalidArgument("exponents must be nonnegative");
  if (u.order() < 0 || (!u.is_zero_window() && u.valuation() < 1))
    throw InvalidArgument("U must satisfy U(0) = 0");
  if (n < m) return Rational(0);
  LSeries ev = exp_series(v);
  LSeries um = pow(u, n - m);
  return (um * ev).coefficient(n) / factorial(n - m);
}

// The same coefficient read straight off a bivariate expansion of
// e^{U(wz)/w + V(wz)} on the box [0,m] x [0,n].
inline Rational random_graph_coeff_bivariate(const LSeries& u, const LSeries& v, int m, int n) {
  if (m < 0 || n < 0) throw InvalidArgument("exponents must be nonnegative");
  if (u.order() < 0 || (!u.is_zero_window() && u.valuation() < 1))
    throw InvalidArgument("U must satisfy U(0) = 0");
  if (u.order() < n || v.order() < n)
    throw InsufficientPrecision("U and V must be known through z^" + std::to_string(n));
  BiSeries::Terms terms;
  for (int j = 1; j <= n; ++j) {
    Rational uj = u.coefficient(j);
    if (!uj.is_zero() && j - 1 <= m) terms[{j - 1, j}] += uj;
    Rational vj = v.coefficient(j);
    if (!vj.is_zero() && j <= m) terms[{j, j}] += vj;
  }
  if (!v.coefficient(0).is_zero()) throw InvalidArgument("V must satisfy V(0) = 0");
  auto x = BiSeries::truncated("w", "z", terms, Box{0, m, 0, n});
  return bi_exp(x).coefficient(m, n);
}

// ------------------------------------------------------ binomial identities

struct SaalschutzResult {
  Rational sum_side;      // sum_r C(m,k-r) C(n,l-r) C(m+n+r,r)
  Rational middle_line;   // [w^k z^l] (1+w)^{m+l} (1+z)^{n+k}
  Rational product_side;  // C(m+l,k) C(n+k,l)
  bool equal = false;
};

inline SaalschutzResult saalschutz(int k, int l, int m, int n) {
  SaalschutzResult r;
  for (int s = 0; s <= std::min(k, l); ++s)
    r.sum_side += binomial(m, k - s) * binomial(n, l - s) * binomial(m + n + s, s);
  r.product_side = binomial(m + l, k) * binomial(n + k, l);
  auto one_plus = [](bool w) {
    return BiSeries::polynomial("w", "z", {{{0, 0}, Rational(1)}, {w ? Exponent2{1, 0} : Exponent2{0, 1}, Rational(1)}});
  };
  auto expanded = bi_mul(bi_pow(one_plus(true), m + l), bi_pow(one_plus(false), n + k));
  r.middle_line = expanded.coefficient(k, l);
  r.equal = r.sum_side == r.middle_line && r.middle_line == r.product_side;
  return r;
}

struct DixonResult {
  Rational bracket_side;  // [w^{l+n} z^{m+n}] (w-z)^{l+m} / (1-wz)^{l+m+1}
  Rational sum_side;      // sum_k (-1)^{k+m} C(l+m,k+m) C(m+n,k+n) C(n+l,k+l)
  Rational closed_form;   // (-1)^m (l+m+n)! / (l! m! n!)
  bool equal = false;
};

inline DixonResult dixon(int l, int m, int n) {
  DixonResult r;
  const int a = l + m;
  auto diff = BiSeries::polynomial("w", "z", {{{1, 0}, Rational(1)}, {{0, 1}, Rational(-1)}});
  auto num = truncate(bi_pow(diff, a), l + n, m + n);
  auto den = bi_pow(BiSeries::polynomial("w", "z", {{{0, 0}, Rational(1)}, {{1, 1}, Rational(-1)}}), a + 1);
  r.bracket_side = bi_div_unit(num, den).coefficient(l + n, m + n);
  for (int k = -std::min({l, m, n}); k <= std::min({l, m, n}) + std::max({l, m, n}); ++k)
    r.sum_side += sign_power(k + m) * binomial(l + m, k + m) * binomial(m + n, k + n) * binomial(n + l, k + l);
  r.closed_form = sign_power(m) * factorial(l + m + n) / (factorial(l) * factorial(m) * factorial(n));
  r.equal = r.bracket_side == r.sum_side && r.sum_side == r.closed_form;
  return r;
}

// G(w,z) = (1+w)^p (1+z)^q (w-z)^r / (1-wz)^s
struct FactoredBivariate {
  int p = 0, q = 0, r = 0, s = 0;
};

namespace detail {
inline BiSeries evaluate_factored(const FactoredBivariate& g, const BiSeries& x, const BiSeries& y) {
  auto one = bi_constant("w", "z", Rational(1));
  auto numer = bi_mul(bi_mul(bi_pow(bi_add(one, x), g.p), bi_pow(bi_add(one, y), g.q)), bi_pow(bi_sub(x, y), g.r));
  auto denom = bi_pow(bi_sub(one, bi_mul(x, y)), g.s);
  return bi_div_unit(numer, denom);
}
}  // namespace detail

struct GesselStantonResult {
  Rational lhs;
  Rational rhs;
  bool equal = false;
};

// Both sides of
//   [F(w,z)] G(w,z)/(1-wz) = [F(w(1+1/z), z(1+1/w))] G(w/(1+z), z/(1+w))
// for F = w^k z^l and G in the factored family, with every series expanded on
// the box [0,box]^2. The substituted F is a finite Laurent polynomial.
inline GesselStantonResult gessel_stanton_check(int k, int l, const FactoredBivariate& g, int box) {
  if (k < 0 || l < 0) throw InvalidArgument("F must be a monomial with nonnegative exponents");
  if (g.p < 0 || g.q < 0 || g.r < 0 || g.s < 0) throw InvalidArgument("factor exponents must be nonnegative");
  if (box < std::max(k, l)) throw InsufficientPrecision("box " + std::to_string(box) + " does not cover F");
  GesselStantonResult res;

  auto w = truncate(BiSeries::polynomial("w", "z", {{{1, 0}, Rational(1)}}), box, box);
  auto z = truncate(BiSeries::polynomial("w", "z", {{{0, 1}, Rational(1)}}), box, box);
  FactoredBivariate left = g;
  left.s += 1;
  res.lhs = detail::evaluate_factored(left, w, z).coefficient(k, l);

  // w^k (1 + 1/z)^k z^l (1 + 1/w)^l
  BiSeries::Terms fterms;
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= l; ++j) fterms[{k - j, l - i}] += binomial(k, i) * binomial(l, j);
  auto f = BiSeries::polynomial("w", "z", fterms);

  auto one = bi_constant("w", "z", Rational(1));
  auto x = bi_div_unit(w, bi_add(one, BiSeries::polynomial("w", "z", {{{0, 1}, Rational(1)}})));
  auto y = bi_div_unit(z, bi_add(one, BiSeries::polynomial("w", "z", {{{1, 0}, Rational(1)}})));
  res.rhs = bi_bracket(f, detail::evaluate_factored(g, x, y));
  res.equal = res.lhs == res.rhs;
  return res;
}

// The two specializations that turn the transformation into the classical
// identities.
inline FactoredBivariate saalschutz_kernel(int m, int n) { return {m, n, 0, m + n}; }
inline FactoredBivariate dixon_kernel(int l, int m) { return {0, 0, l + m, l + m}; }

}  // namespace coefx
