#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coefx/errors.hpp"
#include "coefx/laurent.hpp"
#include "coefx/rational.hpp"

namespace coefx {

// Upper bound of a box that is not truncated (the series is exact in that
// direction).
inline constexpr int kOpen = std::numeric_limits<int>::max();

// Coefficients at (p, q) with p < min_w or q < min_z are zero; coefficients
// with p <= max_w and q <= max_z are known exactly; anything beyond is
// unknown.
struct Box {
  int min_w = 0;
  int max_w = kOpen;
  int min_z = 0;
  int max_z = kOpen;

  bool exact() const noexcept { return max_w == kOpen && max_z == kOpen; }
  bool known(int p, int q) const noexcept { return p <= max_w && q <= max_z; }
  friend bool operator==(const Box&, const Box&) = default;
};

namespace detail {
inline int bound_add(int a, int b) { return (a == kOpen || b == kOpen) ? kOpen : a + b; }
}  // namespace detail

using Exponent2 = std::pair<int, int>;

// Sparse bivariate series over an ordered pair of variables (w, z).
class BiSeries {
 public:
  using Terms = std::map<Exponent2, Rational>;

  BiSeries(std::string w, std::string z, Box box) : w_(std::move(w)), z_(std::move(z)), box_(box) {}

  // Exact Laurent polynomial.
  static BiSeries polynomial(std::string w, std::string z, const Terms& terms) {
    Box box;
    if (!terms.empty()) {
      box.min_w = box.min_z = std::numeric_limits<int>::max();
      for (const auto& [e, c] : terms) {
        box.min_w = std::min(box.min_w, e.first);
        box.min_z = std::min(box.min_z, e.second);
      }
    }
    BiSeries s(std::move(w), std::move(z), box);
    for (const auto& [e, c] : terms) s.put(e, c);
    return s;
  }

  static BiSeries truncated(std::string w, std::string z, const Terms& terms, Box box) {
    BiSeries s(std::move(w), std::move(z), box);
    for (const auto& [e, c] : terms) {
      if (e.first < box.min_w || e.second < box.min_z || !box.known(e.first, e.second))
        throw InvalidArgument("term (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                              ") lies outside the box");
      s.put(e, c);
    }
    return s;
  }

  // A univariate series in one of the two variables, lifted.
  static BiSeries lift(const LSeries& s, std::string w, std::string z) {
    bool in_w = s.variable() == w;
    if (!in_w && s.variable() != z)
      throw VariableMismatch("series variable '" + s.variable() + "' is neither '" + w + "' nor '" + z + "'");
    Box box;
    int lo = std::min(s.valuation(), s.order() + 1);
    if (in_w) {
      box.min_w = lo;
      box.max_w = s.order();
    } else {
      box.min_z = lo;
      box.max_z = s.order();
    }
    BiSeries out(std::move(w), std::move(z), box);
    for (int n = s.valuation(); n <= s.order(); ++n)
      out.put(in_w ? Exponent2{n, 0} : Exponent2{0, n}, s.coefficient(n));
    return out;
  }

  const std::string& w() const noexcept { return w_; }
  const std::string& z() const noexcept { return z_; }
  const Box& box() const noexcept { return box_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_exact() const noexcept { return box_.exact(); }

  Rational coefficient(int p, int q) const {
    if (!box_.known(p, q))
      throw InsufficientPrecision("coefficient (" + std::to_string(p) + "," + std::to_string(q) +
                                  ") lies beyond the known box");
    auto it = terms_.find({p, q});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  friend bool operator==(const BiSeries&, const BiSeries&) = default;

 private:
  void put(const Exponent2& e, const Rational& c) {
    if (c.is_zero()) return;
    if (!box_.known(e.first, e.second)) return;
    terms_[e] += c;
    if (terms_[e].is_zero()) terms_.erase(e);
  }

  friend BiSeries bi_add(const BiSeries&, const BiSeries&);
  friend BiSeries bi_mul(const BiSeries&, const BiSeries&);
  friend BiSeries bi_scale(const BiSeries&, const Rational&);
  friend BiSeries bi_div_unit(const BiSeries&, const BiSeries&);
  friend BiSeries truncate(const BiSeries&, int, int);
  friend BiSeries to_polynomial(const BiSeries&);
  friend BiSeries monomial_substitute(const BiSeries&, int, int, int, int, const Rational&, const Rational&);

  std::string w_, z_;
  Box box_;
  Terms terms_;
};

namespace detail {
inline void require_same_pair(const BiSeries& a, const BiSeries& b) {
  if (a.w() != b.w() || a.z() != b.z())
    throw VariableMismatch("bivariate series over (" + a.w() + "," + a.z() + ") combined with (" + b.w() + "," +
                           b.z() + ")");
}
}  // namespace detail

inline BiSeries bi_add(const BiSeries& a, const BiSeries& b) {
  detail::require_same_pair(a, b);
  Box box{std::min(a.box_.min_w, b.box_.min_w), std::min(a.box_.max_w, b.box_.max_w),
          std::min(a.box_.min_z, b.box_.min_z), std::min(a.box_.max_z, b.box_.max_z)};
  BiSeries r(a.w_, a.z_, box);
  for (const auto& [e, c] : a.terms_) r.put(e, c);
  for (const auto& [e, c] : b.terms_) r.put(e, c);
  return r;
}

inline BiSeries bi_scale(const BiSeries& a, const Rational& k) {
  BiSeries r(a.w_, a.z_, a.box_);
  for (const auto& [e, c] : a.terms_) r.put(e, c * k);
  return r;
}

inline BiSeries bi_sub(const BiSeries& a, const BiSeries& b) { return bi_add(a, bi_scale(b, Rational(-1))); }

// Convolution on the maximal provable box.
inline BiSeries bi_mul(const BiSeries& a, const BiSeries& b) {
  detail::require_same_pair(a, b);
  using detail::bound_add;
  Box box{a.box_.min_w + b.box_.min_w,
          std::min(bound_add(a.box_.max_w, b.box_.min_w), bound_add(b.box_.max_w, a.box_.min_w)),
          a.box_.min_z + b.box_.min_z,
          std::min(bound_add(a.box_.max_z, b.box_.min_z), bound_add(b.box_.max_z, a.box_.min_z))};
  BiSeries r(a.w_, a.z_, box);
  for (const auto& [ea, ca] : a.terms_) {
    if (ea.first + b.box_.min_w > box.max_w || ea.second + b.box_.min_z > box.max_z) continue;
    for (const auto& [eb, cb] : b.terms_) {
      int p = ea.first + eb.first, q = ea.second + eb.second;
      if (box.known(p, q)) r.terms_[{p, q}] += ca * cb;
    }
  }
  for (auto it = r.terms_.begin(); it != r.terms_.end();) it = it->second.is_zero() ? r.terms_.erase(it) : ++it;
  return r;
}

inline BiSeries bi_constant(const std::string& w, const std::string& z, const Rational& c) {
  return BiSeries::polynomial(w, z, {{{0, 0}, c}});
}

inline BiSeries bi_pow(const BiSeries& a, int e) {
  if (e < 0) throw InvalidArgument("bi_pow needs a nonnegative exponent");
  BiSeries result = bi_constant(a.w(), a.z(), Rational(1));
  BiSeries base = a;
  while (e) {
    if (e & 1) result = bi_mul(result, base);
    e >>= 1;
    if (e) base = bi_mul(base, base);
  }
  return result;
}

// Quotient a/b where b has no negative exponents and b(0,0) != 0.
inline BiSeries bi_div_unit(const BiSeries& a, const BiSeries& b) {
  detail::require_same_pair(a, b);
  if (b.box_.min_w < 0 || b.box_.min_z < 0)
    throw InvalidArgument("divisor must have no negative exponents");
  auto lead = b.terms_.find({0, 0});
  if (lead == b.terms_.end() || !b.box_.known(0, 0))
    throw DivisionByZeroSeries("divisor has no nonzero constant term");
  using detail::bound_add;
  Box box{a.box_.min_w, std::min(a.box_.max_w, bound_add(b.box_.max_w, a.box_.min_w)), a.box_.min_z,
          std::min(a.box_.max_z, bound_add(b.box_.max_z, a.box_.min_z))};
  bool b_constant = b.terms_.size() == 1;
  if (!b_constant && (box.max_w == kOpen || box.max_z == kOpen)) {
    // The quotient is an infinite series in at least one direction.
    bool w_free = true, z_free = true;
    for (const auto& [e, c] : b.terms_) {
      if (e.first > 0) w_free = false;
      if (e.second > 0) z_free = false;
    }
    if ((box.max_w == kOpen && !w_free) || (box.max_z == kOpen && !z_free))
      throw InsufficientPrecision("quotient is infinite; truncate the dividend to a finite box first");
  }
  BiSeries r(a.w_, a.z_, box);
  if (b_constant) {
    for (const auto& [e, c] : a.terms_) r.put(e, c / lead->second);
    return r;
  }
  // Dense triangular solve over the (finite) box.
  int max_w = box.max_w == kOpen ? box.min_w : box.max_w;
  int max_z = box.max_z == kOpen ? box.min_z : box.max_z;
  if (box.max_w == kOpen)
    for (const auto& [e, c] : a.terms_) max_w = std::max(max_w, e.first);
  if (box.max_z == kOpen)
    for (const auto& [e, c] : a.terms_) max_z = std::max(max_z, e.second);
  const int nw = max_w - box.min_w + 1, nz = max_z - box.min_z + 1;
  if (nw <= 0 || nz <= 0) return r;
  std::vector<Rational> q(static_cast<std::size_t>(nw) * static_cast<std::size_t>(nz));
  auto at = [&](int p, int s) -> Rational& {
    return q[static_cast<std::size_t>(p - box.min_w) * static_cast<std::size_t>(nz) +
             static_cast<std::size_t>(s - box.min_z)];
  };
  std::vector<std::pair<Exponent2, Rational>> tail;
  for (const auto& [e, c] : b.terms_)
    if (e != Exponent2{0, 0}) tail.emplace_back(e, c);
  const Rational inv = Rational(1) / lead->second;
  for (int p = box.min_w; p <= max_w; ++p) {
    for (int s = box.min_z; s <= max_z; ++s) {
      auto it = a.terms_.find({p, s});
      Rational acc = it == a.terms_.end() ? Rational(0) : it->second;
      for (const auto& [e, c] : tail) {
        int pp = p - e.first, ss = s - e.second;
        if (pp < box.min_w || ss < box.min_z) continue;
        const Rational& prev = at(pp, ss);
        if (!prev.is_zero()) acc -= c * prev;
      }
      at(p, s) = acc * inv;
    }
  }
  for (int p = box.min_w; p <= max_w; ++p)
    for (int s = box.min_z; s <= max_z; ++s) r.put({p, s}, at(p, s));
  return r;
}

inline BiSeries truncate(const BiSeries& a, int max_w, int max_z) {
  if (max_w > a.box_.max_w || max_z > a.box_.max_z)
    throw InsufficientPrecision("cannot widen a truncated box");
  Box box = a.box_;
  box.max_w = max_w;
  box.max_z = max_z;
  BiSeries r(a.w_, a.z_, box);
  for (const auto& [e, c] : a.terms_) r.put(e, c);
  return r;
}

// Forget the box: the known terms are taken as an exact polynomial.
inline BiSeries to_polynomial(const BiSeries& a) { return BiSeries::polynomial(a.w_, a.z_, a.terms_); }

// Substitutes w -> a w^k z^l, z -> b w^m z^n. The support point (p, q) moves
// to (kp + mq, lp + nq) and picks up a^p b^q. Needs a, b != 0 and
// kn - lm != 0 so the map on exponents is injective. A truncated operand is
// only accepted for pure rescaling (identity matrix), since any other map
// would scatter its unknown tail below the new box.
inline BiSeries monomial_substitute(const BiSeries& g, int k, int l, int m, int n, const Rational& a,
                                    const Rational& b) {
  if (a.is_zero() || b.is_zero()) throw InvalidArgument("monomial substitution needs nonzero scales");
  if (static_cast<long>(k) * n - static_cast<long>(l) * m == 0)
    throw InvalidArgument("monomial substitution needs a nonsingular exponent matrix (kn != lm)");
  bool identity = k == 1 && l == 0 && m == 0 && n == 1;
  if (!identity && !g.is_exact())
    throw InsufficientPrecision("monomial substitution of a truncated series; convert with to_polynomial first");
  BiSeries::Terms out;
  for (const auto& [e, c] : g.terms_) {
    auto [p, q] = e;
    out[{k * p + m * q, l * p + n * q}] += c * pow(a, p) * pow(b, q);
  }
  if (identity) {
    BiSeries r(g.w_, g.z_, g.box_);
    for (const auto& [e, c] : out) r.put(e, c);
    return r;
  }
  return BiSeries::polynomial(g.w_, g.z_, out);
}

// w -> a w, z -> b z
inline BiSeries scale_vars(const BiSeries& g, const Rational& a, const Rational& b) {
  return monomial_substitute(g, 1, 0, 0, 1, a, b);
}

// sum over the support of f of f_{p,q} g_{p,q}; f must have finite support.
inline Rational bi_bracket(const BiSeries& f, const BiSeries& g) {
  detail::require_same_pair(f, g);
  Rational total;
  for (const auto& [e, c] : f.terms()) {
    if (e.first < g.box().min_w || e.second < g.box().min_z) continue;
    total += c * g.coefficient(e.first, e.second);
  }
  return total;
}

// [F(v)]_v G: brackets out the variable v only, with F a Laurent polynomial
// in v, leaving a series in the other variable.
inline LSeries partial_bracket(const std::map<int, Rational>& f, const BiSeries& g, const std::string& v) {
  bool over_w = v == g.w();
  if (!over_w && v != g.z()) throw VariableMismatch("'" + v + "' is not a variable of the series");
  const std::string& other = over_w ? g.z() : g.w();
  int other_min = over_w ? g.box().min_z : g.box().min_w;
  int other_max = over_w ? g.box().max_z : g.box().max_w;
  int v_max = over_w ? g.box().max_w : g.box().max_z;
  int v_min = over_w ? g.box().min_w : g.box().min_z;
  std::map<int, Rational> out;
  for (const auto& [p, c] : f) {
    if (c.is_zero() || p < v_min) continue;
    if (p > v_max)
      throw InsufficientPrecision("partial bracket reaches exponent " + std::to_string(p) + " beyond the box");
    for (const auto& [e, gc] : g.terms()) {
      int ev = over_w ? e.first : e.second;
      int eo = over_w ? e.second : e.first;
      if (ev == p) out[eo] += c * gc;
    }
  }
  int order = other_max;
  if (order == kOpen) {
    order = other_min;
    for (const auto& [e, c] : out) order = std::max(order, e);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : ++it;
  return LSeries::make(other, out, order);
}

// g(x) = sum_j g_j x^j for a univariate g and a bivariate x with no negative
// exponents, x(0,0) = 0 and a finite box. Every support point of x^j has
// total degree at least j, so g must be known through the total degree of
// the box corner.
inline BiSeries compose(const LSeries& g, const BiSeries& x) {
  if (x.box().min_w < 0 || x.box().min_z < 0)
    throw CompositionValuationError("inner bivariate series must have no negative exponents");
  if (x.box().max_w == kOpen || x.box().max_z == kOpen)
    throw InsufficientPrecision("inner bivariate series must be truncated to a finite box");
  if (!x.coefficient(0, 0).is_zero())
    throw CompositionValuationError("inner bivariate series must have zero constant term");
  if (!g.is_zero_window() && g.valuation() < 0)
    throw CompositionValuationError("outer series must have no negative powers");
  int degree = x.box().max_w + x.box().max_z;
  if (g.order() < degree)
    throw InsufficientPrecision("outer series known through " + std::to_string(g.order()) + ", need " +
                                std::to_string(degree));
  const auto& w = x.w();
  const auto& z = x.z();
  BiSeries acc = truncate(bi_constant(w, z, g.coefficient(0)), x.box().max_w, x.box().max_z);
  BiSeries power = x;
  for (int j = 1; j <= degree; ++j) {
    if (j > 1) power = bi_mul(power, x);
    if (power.terms().empty()) break;
    Rational gj = g.coefficient(j);
    if (!gj.is_zero()) acc = bi_add(acc, bi_scale(power, gj));
  }
  return acc;
}

inline BiSeries bi_exp(const BiSeries& x) {
  int degree = x.box().max_w == kOpen || x.box().max_z == kOpen ? 0 : x.box().max_w + x.box().max_z;
  std::vector<Rational> c;
  for (int i = 0; i <= degree; ++i) c.push_back(Rational(1) / factorial(i));
  return compose(LSeries::from_coefficients(x.w(), 0, std::move(c), degree), x);
}

}  // namespace coefx
