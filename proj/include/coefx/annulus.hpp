#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coefx/errors.hpp"
#include "coefx/laurent.hpp"
#include "coefx/rational.hpp"

namespace coefx {

struct Pole {
  Rational root;
  int multiplicity = 1;
};

// scale * z^shift * numerator(z) / prod_i (z - root_i)^{multiplicity_i}
struct FactoredRational {
  std::map<int, Rational> numerator;  // Laurent polynomial
  std::vector<Pole> poles;
  int shift = 0;
  Rational scale{1};
};

// inner < |z| < outer; an empty outer means +infinity.
struct AnnulusSpec {
  Rational inner;
  std::optional<Rational> outer;

  static AnnulusSpec disc(const Rational& outer) { return {Rational(0), outer}; }
  static AnnulusSpec exterior(const Rational& inner) { return {inner, std::nullopt}; }
};

// Which way a pole's partial-fraction term is expanded. A pole with
// |r| <= inner contributes only nonpositive powers (expanded in r/z); a pole
// with |r| >= outer contributes only nonnegative powers (expanded in z/r).
enum class PoleSide { Inner, Outer };

struct PartialFractionTerm {
  Rational root;
  int power;            // the term is amplitude / (z - root)^power
  Rational amplitude;
  PoleSide side;
};

namespace detail {

using DensePoly = std::vector<Rational>;  // ascending powers

inline void trim(DensePoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline DensePoly poly_mul(const DensePoly& a, const DensePoly& b) {
  if (a.empty() || b.empty()) return {};
  DensePoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// a = q*b + rem with deg rem < deg b.
inline std::pair<DensePoly, DensePoly> poly_divmod(DensePoly a, const DensePoly& b) {
  trim(a);
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  DensePoly q(a.size() - b.size() + 1);
  for (std::size_t i = q.size(); i-- > 0;) {
    Rational c = a[i + b.size() - 1] / b.back();
    q[i] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

// p(c + u) as a polynomial in u.
inline DensePoly taylor_shift(const DensePoly& p, const Rational& c) {
  DensePoly r(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j].is_zero()) continue;
    for (std::size_t i = 0; i <= j; ++i)
      r[i] += p[j] * binomial(static_cast<long>(j), static_cast<long>(i)) * pow(c, static_cast<long>(j - i));
  }
  trim(r);
  return r;
}

}  // namespace detail

inline std::vector<Rational> denominator_polynomial(const FactoredRational& f) {
  detail::DensePoly d{Rational(1)};
  for (const auto& p : f.poles)
    for (int i = 0; i < p.multiplicity; ++i) d = detail::poly_mul(d, {-p.root, Rational(1)});
  return d;
}

inline void validate(const FactoredRational& f) {
  if (f.scale.is_zero()) throw InvalidArgument("scale must be nonzero");
  for (std::size_t i = 0; i < f.poles.size(); ++i) {
    if (f.poles[i].multiplicity < 1) throw InvalidArgument("pole multiplicity must be >= 1");
    if (f.poles[i].root.is_zero())
      throw InvalidArgument("a pole at 0 belongs in the monomial shift, not the pole list");
    for (std::size_t j = 0; j < i; ++j)
      if (f.poles[i].root == f.poles[j].root) throw InvalidArgument("pole roots must be distinct");
  }
}

inline void validate(const AnnulusSpec& a) {
  if (a.inner.sign() < 0) throw InvalidAnnulus("inner radius must be >= 0");
  if (a.outer && a.outer->sign() <= 0) throw InvalidAnnulus("outer radius must be > 0");
  if (a.outer && a.inner >= *a.outer)
    throw InvalidAnnulus("inner radius " + a.inner.str() + " is not below outer radius " + a.outer->str());
}

// The unique two-sided expansion of a factored rational function on an
// annulus free of poles. Immutable once built; coefficient queries are exact
// closed forms, so any exponent can be asked for.
class DoubleExpansion {
 public:
  DoubleExpansion(FactoredRational source, AnnulusSpec annulus) : source_(std::move(source)), annulus_(annulus) {
    validate(source_);
    validate(annulus_);
    build();
  }

  const FactoredRational& source() const noexcept { return source_; }
  const AnnulusSpec& annulus() const noexcept { return annulus_; }
  const std::vector<PartialFractionTerm>& terms() const noexcept { return terms_; }

  Rational coefficient(int n) const {
    int t = n - offset_;
    Rational c;
    if (t >= 0 && static_cast<std::size_t>(t) < quotient_.size()) c += quotient_[static_cast<std::size_t>(t)];
    for (const auto& term : terms_) c += term.amplitude * unit_coefficient(term, t);
    return c * source_.scale;
  }

  std::vector<Rational> window(int from, int to) const {
    std::vector<Rational> out;
    for (int n = from; n <= to; ++n) out.push_back(coefficient(n));
    return out;
  }

 private:
  // Coefficient of z^t in 1/(z - r)^j on the term's side of the annulus.
  static Rational unit_coefficient(const PartialFractionTerm& term, int t) {
    const int j = term.power;
    const Rational& r = term.root;
    if (term.side == PoleSide::Outer) {
      // (-1)^j r^{-j} (1 - z/r)^{-j}
      if (t < 0) return Rational(0);
      return sign_power(j) * binomial(t + j - 1, j - 1) * pow(r, -j - t);
    }
    // z^{-j} (1 - r/z)^{-j}
    if (t > -j) return Rational(0);
    return binomial(-t - 1, j - 1) * pow(r, -t - j);
  }

  void build() {
    for (const auto& p : source_.poles) {
      Rational mag = abs(p.root);
      bool inner = mag <= annulus_.inner;
      bool outer = annulus_.outer && mag >= *annulus_.outer;
      if (!inner && !outer)
        throw PoleInAnnulus("pole at " + p.root.str() + " lies inside the annulus");
    }

    // Pull negative exponents of the numerator into the monomial shift.
    int lo = source_.numerator.empty() ? 0 : source_.numerator.begin()->first;
    offset_ = source_.shift + lo;
    detail::DensePoly num;
    for (const auto& [e, c] : source_.numerator) {
      std::size_t idx = static_cast<std::size_t>(e - lo);
      if (num.size() <= idx) num.resize(idx + 1);
      num[idx] = c;
    }
    detail::trim(num);

    auto den = denominator_polynomial(source_);
    auto [q, rem] = detail::poly_divmod(num, den);
    quotient_ = std::move(q);

    for (std::size_t i = 0; i < source_.poles.size(); ++i) {
      const Pole& pole = source_.poles[i];
      const int m = pole.multiplicity;
      // h(u) = rem(r+u) / prod_{l != i} (r - r_l + u)^{m_l}, needed through u^{m-1}.
      const int order = m - 1;
      auto shifted = detail::taylor_shift(rem, pole.root);
      std::map<int, Rational> hterms;
      for (std::size_t k = 0; k < shifted.size() && static_cast<int>(k) <= order; ++k)
        if (!shifted[k].is_zero()) hterms.emplace(static_cast<int>(k), shifted[k]);
      LSeries h = LSeries::make("u", hterms, order);
      for (std::size_t l = 0; l < source_.poles.size(); ++l) {
        if (l == i) continue;
        const Pole& other = source_.poles[l];
        LSeries lin = LSeries::make("u", {{0, pole.root - other.root}, {1, Rational(1)}}, std::max(order, 1));
        h = div(h, pow(truncate(lin, std::max(order, 1)), other.multiplicity));
        if (h.order() > order) h = truncate(h, order);
      }
      PoleSide side = abs(pole.root) <= annulus_.inner ? PoleSide::Inner : PoleSide::Outer;
      for (int j = 1; j <= m; ++j) {
        Rational a = h.coefficient(m - j);
        if (!a.is_zero()) terms_.push_back({pole.root, j, a, side});
      }
    }
  }

  FactoredRational source_;
  AnnulusSpec annulus_;
  int offset_ = 0;
  detail::DensePoly quotient_;
  std::vector<PartialFractionTerm> terms_;
};

inline DoubleExpansion expand_in_annulus(const FactoredRational& f, const AnnulusSpec& a) {
  return DoubleExpansion(f, a);
}

inline Rational coefficient_in_annulus(const DoubleExpansion& e, int n) { return e.coefficient(n); }

}  // namespace coefx
