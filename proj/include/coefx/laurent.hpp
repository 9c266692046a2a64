#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coefx/errors.hpp"
#include "coefx/rational.hpp"

namespace coefx {

template <class R>
concept CoefficientRing = std::copy_constructible<R> && std::equality_comparable<R> &&
                          requires(const R& a, const R& b) {
                            R(0);
                            R(1);
                            { a + b } -> std::convertible_to<R>;
                            { a - b } -> std::convertible_to<R>;
                            { a * b } -> std::convertible_to<R>;
                            { -a } -> std::convertible_to<R>;
                          };

template <class R>
concept CoefficientField = CoefficientRing<R> && requires(const R& a, const R& b) {
  { a / b } -> std::convertible_to<R>;
};

namespace detail {
template <class R>
bool is_zero(const R& r) {
  if constexpr (requires { r.is_zero(); })
    return r.is_zero();
  else
    return r == R(0);
}

inline void require_same_variable(const std::string& a, const std::string& b) {
  if (a != b) throw VariableMismatch("series in '" + a + "' combined with series in '" + b + "'");
}
}  // namespace detail

// Truncated formal Laurent series sum_{n>=v} c_n x^n known exactly on the
// exponent window [valuation, order]; the unknown tail is O(x^{order+1}).
//
// Canonical form: either the window is nonempty and c_valuation != 0, or every
// known coefficient is zero and valuation == order + 1 ("zero up to
// O(x^{order+1})"). Coefficients are stored densely over the window.
template <CoefficientRing R>
class BasicLSeries {
 public:
  using coefficient_type = R;

  // The series O(var^{order+1}).
  BasicLSeries(std::string var, int order) : var_(std::move(var)), val_(order + 1), order_(order) {}

  // Coefficients c_lo, c_{lo+1}, ... with everything else in the window zero.
  static BasicLSeries from_coefficients(std::string var, int lo, std::vector<R> coeffs, int order) {
    if (lo + static_cast<int>(coeffs.size()) - 1 > order) {
      // Allow trailing zeros beyond the order to be dropped silently, but a
      // nonzero coefficient past the window is an error.
      for (int i = order - lo + 1; i < static_cast<int>(coeffs.size()); ++i)
        if (i >= 0 && !detail::is_zero(coeffs[static_cast<std::size_t>(i)]))
          throw InvalidArgument("exponent " + std::to_string(lo + i) + " exceeds order " +
                                std::to_string(order));
      coeffs.resize(static_cast<std::size_t>(std::max(0, order - lo + 1)), R(0));
    }
    BasicLSeries s(std::move(var), order);
    if (lo > order) return s;
    s.val_ = lo;
    s.c_ = std::move(coeffs);
    s.c_.resize(static_cast<std::size_t>(order - lo + 1), R(0));
    s.canonicalize();
    return s;
  }

  static BasicLSeries make(std::string var, const std::map<int, R>& terms, int order) {
    if (terms.empty()) return BasicLSeries(std::move(var), order);
    int lo = terms.begin()->first;
    int hi = terms.rbegin()->first;
    if (hi > order)
      throw InvalidArgument("exponent " + std::to_string(hi) + " exceeds order " + std::to_string(order));
    std::vector<R> c(static_cast<std::size_t>(order - lo + 1), R(0));
    for (const auto& [e, v] : terms) c[static_cast<std::size_t>(e - lo)] = v;
    return from_coefficients(std::move(var), lo, std::move(c), order);
  }

  static BasicLSeries monomial(std::string var, R coeff, int exponent, int order) {
    return make(std::move(var), {{exponent, std::move(coeff)}}, order);
  }

  static BasicLSeries constant(std::string var, R value, int order) {
    return monomial(std::move(var), std::move(value), 0, std::max(order, 0));
  }

  const std::string& variable() const noexcept { return var_; }
  int valuation() const noexcept { return val_; }
  int order() const noexcept { return order_; }
  // Number of known coefficients past the valuation; -1 for a zero window.
  int precision() const noexcept { return order_ - val_; }
  bool is_zero_window() const noexcept { return val_ > order_; }

  // Known coefficients c_valuation .. c_order.
  const std::vector<R>& coefficients() const noexcept { return c_; }

  R coefficient(int n) const {
    if (n > order_)
      throw InsufficientPrecision("coefficient of " + var_ + "^" + std::to_string(n) +
                                  " requested but series is only known through order " +
                                  std::to_string(order_));
    if (n < val_) return R(0);
    return c_[static_cast<std::size_t>(n - val_)];
  }

  R leading_coefficient() const {
    if (is_zero_window()) throw DivisionByZeroSeries("series has no known nonzero coefficient");
    return c_.front();
  }

  friend bool operator==(const BasicLSeries&, const BasicLSeries&) = default;

 private:
  void canonicalize() {
    std::size_t skip = 0;
    while (skip < c_.size() && detail::is_zero(c_[skip])) ++skip;
    if (skip) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(skip));
      val_ += static_cast<int>(skip);
    }
    if (c_.empty()) val_ = order_ + 1;
  }

  std::string var_;
  int val_;
  int order_;
  std::vector<R> c_;
};

// Reverse formal Laurent series: finitely many positive exponents, known on
// [low_order, top]. Stored as its mirror image M(x) = F(1/x), an L-series.
template <CoefficientRing R>
class BasicRSeries {
 public:
  using coefficient_type = R;

  explicit BasicRSeries(BasicLSeries<R> mirror) : mirror_(std::move(mirror)) {}

  // The series O(var^{low_order-1}) extending leftward.
  BasicRSeries(std::string var, int low_order) : mirror_(std::move(var), -low_order) {}

  static BasicRSeries make(std::string var, const std::map<int, R>& terms, int low_order) {
    std::map<int, R> flipped;
    for (const auto& [e, v] : terms) {
      if (e < low_order)
        throw InvalidArgument("exponent " + std::to_string(e) + " lies below low order " +
                              std::to_string(low_order));
      flipped.emplace(-e, v);
    }
    return BasicRSeries(BasicLSeries<R>::make(std::move(var), flipped, -low_order));
  }

  const std::string& variable() const noexcept { return mirror_.variable(); }
  int top() const noexcept { return -mirror_.valuation(); }
  int low_order() const noexcept { return -mirror_.order(); }
  bool is_zero_window() const noexcept { return mirror_.is_zero_window(); }

  R coefficient(int n) const {
    if (n < low_order())
      throw InsufficientPrecision("coefficient of " + variable() + "^" + std::to_string(n) +
                                  " requested but R-series is only known down to " +
                                  std::to_string(low_order()));
    return mirror_.coefficient(-n);
  }

  // The L-series x -> F(1/x).
  const BasicLSeries<R>& mirrored() const noexcept { return mirror_; }

  friend bool operator==(const BasicRSeries&, const BasicRSeries&) = default;

 private:
  BasicLSeries<R> mirror_;
};

using LSeries = BasicLSeries<Rational>;
using RSeries = BasicRSeries<Rational>;

template <CoefficientRing R>
BasicLSeries<R> make_series(std::string var, const std::map<int, R>& terms, int order) {
  return BasicLSeries<R>::make(std::move(var), terms, order);
}

inline LSeries make_series(std::string var, const std::map<int, Rational>& terms, int order) {
  return LSeries::make(std::move(var), terms, order);
}

template <CoefficientRing R>
R coefficient_at(const BasicLSeries<R>& a, int n) {
  return a.coefficient(n);
}

// Restricts the known window to [valuation, order].
template <CoefficientRing R>
BasicLSeries<R> truncate(const BasicLSeries<R>& a, int order) {
  if (order > a.order())
    throw InsufficientPrecision("cannot extend order " + std::to_string(a.order()) + " to " +
                                std::to_string(order));
  if (order == a.order()) return a;
  std::vector<R> c;
  if (!a.is_zero_window() && order >= a.valuation())
    c.assign(a.coefficients().begin(), a.coefficients().begin() + (order - a.valuation() + 1));
  return BasicLSeries<R>::from_coefficients(a.variable(), a.valuation(), std::move(c), order);
}

// ---------------------------------------------------------------- ring ops

template <CoefficientRing R>
BasicLSeries<R> operator-(const BasicLSeries<R>& a) {
  std::vector<R> c;
  c.reserve(a.coefficients().size());
  for (const auto& x : a.coefficients()) c.push_back(-x);
  return BasicLSeries<R>::from_coefficients(a.variable(), a.valuation(), std::move(c), a.order());
}

namespace detail {
template <CoefficientRing R, class Op>
BasicLSeries<R> combine(const BasicLSeries<R>& a, const BasicLSeries<R>& b, Op op) {
  require_same_variable(a.variable(), b.variable());
  int order = std::min(a.order(), b.order());
  int lo = std::min(a.valuation(), b.valuation());
  if (lo > order) return BasicLSeries<R>(a.variable(), order);
  std::vector<R> c(static_cast<std::size_t>(order - lo + 1), R(0));
  for (int n = lo; n <= order; ++n) c[static_cast<std::size_t>(n - lo)] = op(a.coefficient(n), b.coefficient(n));
  return BasicLSeries<R>::from_coefficients(a.variable(), lo, std::move(c), order);
}
}  // namespace detail

template <CoefficientRing R>
BasicLSeries<R> operator+(const BasicLSeries<R>& a, const BasicLSeries<R>& b) {
  return detail::combine(a, b, [](const R& x, const R& y) { return R(x + y); });
}

template <CoefficientRing R>
BasicLSeries<R> operator-(const BasicLSeries<R>& a, const BasicLSeries<R>& b) {
  return detail::combine(a, b, [](const R& x, const R& y) { return R(x - y); });
}

// Cauchy product on the maximal provable window: valuation v_a + v_b,
// order min(N_a + v_b, N_b + v_a).
template <CoefficientRing R>
BasicLSeries<R> operator*(const BasicLSeries<R>& a, const BasicLSeries<R>& b) {
  detail::require_same_variable(a.variable(), b.variable());
  int order = std::min(a.order() + b.valuation(), b.order() + a.valuation());
  int lo = a.valuation() + b.valuation();
  if (a.is_zero_window() || b.is_zero_window() || lo > order) return BasicLSeries<R>(a.variable(), order);
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  int len = order - lo + 1;
  std::vector<R> c(static_cast<std::size_t>(len), R(0));
  int na = std::min<int>(static_cast<int>(ca.size()), len);
  for (int i = 0; i < na; ++i) {
    if (detail::is_zero(ca[static_cast<std::size_t>(i)])) continue;
    int nb = std::min<int>(static_cast<int>(cb.size()), len - i);
    for (int j = 0; j < nb; ++j) {
      if (detail::is_zero(cb[static_cast<std::size_t>(j)])) continue;
      c[static_cast<std::size_t>(i + j)] = c[static_cast<std::size_t>(i + j)] +
                                           ca[static_cast<std::size_t>(i)] * cb[static_cast<std::size_t>(j)];
    }
  }
  return BasicLSeries<R>::from_coefficients(a.variable(), lo, std::move(c), order);
}

template <CoefficientRing R>
BasicLSeries<R> scale(const BasicLSeries<R>& a, const R& k) {
  std::vector<R> c;
  c.reserve(a.coefficients().size());
  for (const auto& x : a.coefficients()) c.push_back(x * k);
  return BasicLSeries<R>::from_coefficients(a.variable(), a.valuation(), std::move(c), a.order());
}

// Multiplication by x^k; exact, so both ends of the window move by k.
template <CoefficientRing R>
BasicLSeries<R> shift(const BasicLSeries<R>& a, int k) {
  if (a.is_zero_window()) return BasicLSeries<R>(a.variable(), a.order() + k);
  return BasicLSeries<R>::from_coefficients(a.variable(), a.valuation() + k, a.coefficients(), a.order() + k);
}

template <CoefficientRing R>
BasicLSeries<R> add(const BasicLSeries<R>& a, const BasicLSeries<R>& b) {
  return a + b;
}
template <CoefficientRing R>
BasicLSeries<R> mul(const BasicLSeries<R>& a, const BasicLSeries<R>& b) {
  return a * b;
}

// Quotient q with q*b = a on the provable window. The relative precision of
// q is the smaller of the two operands' relative precisions.
template <CoefficientField R>
BasicLSeries<R> div(const BasicLSeries<R>& a, const BasicLSeries<R>& b) {
  detail::require_same_variable(a.variable(), b.variable());
  if (b.is_zero_window()) throw DivisionByZeroSeries("divisor is zero on its whole known window");
  int shift_v = a.valuation() - b.valuation();
  if (a.is_zero_window()) return BasicLSeries<R>(a.variable(), a.order() - b.valuation());
  int prec = std::min(a.precision(), b.precision());
  if (prec < 0) throw InsufficientPrecision("divisor window too short to determine a quotient coefficient");
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  const R& lead = cb.front();
  std::vector<R> q(static_cast<std::size_t>(prec + 1), R(0));
  for (int k = 0; k <= prec; ++k) {
    R acc = ca[static_cast<std::size_t>(k)];
    int jmax = std::min<int>(k, static_cast<int>(cb.size()) - 1);
    for (int j = 1; j <= jmax; ++j) {
      const R& bj = cb[static_cast<std::size_t>(j)];
      if (detail::is_zero(bj)) continue;
      acc = acc - bj * q[static_cast<std::size_t>(k - j)];
    }
    q[static_cast<std::size_t>(k)] = acc / lead;
  }
  return BasicLSeries<R>::from_coefficients(a.variable(), shift_v, std::move(q), shift_v + prec);
}

template <CoefficientField R>
BasicLSeries<R> operator/(const BasicLSeries<R>& a, const BasicLSeries<R>& b) {
  return div(a, b);
}

// The series 1 known to the same relative precision as a.
template <CoefficientRing R>
BasicLSeries<R> one_like(const BasicLSeries<R>& a) {
  return BasicLSeries<R>::constant(a.variable(), R(1), std::max(a.precision(), 0));
}

template <CoefficientRing R>
BasicLSeries<R> pow(const BasicLSeries<R>& a, int m) {
  if (m < 0) {
    if constexpr (CoefficientField<R>) {
      if (a.is_zero_window()) throw DivisionByZeroSeries("negative power of a zero series");
      return pow(div(one_like(a), a), -m);
    } else {
      throw InvalidArgument("negative power needs a coefficient field");
    }
  }
  BasicLSeries<R> result = one_like(a);
  if (m == 0) return result;
  BasicLSeries<R> base = a;
  bool first = true;
  while (true) {
    if (m & 1) {
      result = first ? base : result * base;
      first = false;
    }
    m >>= 1;
    if (!m) break;
    base = base * base;
  }
  return result;
}

// g(f(x)) = sum_n f^n [x^n] g. Requires valuation(f) >= 1, and exactly 1 when
// g has negative valuation. The result order is the smallest of
// v_f (N_g + 1) - 1 and n v_f + prec(f) over the nonzero g_n with n != 0.
template <CoefficientRing R>
BasicLSeries<R> compose(const BasicLSeries<R>& g, const BasicLSeries<R>& f) {
  detail::require_same_variable(g.variable(), f.variable());
  // For a zero window f the formula below still holds with v_f = N_f + 1 and prec = -1.
  int vf = f.valuation();
  int pf = f.precision();
  if (vf < 1)
    throw CompositionValuationError("inner series must have valuation >= 1, got " + std::to_string(vf));
  bool negative = !g.is_zero_window() && g.valuation() < 0;
  if (negative && (vf != 1 || f.is_zero_window()))
    throw CompositionValuationError("g has negative valuation so f must have valuation exactly 1");

  long target = static_cast<long>(vf) * (g.order() + 1) - 1;
  for (int n = g.valuation(); n <= g.order(); ++n)
    if (n != 0 && !detail::is_zero(g.coefficient(n))) target = std::min<long>(target, static_cast<long>(n) * vf + pf);
  int order = static_cast<int>(target);

  BasicLSeries<R> acc(f.variable(), order);
  if (g.is_zero_window()) return acc;
  if (g.valuation() <= 0 && 0 <= g.order() && !detail::is_zero(g.coefficient(0)))
    acc = acc + BasicLSeries<R>::constant(f.variable(), g.coefficient(0), order);

  auto clip = [order](const BasicLSeries<R>& s) { return s.order() > order ? truncate(s, order) : s; };

  if (g.order() >= 1) {
    BasicLSeries<R> power = clip(f);
    for (int n = 1; n <= g.order(); ++n) {
      if (n > 1) power = clip(power * f);
      if (n >= g.valuation() && !detail::is_zero(g.coefficient(n))) acc = acc + clip(scale(power, g.coefficient(n)));
      if (power.valuation() > order) break;
    }
  }
  if (negative) {
    if constexpr (CoefficientField<R>) {
      BasicLSeries<R> inv = div(one_like(f), f);
      BasicLSeries<R> power = inv;
      for (int n = -1; n >= g.valuation(); --n) {
        if (n < -1) power = power * inv;
        if (n <= g.order() && !detail::is_zero(g.coefficient(n))) acc = acc + clip(scale(power, g.coefficient(n)));
      }
    } else {
      throw InvalidArgument("negative powers in composition need a coefficient field");
    }
  }
  return acc;
}

template <CoefficientField R>
BasicLSeries<R> exp_series(const BasicLSeries<R>& a) {
  if (a.order() < 0 && !(a.is_zero_window() && a.order() >= 0))
    throw InsufficientPrecision("constant term of the exponent is not known");
  if (!a.is_zero_window() && a.valuation() < 1)
    throw CompositionValuationError("exp needs an argument with zero constant term and valuation >= 1");
  int k = std::max(a.order(), 0) + 1;
  std::vector<R> c;
  R term(1);
  for (int i = 0; i <= k; ++i) {
    if (i > 0) term = term / R(i);
    c.push_back(term);
  }
  auto e = BasicLSeries<R>::from_coefficients(a.variable(), 0, std::move(c), k);
  if (a.is_zero_window()) return BasicLSeries<R>::constant(a.variable(), R(1), a.order());
  return compose(e, a);
}

template <CoefficientField R>
BasicLSeries<R> log_series(const BasicLSeries<R>& a) {
  if (a.order() < 0) throw InsufficientPrecision("constant term of the argument is not known");
  if (a.coefficient(0) != R(1) || a.valuation() < 0)
    throw CompositionValuationError("log needs an argument with constant term 1");
  auto u = a - BasicLSeries<R>::constant(a.variable(), R(1), a.order());
  if (u.is_zero_window()) return BasicLSeries<R>(a.variable(), a.order());
  int k = a.order() + 1;
  std::vector<R> c(1, R(0));
  for (int i = 1; i <= k; ++i) c.push_back((i % 2 ? R(1) : R(-1)) / R(i));
  auto l = BasicLSeries<R>::from_coefficients(a.variable(), 0, std::move(c), k);
  return compose(l, u);
}

// ------------------------------------------------------------- calculus

template <CoefficientRing R>
BasicLSeries<R> derivative(const BasicLSeries<R>& a) {
  if (a.is_zero_window()) return BasicLSeries<R>(a.variable(), a.order() - 1);
  std::vector<R> c;
  c.reserve(a.coefficients().size());
  for (int n = a.valuation(); n <= a.order(); ++n) c.push_back(R(n) * a.coefficient(n));
  return BasicLSeries<R>::from_coefficients(a.variable(), a.valuation() - 1, std::move(c), a.order() - 1);
}

// x d/dx
template <CoefficientRing R>
BasicLSeries<R> theta(const BasicLSeries<R>& a) {
  std::vector<R> c;
  c.reserve(a.coefficients().size());
  for (int n = a.valuation(); n <= a.order(); ++n) c.push_back(R(n) * a.coefficient(n));
  return BasicLSeries<R>::from_coefficients(a.variable(), a.valuation(), std::move(c), a.order());
}

// sum_i p_i theta^i applied to a.
template <CoefficientRing R>
BasicLSeries<R> theta_polynomial(const BasicLSeries<R>& a, const std::vector<R>& p) {
  std::vector<R> c;
  for (int n = a.valuation(); n <= a.order(); ++n) {
    R v(0), pw(1);
    for (const auto& pi : p) {
      v = v + pi * pw;
      pw = pw * R(n);
    }
    c.push_back(v * a.coefficient(n));
  }
  return BasicLSeries<R>::from_coefficients(a.variable(), a.valuation(), std::move(c), a.order());
}

// ----------------------------------------------------------- substitution

// x -> c x: the coefficient of x^n is multiplied by c^n.
inline LSeries scale_var(const LSeries& a, const Rational& c) {
  if (c.is_zero()) throw InvalidArgument("scale_var needs a nonzero constant");
  std::vector<Rational> out;
  out.reserve(a.coefficients().size());
  for (int n = a.valuation(); n <= a.order(); ++n) out.push_back(a.coefficient(n) * pow(c, n));
  return LSeries::from_coefficients(a.variable(), a.valuation(), std::move(out), a.order());
}

// x -> x^m for m >= 1. The tail O(x^{N+1}) becomes O(x^{m(N+1)}).
template <CoefficientRing R>
BasicLSeries<R> stretch(const BasicLSeries<R>& a, int m) {
  if (m < 1) throw InvalidArgument("stretch needs a positive factor");
  int order = m * (a.order() + 1) - 1;
  if (a.is_zero_window()) return BasicLSeries<R>(a.variable(), order);
  std::vector<R> c(static_cast<std::size_t>(order - m * a.valuation() + 1), R(0));
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) c[i * static_cast<std::size_t>(m)] = a.coefficients()[i];
  return BasicLSeries<R>::from_coefficients(a.variable(), m * a.valuation(), std::move(c), order);
}

template <CoefficientRing R>
BasicRSeries<R> mirror(const BasicLSeries<R>& a) {
  return BasicRSeries<R>(a);
}

template <CoefficientRing R>
BasicLSeries<R> mirror(const BasicRSeries<R>& a) {
  return a.mirrored();
}

// x -> x^m for nonzero m. Positive m keeps the L family; negative m lands in
// the R family.
template <CoefficientRing R>
std::variant<BasicLSeries<R>, BasicRSeries<R>> subst_power(const BasicLSeries<R>& a, int m) {
  if (m == 0) throw InvalidArgument("subst_power needs a nonzero exponent");
  if (m > 0) return stretch(a, m);
  return BasicRSeries<R>(stretch(a, -m));
}

template <CoefficientRing R>
std::variant<BasicLSeries<R>, BasicRSeries<R>> subst_power(const BasicRSeries<R>& a, int m) {
  if (m == 0) throw InvalidArgument("subst_power needs a nonzero exponent");
  // F(x) = M(1/x), so F(x^m) = M(x^{-m}).
  return subst_power(a.mirrored(), -m);
}

// ---------------------------------------------------------- R-series ops

template <CoefficientRing R>
BasicRSeries<R> operator+(const BasicRSeries<R>& a, const BasicRSeries<R>& b) {
  return BasicRSeries<R>(a.mirrored() + b.mirrored());
}
template <CoefficientRing R>
BasicRSeries<R> operator-(const BasicRSeries<R>& a, const BasicRSeries<R>& b) {
  return BasicRSeries<R>(a.mirrored() - b.mirrored());
}
template <CoefficientRing R>
BasicRSeries<R> operator-(const BasicRSeries<R>& a) {
  return BasicRSeries<R>(-a.mirrored());
}
template <CoefficientRing R>
BasicRSeries<R> operator*(const BasicRSeries<R>& a, const BasicRSeries<R>& b) {
  return BasicRSeries<R>(a.mirrored() * b.mirrored());
}
template <CoefficientRing R>
BasicRSeries<R> scale(const BasicRSeries<R>& a, const R& k) {
  return BasicRSeries<R>(scale(a.mirrored(), k));
}
template <CoefficientRing R>
BasicRSeries<R> shift(const BasicRSeries<R>& a, int k) {
  return BasicRSeries<R>(shift(a.mirrored(), -k));
}

// theta acts on F(x) directly: the coefficient of x^n is multiplied by n.
template <CoefficientRing R>
BasicRSeries<R> theta(const BasicRSeries<R>& a) {
  return BasicRSeries<R>(-theta(a.mirrored()));
}

template <CoefficientRing R>
BasicRSeries<R> theta_polynomial(const BasicRSeries<R>& a, const std::vector<R>& p) {
  // theta_F = -theta_M on the mirror, so P(theta) becomes P(-theta).
  std::vector<R> q = p;
  for (std::size_t i = 1; i < q.size(); i += 2) q[i] = -q[i];
  return BasicRSeries<R>(theta_polynomial(a.mirrored(), q));
}

}  // namespace coefx
