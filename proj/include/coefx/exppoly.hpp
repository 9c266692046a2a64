#pragma once

#include <map>
#include <ostream>
#include <string>
#include <utility>

#include "coefx/errors.hpp"
#include "coefx/rational.hpp"

namespace coefx {

// Finite sum of terms a*e^{b t} with rational amplitude a and rate b.
// Canonical: rates are distinct map keys and no amplitude is zero.
class ExpPoly {
 public:
  using Terms = std::map<Rational, Rational>;  // rate -> amplitude

  ExpPoly() = default;
  ExpPoly(int c) : ExpPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  ExpPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(Rational(0), c);
  }

  static ExpPoly exponential(const Rational& rate, const Rational& amplitude = Rational(1)) {
    ExpPoly p;
    if (!amplitude.is_zero()) p.terms_.emplace(rate, amplitude);
    return p;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational amplitude(const Rational& rate) const {
    auto it = terms_.find(rate);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  ExpPoly operator-() const {
    ExpPoly r = *this;
    for (auto& [rate, amp] : r.terms_) amp = -amp;
    return r;
  }

  ExpPoly& operator+=(const ExpPoly& o) {
    for (const auto& [rate, amp] : o.terms_) accumulate(rate, amp);
    return *this;
  }
  ExpPoly& operator-=(const ExpPoly& o) {
    for (const auto& [rate, amp] : o.terms_) accumulate(rate, -amp);
    return *this;
  }

  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }

  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    ExpPoly r;
    for (const auto& [ra, aa] : a.terms_)
      for (const auto& [rb, ab] : b.terms_) r.accumulate(ra + rb, aa * ab);
    return r;
  }
  ExpPoly& operator*=(const ExpPoly& o) { return *this = *this * o; }

  friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.terms_ == b.terms_; }

  friend std::ostream& operator<<(std::ostream& os, const ExpPoly& p) {
    if (p.terms_.empty()) return os << "0";
    bool first = true;
    for (auto it = p.terms_.rbegin(); it != p.terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << "(" << it->second << ")";
      if (!it->first.is_zero()) os << "*e^(" << it->first << " t)";
    }
    return os;
  }

 private:
  void accumulate(const Rational& rate, const Rational& amp) {
    if (amp.is_zero()) return;
    auto [it, inserted] = terms_.emplace(rate, amp);
    if (inserted) return;
    it->second += amp;
    if (it->second.is_zero()) terms_.erase(it);
  }

  Terms terms_;
};

inline ExpPoly exppoly_mul(const ExpPoly& p, const ExpPoly& q) { return p * q; }

// Exact value of the improper integral of p(t) e^{-t} over [0, inf):
// the sum of a/(1-b) over the terms a e^{bt}. Every rate must be below 1.
inline Rational integrate_against_decay(const ExpPoly& p) {
  Rational total;
  for (const auto& [rate, amp] : p.terms()) {
    if (rate >= Rational(1))
      throw IntegralDivergent("term with rate " + rate.str() + " does not decay against e^{-t}");
    total += amp / (Rational(1) - rate);
  }
  return total;
}

}  // namespace coefx
