#pragma once

#include <string>

#include "coefx/laurent.hpp"
#include "coefx/rational.hpp"

namespace coefx {

// x, x^3 or x^(-2)
inline std::string format_power(const std::string& var, int e) {
  if (e == 1) return var;
  if (e < 0) return var + "^(" + std::to_string(e) + ")";
  return var + "^" + std::to_string(e);
}

// "1/2 + 1/4 z - z^2 + O(z^3)". The output parses back to the same
// coefficients once the O(...) term is dropped.
inline std::string format_series(const LSeries& s) {
  const std::string& v = s.variable();
  std::string out;
  for (int n = s.valuation(); n <= s.order(); ++n) {
    Rational c = s.coefficient(n);
    if (c.is_zero()) continue;
    bool neg = c.sign() < 0;
    Rational a = neg ? -c : c;
    if (out.empty())
      out = neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (n == 0)
      out += a.str();
    else if (a == Rational(1))
      out += format_power(v, n);
    else
      out += a.str() + " " + format_power(v, n);
  }
  int tail = s.order() + 1;
  std::string big_o = tail == 0 ? "O(1)" : "O(" + format_power(v, tail) + ")";
  return out.empty() ? big_o : out + " + " + big_o;
}

}  // namespace coefx
