#pragma once

#include <json.hpp>

#include "coefx/laurent.hpp"
#include "coefx/rational.hpp"

namespace coefx::io {

inline nlohmann::json to_json(const Rational& r) {
  return nlohmann::json::array({r.numerator().get_str(), r.denominator().get_str()});
}

inline nlohmann::json to_json(const LSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int n = s.valuation(); n <= s.order(); ++n) coeffs.push_back(to_json(s.coefficient(n)));
  return {{"variable", s.variable()}, {"valuation", s.valuation()}, {"order", s.order()}, {"coefficients", coeffs}};
}

}  // namespace coefx::io
