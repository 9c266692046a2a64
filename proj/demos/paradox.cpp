// Walks through the region dependence of two-sided expansions: the same
// rational function has different coefficients in different annuli, which
// is exactly how the "rightward sum" bracket goes wrong.

#include <iostream>
#include <string>

#include "coefx/coefx.hpp"

using namespace coefx;

namespace {

void show_window(const std::string& label, const DoubleExpansion& e, int from, int to) {
  std::cout << "  " << label << ":";
  for (int n = from; n <= to; ++n) std::cout << "  [" << n << "] " << e.coefficient(n);
  std::cout << "\n";
}

// 1/(2-z) = -1/(z-2)
FactoredRational one_over_two_minus_z() { return {{{0, Rational(-1)}}, {{Rational(2), 1}}, 0, Rational(1)}; }

// 1/(2-z) + 1/(2-1/z) = (z^2 - 4z + 1) / (2 (z-2)(z-1/2))
FactoredRational symmetric_pair() {
  return {{{0, Rational(1)}, {1, Rational(-4)}, {2, Rational(1)}},
          {{Rational(2), 1}, {Rational(1, 2), 1}},
          0,
          Rational(1, 2)};
}

// z^k/(1-z) = -z^k/(z-1)
FactoredRational rightward(int k) { return {{{0, Rational(-1)}}, {{Rational(1), 1}}, k, Rational(1)}; }

// -z/(1-z) = z/(z-1)
FactoredRational moved_inside() { return {{{0, Rational(1)}}, {{Rational(1), 1}}, 1, Rational(1)}; }

}  // namespace

int main() {
  std::cout << "1/(2-z)\n";
  show_window("|z| < 2", expand_in_annulus(one_over_two_minus_z(), AnnulusSpec::disc(Rational(2))), 0, 4);
  show_window("|z| > 2", expand_in_annulus(one_over_two_minus_z(), AnnulusSpec::exterior(Rational(2))), -4, -1);

  std::cout << "\n1/(2-z) + 1/(2-1/z)\n";
  auto f = symmetric_pair();
  show_window("|z| < 1/2", expand_in_annulus(f, AnnulusSpec::disc(Rational(1, 2))), 0, 3);
  show_window("1/2 < |z| < 2", expand_in_annulus(f, {Rational(1, 2), Rational(2)}), -2, 2);
  show_window("|z| > 2", expand_in_annulus(f, AnnulusSpec::exterior(Rational(2))), -3, 0);

  // The lucky case: reading z^n/(1-z) as z^n + z^{n+1} + ... (valid for
  // |z| < 1) and bracketing against the polynomial H = (1-z)^2 gives the
  // rightward sum h_n + h_{n+1} + ..., which happens to agree with
  // [z^n](z^2 - z).
  std::cout << "\n[z^n/(1-z)] (1-z)^2 read in |z| < 1\n";
  const std::map<int, Rational> h{{0, Rational(1)}, {1, Rational(-2)}, {2, Rational(1)}};
  const std::map<int, Rational> z2_minus_z{{1, Rational(-1)}, {2, Rational(1)}};
  for (int n = 0; n <= 3; ++n) {
    auto fn = expand_in_annulus(rightward(n), AnnulusSpec::disc(Rational(1)));
    Rational sum;
    for (const auto& [k, hk] : h) sum += fn.coefficient(k) * hk;
    auto it = z2_minus_z.find(n);
    std::cout << "  n=" << n << ": rightward sum " << sum << ", [z^n](z^2-z) "
              << (it == z2_minus_z.end() ? Rational(0) : it->second) << "\n";
  }

  // The unlucky case: F = H = 1, G = 1/(1-z). Moving G inside turns it into
  // 1/(1-1/z) = -z/(1-z), whose constant term depends on the annulus.
  std::cout << "\nconstant term of -z/(1-z)\n";
  std::cout << "  |z| < 1: " << expand_in_annulus(moved_inside(), AnnulusSpec::disc(Rational(1))).coefficient(0) << "\n";
  std::cout << "  |z| > 1: " << expand_in_annulus(moved_inside(), AnnulusSpec::exterior(Rational(1))).coefficient(0)
            << "\n";

  std::cout << "\nthe formal-series evaluator refuses the ambiguous bracket argument:\n";
  try {
    Rational v = eval_bracket("1/(1-z)", "1", 8);
    std::cout << "  " << v << "\n";
  } catch (const UnsafeBracket& e) {
    std::cout << "  " << e.what() << "\n";
  }
  std::cout << "while the leftward sum z^2/(z-1) is fine: [z^2/(z-1)] (1+z+z^2) = "
            << eval_bracket("z^2/(z-1)", "1+z+z^2", 8) << "\n";
}
