#include <gtest/gtest.h>

#include "coefx/exppoly.hpp"
#include "coefx/rational.hpp"
#include "properties.hpp"

using namespace coefx;

namespace {

// C(n,k) straight from the falling-factorial definition, in plain integers.
long long falling_binomial(long long n, long long k) {
  if (k < 0) return 0;
  long long num = 1, den = 1;
  for (long long i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

}  // namespace

TEST(Rational, AddsExactly) { EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6)); }

TEST(Rational, Canonicalizes) {
  Rational r(2, 4);
  EXPECT_EQ(r.numerator(), 1);
  EXPECT_EQ(r.denominator(), 2);
  Rational z(0, -7);
  EXPECT_EQ(z.denominator(), 1);
  Rational n(3, -6);
  EXPECT_EQ(n.numerator(), -1);
  EXPECT_EQ(n.denominator(), 2);
}

TEST(Rational, ThreeExpansionsRowValue) { EXPECT_EQ(Rational(1, 8) - Rational(2), Rational(-15, 8)); }

TEST(Rational, DivisionByZeroThrows) {
  EXPECT_THROW(Rational(1) / Rational(0), DivisionByZero);
  EXPECT_THROW(Rational(mpz_class(1), mpz_class(0)), DivisionByZero);
}

TEST(Rational, ParsesLiterals) {
  EXPECT_EQ(Rational::parse("-3/6"), Rational(-1, 2));
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_THROW(Rational::parse("x"), InvalidArgument);
}

TEST(Rational, FieldAxioms) {
  props::Rng rng(1);
  for (int i = 0; i < 300; ++i) {
    Rational a = props::random_rational(rng), b = props::random_rational(rng), c = props::random_rational(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + -a, Rational(0));
    if (!a.is_zero()) EXPECT_EQ(a * (Rational(1) / a), Rational(1));
  }
}

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(4, 2), Rational(6));
  EXPECT_EQ(binomial(-3, 2), Rational(falling_binomial(-3, 2)));
  EXPECT_EQ(binomial(-3, 2), Rational(6));
  EXPECT_EQ(binomial(3, 5), Rational(0));
  EXPECT_EQ(binomial(3, -1), Rational(0));
  EXPECT_EQ(binomial(-2, -1), Rational(0));
}

TEST(Binomial, DixonMiddleTerm) {
  Rational b = binomial(2, 1);
  EXPECT_EQ(b * b * b, Rational(8));
}

TEST(Binomial, MatchesFallingFactorialAndPascal) {
  for (long n = -8; n <= 12; ++n)
    for (long k = -2; k <= 10; ++k) {
      if (k > n && n >= 0)
        EXPECT_EQ(binomial(n, k), Rational(0));
      else
        EXPECT_EQ(binomial(n, k), Rational(falling_binomial(n, k))) << n << " " << k;
      EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k)) << n << " " << k;
    }
}

TEST(ExpPoly, SquareOfShiftedExponential) {
  ExpPoly e = ExpPoly::exponential(Rational(1, 3)) - ExpPoly(1);
  ExpPoly want = ExpPoly::exponential(Rational(2, 3)) - ExpPoly::exponential(Rational(1, 3), Rational(2)) + ExpPoly(1);
  EXPECT_EQ(exppoly_mul(e, e), want);
}

TEST(ExpPoly, IdentityAndAnnihilation) {
  ExpPoly p = ExpPoly::exponential(Rational(1, 2)) - ExpPoly(1);
  EXPECT_EQ(exppoly_mul(p, ExpPoly(1)), p);
  EXPECT_EQ(exppoly_mul(p, ExpPoly(0)), ExpPoly());
  EXPECT_EQ(ExpPoly(0), ExpPoly());
}

TEST(ExpPoly, IntegratesAgainstDecay) {
  EXPECT_EQ(integrate_against_decay(ExpPoly(1)), Rational(1));
  EXPECT_EQ(integrate_against_decay(ExpPoly::exponential(Rational(2, 3))), Rational(3));
  EXPECT_THROW(integrate_against_decay(ExpPoly::exponential(Rational(2))), IntegralDivergent);
  EXPECT_THROW(integrate_against_decay(ExpPoly::exponential(Rational(1))), IntegralDivergent);
}

TEST(ExpPoly, RingLawsAndLinearIntegral) {
  props::Rng rng(2);
  auto random_exppoly = [&] {
    ExpPoly p;
    for (int i = props::uniform(rng, 0, 3); i > 0; --i)
      p += ExpPoly::exponential(Rational(props::uniform(rng, -4, 3), 4), props::random_rational(rng));
    return p;
  };
  for (int i = 0; i < 200; ++i) {
    ExpPoly a = random_exppoly(), b = random_exppoly(), c = random_exppoly();
    EXPECT_EQ(exppoly_mul(a, b), exppoly_mul(b, a));
    EXPECT_EQ(exppoly_mul(exppoly_mul(a, b), c), exppoly_mul(a, exppoly_mul(b, c)));
    Rational s = props::random_rational(rng), t = props::random_rational(rng);
    EXPECT_EQ(integrate_against_decay(ExpPoly(s) * a + ExpPoly(t) * b),
              s * integrate_against_decay(a) + t * integrate_against_decay(b));
  }
}
