#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "jetmorse/rational.hpp"

using jetmorse::Rational;

namespace {

// Small fraction type on long long used as the reference.
struct Frac {
  long long n, d;
  Frac(long long num, long long den) : n(num), d(den) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
  }
  Frac operator+(const Frac& o) const { return {n * o.d + o.n * d, d * o.d}; }
  Frac operator-(const Frac& o) const { return {n * o.d - o.n * d, d * o.d}; }
  Frac operator*(const Frac& o) const { return {n * o.n, d * o.d}; }
  Frac operator/(const Frac& o) const { return {n * o.d, d * o.n}; }
  [[nodiscard]] Rational to_rational() const { return Rational(n, d); }
};

}  // namespace

TEST(Rational, ArithmeticMatchesReferenceFractions) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> num(-300, 300), den(1, 300);
  for (int i = 0; i < 2000; ++i) {
    const Frac a(num(rng), den(rng)), b(num(rng), den(rng));
    const Rational ra = a.to_rational(), rb = b.to_rational();
    EXPECT_EQ(ra + rb, (a + b).to_rational());
    EXPECT_EQ(ra - rb, (a - b).to_rational());
    EXPECT_EQ(ra * rb, (a * b).to_rational());
    if (b.n != 0) EXPECT_EQ(ra / rb, (a / b).to_rational());
    EXPECT_EQ(ra < rb, a.n * b.d < b.n * a.d);
  }
}

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(3, 6).str(), "1/2");
  EXPECT_EQ(Rational(-4, -8).str(), "1/2");
  EXPECT_EQ(Rational(2, -4).str(), "-1/2");
  EXPECT_EQ(Rational(3).str(), "3/1");
  EXPECT_EQ(Rational(3).short_str(), "3");
  EXPECT_EQ(Rational(0).str(), "0/1");
  std::ostringstream os;
  os << Rational(-7, 3);
  EXPECT_EQ(os.str(), "-7/3");
}

TEST(Rational, ParseFormsAreExact) {
  EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-12"), Rational(-12));
  EXPECT_EQ(Rational::parse("0.1"), Rational(1, 10));
  EXPECT_EQ(Rational::parse("-2.5e-1"), Rational(-1, 4));
  EXPECT_EQ(Rational::parse("5e-3"), Rational(1, 200));
  EXPECT_EQ(Rational::parse("1e3"), Rational(1000));
  EXPECT_EQ(Rational::parse(" 7/2 "), Rational(7, 2));
  EXPECT_THROW((void)Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW((void)Rational::parse("1/0"), std::domain_error);
}

TEST(Rational, DivisionByZeroThrows) {
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, ExactSqrt) {
  Rational r;
  EXPECT_TRUE(exact_sqrt(Rational(9, 4), r));
  EXPECT_EQ(r, Rational(3, 2));
  EXPECT_TRUE(exact_sqrt(Rational(0), r));
  EXPECT_EQ(r, Rational(0));
  EXPECT_FALSE(exact_sqrt(Rational(2), r));
  EXPECT_FALSE(exact_sqrt(Rational(-4), r));
}

TEST(Rational, PowAbsSign) {
  EXPECT_EQ(Rational(-2, 3).pow(3), Rational(-8, 27));
  EXPECT_EQ(Rational(5).pow(0), Rational(1));
  EXPECT_EQ(Rational(-2, 3).abs(), Rational(2, 3));
  EXPECT_EQ(Rational(-2, 3).sign(), -1);
  EXPECT_TRUE(Rational(4, 2).is_integer());
  EXPECT_EQ(Rational::from_double(0.375), Rational(3, 8));
  EXPECT_DOUBLE_EQ(Rational(1, 3).to_double(), 1.0 / 3.0);
}

TEST(Rational, FieldAxiomsOnRandomValues) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 50);
  for (int i = 0; i < 300; ++i) {
    const Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, Rational(0));
    if (!a.is_zero()) EXPECT_EQ(a * (Rational(1) / a), Rational(1));
  }
}
