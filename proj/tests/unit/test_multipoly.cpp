#include <gtest/gtest.h>

#include <random>

#include "jetmorse/multipoly.hpp"
#include "oracle.hpp"

using jetmorse::BoxBound;
using jetmorse::ContextError;
using jetmorse::ContextPtr;
using jetmorse::MultiPoly;
using jetmorse::Rational;

namespace {

MultiPoly random_poly(const ContextPtr& ctx, std::mt19937_64& rng, int terms = 5, unsigned max_deg = 3) {
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
  MultiPoly p(ctx);
  for (int t = 0; t < terms; ++t) {
    jetmorse::Exponent e(ctx->size());
    for (auto& v : e) v = deg(rng);
    p += MultiPoly::monomial(ctx, e, Rational(num(rng), den(rng)));
  }
  return p;
}

std::vector<Rational> random_point(std::size_t n, std::mt19937_64& rng) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(oracle::random_rational(rng, -3, 3, 8));
  return v;
}

class MultiPolyTest : public ::testing::Test {
 protected:
  ContextPtr ctx = jetmorse::make_context({"x", "y", "z"});
  MultiPoly x = MultiPoly::variable(ctx, "x");
  MultiPoly y = MultiPoly::variable(ctx, "y");
  MultiPoly z = MultiPoly::variable(ctx, "z");
};

}  // namespace

TEST_F(MultiPolyTest, RingAxiomsOnRandomPolynomials) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    const MultiPoly p = random_poly(ctx, rng), q = random_poly(ctx, rng), r = random_poly(ctx, rng);
    EXPECT_EQ(p + q, q + p);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ(p * MultiPoly::constant(ctx, Rational(1)), p);
  }
}

TEST_F(MultiPolyTest, EvaluationIsARingHomomorphism) {
  std::mt19937_64 rng(5);
  const MultiPoly p = random_poly(ctx, rng, 6), q = random_poly(ctx, rng, 6);
  for (int i = 0; i < 100; ++i) {
    const auto pt = random_point(3, rng);
    EXPECT_EQ((p * q).evaluate(pt), p.evaluate(pt) * q.evaluate(pt));
    EXPECT_EQ((p + q).evaluate(pt), p.evaluate(pt) + q.evaluate(pt));
    EXPECT_EQ((p - q).evaluate(pt), p.evaluate(pt) - q.evaluate(pt));
    const std::map<std::string, Rational> named{{"x", pt[0]}, {"y", pt[1]}, {"z", pt[2]}};
    EXPECT_EQ(p.evaluate(named), p.evaluate(pt));
  }
}

TEST_F(MultiPolyTest, FundamentalTheoremOfCalculus) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    const MultiPoly p = random_poly(ctx, rng);
    const Rational lo = oracle::random_rational(rng, -2, 0), hi = oracle::random_rational(rng, 0, 2);
    const MultiPoly lhs = p.derivative("y").integrate("y", lo, hi);
    const MultiPoly rhs = p.substitute({{"y", hi}}) - p.substitute({{"y", lo}});
    EXPECT_EQ(lhs, rhs);
  }
}

TEST_F(MultiPolyTest, IntegralsByHand) {
  EXPECT_EQ((x * x).integrate("x", Rational(0), Rational(1)), MultiPoly::constant(ctx, Rational(1, 3)));
  const std::vector<BoxBound> box{{"x", Rational(0), Rational(1)}, {"y", Rational(0), Rational(1)}};
  EXPECT_EQ((x * y).integrate_box(box), MultiPoly::constant(ctx, Rational(1, 4)));
  // (1 - 3x)(2/9 - x/3) over [0, 2/3] is 2/81.
  const MultiPoly f = (Rational(1) - Rational(3) * x) * (Rational(2, 9) - x * Rational(1, 3));
  EXPECT_EQ(f.integrate("x", Rational(0), Rational(2, 3)).constant_term(), Rational(2, 81));
  // z stays symbolic.
  EXPECT_EQ((x * z).integrate("x", Rational(0), Rational(2)), Rational(2) * z);
}

TEST_F(MultiPolyTest, BoxIntegralMatchesGaussLegendre) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 10; ++i) {
    const MultiPoly p = random_poly(ctx, rng, 6, 4);
    const std::vector<BoxBound> box{{"x", Rational(0), Rational(1)}, {"y", Rational(0), Rational(1)},
                                    {"z", Rational(0), Rational(1)}};
    const double exact = p.integrate_box(box).constant_term().to_double();
    const double quad = oracle::cube_integral(3, [&](const std::vector<double>& v) {
      double s = 0;
      for (const auto& [e, c] : p.terms()) s += c.to_double() * std::pow(v[0], e[0]) * std::pow(v[1], e[1]) * std::pow(v[2], e[2]);
      return s;
    });
    EXPECT_NEAR(exact, quad, 1e-9 * (1 + std::abs(exact)));
  }
}

TEST_F(MultiPolyTest, Degrees) {
  const MultiPoly p = x * x * y + Rational(3) * z - Rational(1);
  EXPECT_EQ(p.degree_in("x"), 2U);
  EXPECT_EQ(p.degree_in("z"), 1U);
  EXPECT_EQ(p.total_degree(), 3U);
  EXPECT_EQ(p.constant_term(), Rational(-1));
  EXPECT_FALSE(p.is_constant());
  EXPECT_TRUE(p.depends_on(std::size_t{1}));
  EXPECT_EQ(p.pow(0), MultiPoly::constant(ctx, Rational(1)));
  EXPECT_EQ(x.pow(3), x * x * x);
}

TEST_F(MultiPolyTest, ZeroCoefficientsAreNotStored) {
  const MultiPoly p = x + y - x;
  EXPECT_EQ(p.size(), 1U);
  EXPECT_EQ(p, y);
  EXPECT_TRUE((x * Rational(0)).is_zero());
}

TEST_F(MultiPolyTest, MismatchedContextsThrow) {
  const auto other = jetmorse::make_context({"x", "w"});
  const MultiPoly u = MultiPoly::variable(other, "x");
  EXPECT_THROW((void)(x + u), ContextError);
  EXPECT_THROW((void)(x * u), ContextError);
  EXPECT_THROW((void)jetmorse::make_context({"x", "x"}), ContextError);
  EXPECT_THROW((void)(x * y).evaluate(std::map<std::string, Rational>{{"x", Rational(1)}}), std::invalid_argument);
  EXPECT_THROW((void)x.evaluate(std::map<std::string, Rational>{{"q", Rational(1)}}), std::invalid_argument);
}

TEST_F(MultiPolyTest, EmbedAndRelabel) {
  const auto bigger = jetmorse::make_context({"w", "z", "y", "x"});
  const MultiPoly p = x * y + z;
  const MultiPoly e = p.embed(bigger);
  EXPECT_EQ(e, MultiPoly::variable(bigger, "x") * MultiPoly::variable(bigger, "y") + MultiPoly::variable(bigger, "z"));
  const auto small = jetmorse::make_context({"x", "y"});
  EXPECT_THROW((void)p.embed(small), ContextError);
  EXPECT_EQ((x * y).embed(small).embed(ctx), x * y);
  const std::vector<std::size_t> swap{1, 0, 2};
  EXPECT_EQ((x * x * y).relabel(swap), y * y * x);
}

TEST_F(MultiPolyTest, ComposeSubstitutesPolynomials) {
  const MultiPoly p = x * x + y;
  const std::vector<MultiPoly> images{y + z, x, z};
  EXPECT_EQ(p.compose(images), (y + z) * (y + z) + x);
}

TEST_F(MultiPolyTest, JsonRoundTrip) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const MultiPoly p = random_poly(ctx, rng);
    const auto j = p.to_json();
    EXPECT_EQ(MultiPoly::from_json(j), p);
    EXPECT_EQ(MultiPoly::from_json(j).to_json().dump(), j.dump());
  }
  const auto j = (Rational(3, 2) * x).to_json();
  EXPECT_EQ(j.at("terms").at(0).at("coef"), "3/2");
}

TEST_F(MultiPolyTest, ToString) {
  EXPECT_EQ(MultiPoly(ctx).to_string(), "0");
  EXPECT_EQ((x * x * x).to_string(), "x^3");
  EXPECT_EQ((Rational(1) - Rational(3) * x).to_string(), "-3*x + 1");
}
