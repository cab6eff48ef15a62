#include <gtest/gtest.h>

#include <random>

#include "jetmorse/jet_recursion.hpp"
#include "oracle.hpp"

using jetmorse::BoundaryConvention;
using jetmorse::JetRecursion;
using jetmorse::MultiPoly;
using jetmorse::Rational;
using jetmorse::WeightVector;

namespace {

// Full evaluation vector (x..., a..., D) for a recursion.
std::vector<Rational> point(const JetRecursion& rec, const std::vector<Rational>& xs,
                            const std::vector<Rational>& a = {}, const Rational& D = Rational(0)) {
  std::vector<Rational> v(rec.context()->size(), Rational(0));
  for (std::size_t i = 0; i < xs.size(); ++i) v[i] = xs[i];
  for (std::size_t j = 0; j < a.size(); ++j) v[rec.a_index(static_cast<int>(j) + 1)] = a[j];
  v[rec.d_index()] = D;
  return v;
}

std::vector<Rational> random_xs(int n, std::mt19937_64& rng) {
  std::vector<Rational> xs;
  for (int i = 0; i < n; ++i) xs.push_back(oracle::random_unit(rng));
  return xs;
}

}  // namespace

TEST(TransferMatrix, MatchesDirectMatrixProduct) {
  std::mt19937_64 rng(1);
  const JetRecursion rec(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto xs = random_xs(6, rng);
    const auto v = point(rec, xs);
    for (int q = 1; q <= 6; ++q) {
      for (int p = q; p <= 6; ++p) {
        const auto m = rec.transfer_matrix(p, q);
        const auto ref = oracle::product(p, q, xs);
        EXPECT_EQ(m.delta.evaluate(v), ref.m11);
        EXPECT_EQ(m.gamma.evaluate(v), ref.m12);
        EXPECT_EQ(m.beta.evaluate(v), ref.m21);
        EXPECT_EQ(m.alpha.evaluate(v), ref.m22);
      }
    }
  }
}

TEST(TransferMatrix, SingleLevel) {
  const JetRecursion rec(2);
  const auto m = rec.transfer_matrix(1, 1);
  const MultiPoly x = rec.x(1);
  EXPECT_EQ(m.delta, Rational(1) - x);
  EXPECT_EQ(m.gamma, Rational(2) * x - Rational(1));
  EXPECT_EQ(m.beta, x);
  EXPECT_EQ(m.alpha, Rational(1) - Rational(2) * x);
  const auto v = point(rec, {Rational(1)});
  EXPECT_EQ(m.delta.evaluate(v), Rational(0));
  EXPECT_EQ(m.gamma.evaluate(v), Rational(1));
  EXPECT_EQ(m.beta.evaluate(v), Rational(1));
  EXPECT_EQ(m.alpha.evaluate(v), Rational(-1));
}

TEST(TransferMatrix, AtOriginIsPowerOfT) {
  const JetRecursion rec(7);
  const auto v = point(rec, std::vector<Rational>(6, Rational(0)));
  for (int q = 1; q <= 6; ++q)
    for (int p = q; p <= 6; ++p) {
      const auto m = rec.transfer_matrix(p, q);
      EXPECT_EQ(m.delta.evaluate(v), Rational(1));
      EXPECT_EQ(m.gamma.evaluate(v), Rational(-(p - q + 1)));
      EXPECT_EQ(m.beta.evaluate(v), Rational(0));
      EXPECT_EQ(m.alpha.evaluate(v), Rational(1));
    }
}

TEST(TransferMatrix, InvalidLevelsThrow) {
  const JetRecursion rec(4);
  EXPECT_THROW((void)rec.transfer_matrix(1, 2), std::invalid_argument);
  EXPECT_THROW((void)rec.transfer_matrix(4, 1), std::invalid_argument);
  EXPECT_THROW((void)rec.transfer_matrix(1, 0), std::invalid_argument);
}

TEST(TransferMatrix, EntriesAreMultilinear) {
  const JetRecursion rec(7);
  for (int q = 1; q <= 6; ++q)
    for (int p = q; p <= 6; ++p) {
      const auto m = rec.transfer_matrix(p, q);
      for (const MultiPoly* e : {&m.alpha, &m.beta, &m.gamma, &m.delta})
        for (int s = 1; s <= 6; ++s) {
          EXPECT_LE(e->degree_in(rec.x_index(s)), 1U);
          if (s < q || s > p) EXPECT_EQ(e->degree_in(rec.x_index(s)), 0U);
        }
    }
}

// Identity suite, k <= 6 (levels up to 5).

TEST(Identities, DeterminantIsProductOfOneMinusTwoX) {
  const JetRecursion rec(6);
  for (int q = 1; q <= 5; ++q)
    for (int p = q; p <= 5; ++p) {
      MultiPoly expected = rec.constant(Rational(1));
      for (int s = q; s <= p; ++s) expected *= Rational(1) - Rational(2) * rec.x(s);
      EXPECT_EQ(rec.transfer_matrix(p, q).determinant(), expected) << "p=" << p << " q=" << q;
    }
}

TEST(Identities, GammaDeltaSums) {
  const JetRecursion rec(6);
  for (int q = 1; q <= 5; ++q)
    for (int p = q; p <= 5; ++p) {
      MultiPoly sa(rec.context()), sb(rec.context());
      for (int h = q; h <= p; ++h) {
        const auto m = rec.transfer_matrix(h, q);
        sa += m.alpha;
        sb += m.beta;
      }
      const auto m = rec.transfer_matrix(p, q);
      EXPECT_EQ(m.gamma, -sa);
      EXPECT_EQ(m.delta, Rational(1) - sb);
    }
}

TEST(Identities, ShiftInvariance) {
  const JetRecursion rec(6);
  for (int q = 2; q <= 5; ++q)
    for (int p = q; p <= 5; ++p) {
      std::vector<std::size_t> back(rec.context()->size());
      for (std::size_t i = 0; i < back.size(); ++i) back[i] = i;
      // x_{q+i} -> x_{1+i}; the displaced low variables go to the vacated slots.
      const int len = p - q + 1;
      std::vector<std::size_t> free_slots;
      for (int s = 1; s <= 5; ++s) {
        if (s >= q && s <= p) back[rec.x_index(s)] = rec.x_index(s - q + 1);
      }
      for (int s = len + 1; s <= 5; ++s) free_slots.push_back(rec.x_index(s));
      std::size_t f = 0;
      for (int s = 1; s <= 5; ++s)
        if (s < q || s > p) back[rec.x_index(s)] = free_slots.at(f++);
      const auto shifted = rec.transfer_matrix(p, q);
      const auto base = rec.transfer_matrix(len, 1);
      EXPECT_EQ(shifted.alpha.relabel(back), base.alpha);
      EXPECT_EQ(shifted.beta.relabel(back), base.beta);
      EXPECT_EQ(shifted.gamma.relabel(back), base.gamma);
      EXPECT_EQ(shifted.delta.relabel(back), base.delta);
    }
}

TEST(Identities, YVertexRecurrences) {
  const JetRecursion rec(7);
  for (int j = 1; j <= 5; ++j) {
    const MultiPoly next = rec.y(j + 1, 1);
    const std::string xn = "x" + std::to_string(j + 1);
    EXPECT_EQ(next.substitute({{xn, Rational(0)}}), rec.y(j, 1));
    MultiPoly rhs = Rational(-1) - Rational(2) * rec.y(j, 1);
    for (int h = 1; h <= j - 1; ++h) rhs -= rec.y(h, 1);
    EXPECT_EQ(next.substitute({{xn, Rational(1)}}), rhs) << "j=" << j;
  }
}

TEST(Identities, WClosedForm) {
  const JetRecursion rec(6);
  const Rational two_thirds(2, 3);
  for (int q = 1; q <= 5; ++q)
    for (int p = q; p <= 5; ++p) {
      MultiPoly rhs = rec.constant(two_thirds.pow(static_cast<unsigned>(p - q + 1)));
      for (int l = q; l <= p; ++l)
        rhs += Rational(1, 3) * two_thirds.pow(static_cast<unsigned>(l - q)) * rec.y(p, l);
      EXPECT_EQ(rec.w(p, q), rhs) << "p=" << p << " q=" << q;
    }
}

TEST(Identities, TraceExpansion) {
  const Rational tt(2, 3);
  for (int k = 2; k <= 6; ++k) {
    const JetRecursion rec(k);
    const auto a = rec.symbolic_weights();
    const auto prof = rec.curvature_profile(a);
    MultiPoly rhs = tt * rec.a(1) + tt.pow(static_cast<unsigned>(k - 1)) * rec.a(k);
    for (int s = 1; s <= k - 2; ++s) rhs += tt.pow(static_cast<unsigned>(s + 1)) * rec.a(s + 1);
    for (int l = 1; l <= k - 1; ++l) rhs += Rational(1, 3) * tt.pow(static_cast<unsigned>(l - 1)) * prof.vertical[static_cast<std::size_t>(l - 1)];
    EXPECT_EQ(prof.horiz_trace, rhs) << "k=" << k;
  }
}

TEST(Identities, QuarterDeterminantAtTwoNinths) {
  for (int k = 1; k <= 6; ++k) {
    const JetRecursion rec(k);
    const auto prof = rec.curvature_profile(rec.symbolic_weights());
    const MultiPoly det = prof.horiz_det.substitute({{"D", Rational(2, 9)}});
    const MultiPoly s = prof.horiz_alpha + prof.horiz_beta;
    const MultiPoly d = prof.horiz_alpha - prof.horiz_beta;
    EXPECT_EQ(det, Rational(1, 4) * s * s - Rational(1, 36) * d * d) << "k=" << k;
  }
}

TEST(YW, Examples) {
  const JetRecursion rec(2);
  const MultiPoly x = rec.x(1);
  EXPECT_EQ(rec.y(1, 1), Rational(1) - Rational(3) * x);
  EXPECT_EQ(rec.w(1, 1), Rational(1) - x);
  EXPECT_EQ(rec.y(1, 1).substitute({{"x1", Rational(0)}}).constant_term(), Rational(1));
  EXPECT_EQ(rec.y(1, 1).substitute({{"x1", Rational(1)}}).constant_term(), Rational(-2));
  EXPECT_EQ(rec.y(0, 1), rec.constant(Rational(1)));
  EXPECT_EQ(rec.w(0, 1), rec.constant(Rational(1)));
  // w_{p,p} = (2 + y_{p,p}) / 3
  EXPECT_EQ(rec.w(1, 1), (Rational(2) + rec.y(1, 1)) * Rational(1, 3));
}

TEST(Theta, Examples) {
  const JetRecursion r2(2);
  EXPECT_EQ(r2.theta(1, WeightVector{Rational(0), Rational(1)}), Rational(1) - Rational(3) * r2.x(1));
  EXPECT_EQ(r2.theta(1, WeightVector{Rational(2), Rational(1)}), Rational(3) - Rational(3) * r2.x(1));
  const JetRecursion r3(3);
  const auto th = r3.theta(1, WeightVector{Rational(6), Rational(2), Rational(1)});
  EXPECT_EQ(th.evaluate(point(r3, {Rational(0), Rational(0)})), Rational(9));
  EXPECT_THROW((void)r3.theta(3, WeightVector{Rational(6), Rational(2), Rational(1)}), std::out_of_range);
  EXPECT_THROW((void)r3.theta(1, WeightVector{Rational(2), Rational(1)}), std::invalid_argument);
}

TEST(Theta, MatchesOracleAndIsMultilinear) {
  std::mt19937_64 rng(4);
  for (int k = 2; k <= 6; ++k) {
    const JetRecursion rec(k);
    std::vector<Rational> a;
    for (int j = 0; j < k; ++j) a.push_back(oracle::random_rational(rng, -5, 20));
    const WeightVector wv(a);
    for (int s = 1; s <= k - 1; ++s) {
      const MultiPoly th = rec.theta(s, wv);
      for (int v = 1; v <= k - 1; ++v) EXPECT_LE(th.degree_in(rec.x_index(v)), v >= s ? 1U : 0U);
      for (int t = 0; t < 10; ++t) {
        const auto xs = random_xs(k - 1, rng);
        EXPECT_EQ(th.evaluate(point(rec, xs)), oracle::theta(s, a, xs));
      }
    }
  }
}

TEST(Horizontal, Examples) {
  const JetRecursion r2(2);
  const MultiPoly x = r2.x(1);
  {
    const auto [al, b] = r2.horizontal_pair(WeightVector{Rational(0), Rational(1)});
    EXPECT_EQ(al, Rational(1) - Rational(2) * x);
    EXPECT_EQ(b, x);
    const auto prof = r2.curvature_profile(WeightVector{Rational(0), Rational(1)});
    EXPECT_EQ(prof.horiz_det.substitute({{"D", Rational(2, 9)}}), Rational(2, 9) - x * Rational(1, 3));
    EXPECT_EQ(prof.horiz_trace, Rational(1) - x);
    EXPECT_EQ(prof.horiz_det, x * (Rational(1) - Rational(2) * x) +
                                  r2.D() * (Rational(1) - Rational(3) * x) * (Rational(1) - Rational(3) * x));
    ASSERT_EQ(prof.vertical.size(), 2U);
    EXPECT_EQ(prof.vertical[0], Rational(1) - Rational(3) * x);
    EXPECT_EQ(prof.vertical[1], r2.constant(Rational(1)));
  }
  {
    const auto [al, b] = r2.horizontal_pair(WeightVector{Rational(2), Rational(1)});
    EXPECT_EQ(al, Rational(3) - Rational(2) * x);
    EXPECT_EQ(b, x);
    EXPECT_EQ(r2.curvature_profile(WeightVector{Rational(2), Rational(1)}).vertical[0], Rational(3) - Rational(3) * x);
  }
  const JetRecursion r1(1);
  const auto prof = r1.curvature_profile(WeightVector{Rational(1)});
  EXPECT_EQ(prof.vertical.size(), 1U);
  EXPECT_EQ(prof.vertical[0], r1.constant(Rational(1)));
  EXPECT_EQ(prof.horiz_trace, r1.constant(Rational(1)));
  EXPECT_EQ(prof.horiz_det, r1.D());
  const auto [al1, b1] = r1.horizontal_pair(r1.symbolic_weights());
  EXPECT_EQ(al1, r1.a(1));
  EXPECT_TRUE(b1.is_zero());
}

TEST(Horizontal, MatchesOracle) {
  std::mt19937_64 rng(8);
  for (int k = 1; k <= 6; ++k) {
    const JetRecursion rec(k);
    std::vector<Rational> a;
    for (int j = 0; j < k; ++j) a.push_back(oracle::random_rational(rng, -5, 20));
    const auto [al, b] = rec.horizontal_pair(WeightVector(a));
    for (int t = 0; t < 10; ++t) {
      const auto xs = random_xs(k - 1, rng);
      const auto [ral, rb] = oracle::horizontal(a, xs);
      EXPECT_EQ(al.evaluate(point(rec, xs)), ral);
      EXPECT_EQ(b.evaluate(point(rec, xs)), rb);
    }
  }
}

TEST(Horizontal, LiteralConventionDiffers) {
  const JetRecursion lit(2, BoundaryConvention::kLiteral);
  const auto [al, b] = lit.horizontal_pair(WeightVector{Rational(2), Rational(1)});
  EXPECT_EQ(al, Rational(3) - Rational(2) * lit.x(1));
  EXPECT_EQ(b, Rational(2) + lit.x(1));
  EXPECT_EQ(lit.y(0, 1), lit.constant(Rational(0)));
  EXPECT_EQ(lit.w(0, 1), lit.constant(Rational(2)));
  EXPECT_EQ(jetmorse::parse_convention("literal"), BoundaryConvention::kLiteral);
  EXPECT_THROW((void)jetmorse::parse_convention("other"), std::invalid_argument);
}

TEST(WeightVectorTest, ParseAndPrint) {
  const auto a = WeightVector::parse("18, 6,2,1");
  EXPECT_EQ(a.order(), 4);
  EXPECT_EQ(a.at(1), Rational(18));
  EXPECT_EQ(a.str(), "(18,6,2,1)");
  EXPECT_EQ(WeightVector::parse("1/2,1").at(1), Rational(1, 2));
  EXPECT_THROW((void)WeightVector::parse("1,,2"), std::invalid_argument);
}

TEST(Conjugation, EndpointsAndChainMatchTransferMatrix) {
  using C2 = std::array<Rational, 2>;
  const C2 c{Rational(5, 3), Rational(-2, 7)};
  const C2 g{c[0] - c[1], c[1]};
  EXPECT_EQ(jetmorse::conjugation_step(c, Rational(0), jetmorse::PhaseSign::kPlus), g);
  EXPECT_EQ(jetmorse::conjugation_step(c, Rational(1), jetmorse::PhaseSign::kPlus), (C2{g[1], g[0]}));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto xs = random_xs(5, rng);
    C2 state{oracle::random_rational(rng, -3, 3), oracle::random_rational(rng, -3, 3)};
    const C2 start = state;
    for (int s = 1; s <= 5; ++s) {
      const auto plus = jetmorse::conjugation_step(state, xs[static_cast<std::size_t>(s - 1)], jetmorse::PhaseSign::kPlus);
      const auto minus = jetmorse::conjugation_step(state, xs[static_cast<std::size_t>(s - 1)], jetmorse::PhaseSign::kMinus);
      EXPECT_EQ(plus, minus);
      state = plus;
    }
    const auto m = oracle::product(5, 1, xs);
    EXPECT_EQ(state[0], m.m11 * start[0] + m.m12 * start[1]);
    EXPECT_EQ(state[1], m.m21 * start[0] + m.m22 * start[1]);
  }
}

TEST(Conjugation, FloatPhasesAgree) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0), ph(0.0, 6.283185307179586);
  for (int trial = 0; trial < 200; ++trial) {
    const std::array<double, 2> c{u(rng) * 4 - 2, u(rng) * 4 - 2};
    const double x = u(rng);
    const auto a = jetmorse::conjugation_step(c, x, ph(rng));
    const auto b = jetmorse::conjugation_step(c, x, ph(rng));
    EXPECT_NEAR(a[0], b[0], 1e-12);
    EXPECT_NEAR(a[1], b[1], 1e-12);
    const auto m = oracle::rt(x);
    EXPECT_NEAR(a[0], m.m11 * c[0] + m.m12 * c[1], 1e-12);
    EXPECT_NEAR(a[1], m.m21 * c[0] + m.m22 * c[1], 1e-12);
  }
  EXPECT_THROW((void)jetmorse::conjugation_step(std::array<double, 2>{1, 1}, 1.5, 0.0), std::domain_error);
  EXPECT_THROW((void)jetmorse::conjugation_step(std::array<Rational, 2>{Rational(1), Rational(1)}, Rational(-1, 2),
                                                jetmorse::PhaseSign::kPlus),
               std::domain_error);
}
