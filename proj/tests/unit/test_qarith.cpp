#include <gtest/gtest.h>

#include "qhat/errors.hpp"
#include "qhat/qnumbers.hpp"
#include "qhat/ratfunc.hpp"
#include "qhat/ring.hpp"
#include "support.hpp"

using namespace qhat;
using qhat::testing::eval_q;

namespace {

const LaurentPoly v = LaurentPoly::v(1);
const LaurentPoly vi = LaurentPoly::v(-1);

// [a; t]_d straight from the product formula, reduced by RatFunc.
RatFunc binom_product(int a, int t, int d) {
  RatFunc r = 1;
  for (int s = 1; s <= t; ++s) {
    const int top = d * (a - s + 1), bot = d * s;
    r *= RatFunc(LaurentPoly::v(top) - LaurentPoly::v(-top), LaurentPoly::v(bot) - LaurentPoly::v(-bot));
  }
  return r;
}

}  // namespace

TEST(QInt, Examples) {
  EXPECT_TRUE(qint(0, 1).is_zero());
  EXPECT_EQ(qint(2, 1), v + vi);
  EXPECT_EQ(qint(-2, 1), -(v + vi));
}

TEST(QInt, MatchesDefiningFraction) {
  for (int d = 1; d <= 3; ++d) {
    for (int n = -8; n <= 8; ++n) {
      RatFunc f(LaurentPoly::v(d * n) - LaurentPoly::v(-d * n), LaurentPoly::v(d) - LaurentPoly::v(-d));
      auto p = is_integral(f);
      ASSERT_TRUE(p.has_value()) << n;
      EXPECT_EQ(*p, qint(n, d)) << "n=" << n << " d=" << d;
    }
  }
}

TEST(QBinom, Examples) {
  for (int a : {-3, 0, 5}) EXPECT_TRUE(qbinom(a, 0, 1).is_one());
  EXPECT_EQ(qbinom(2, 1, 1), v + vi);
  EXPECT_EQ(qbinom(4, 2, 1), LaurentPoly::v(4) + LaurentPoly::v(2) + 2 + LaurentPoly::v(-2) + LaurentPoly::v(-4));
}

TEST(QBinom, IntegralAndEqualToProductFormula) {
  for (int d = 1; d <= 3; ++d) {
    for (int a = -12; a <= 12; ++a) {
      for (int t = 0; t <= 12; ++t) {
        RatFunc r = binom_product(a, t, d);
        auto p = is_integral(r);
        ASSERT_TRUE(p.has_value()) << a << " " << t << " " << d;
        EXPECT_EQ(*p, qbinom(a, t, d));
      }
    }
  }
}

TEST(QBinom, PascalIdentity) {
  for (int a = 1; a <= 10; ++a) {
    for (int t = 1; t <= a; ++t) {
      LaurentPoly rhs = LaurentPoly::v(t) * qbinom(a - 1, t, 1) + LaurentPoly::v(-(a - t)) * qbinom(a - 1, t - 1, 1);
      EXPECT_EQ(qbinom(a, t, 1), rhs) << a << " " << t;
    }
  }
}

TEST(QBinom, FactorialQuotient) {
  for (int d = 1; d <= 2; ++d) {
    for (int a = 0; a <= 9; ++a) {
      for (int t = 0; t <= a; ++t) {
        RatFunc q(qfact(a, d), qfact(t, d) * qfact(a - t, d));
        EXPECT_EQ(q, RatFunc(qbinom(a, t, d)));
      }
    }
  }
}

TEST(QFact, Examples) {
  EXPECT_TRUE(qfact(0, 1).is_one());
  EXPECT_EQ(qfact(2, 1), v + vi);
  EXPECT_EQ(qfact(3, 1), (v + vi) * (LaurentPoly::v(2) + 1 + LaurentPoly::v(-2)));
}

TEST(IsIntegral, Examples) {
  auto a = is_integral(RatFunc(LaurentPoly::v(2) - LaurentPoly::v(-2), v - vi));
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, v + vi);
  EXPECT_FALSE(is_integral(RatFunc(1, v - vi)));
  auto c = is_integral(RatFunc(LaurentPoly::v(-3)));
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, LaurentPoly::v(-3));
}

TEST(RatFunc, CanonicalDenominator) {
  RatFunc f(LaurentPoly(3), LaurentPoly::v(-2) * (LaurentPoly(0) - LaurentPoly::v(3) + 2));
  EXPECT_EQ(f.den().low(), 0);
  EXPECT_GT(f.den().leading(), 0);
  EXPECT_EQ(RatFunc(2, 4), RatFunc(1, 2));
  EXPECT_EQ(RatFunc(v - vi, LaurentPoly::v(2) - 1), RatFunc(vi));
}

TEST(RatFunc, CanonicalFormUniqueAcrossExpressionTrees) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    RatFunc f = qhat::testing::random_ratfunc(rng);
    RatFunc g = qhat::testing::random_ratfunc(rng);
    RatFunc h = qhat::testing::random_ratfunc(rng);
    EXPECT_EQ((f + g) * h, f * h + g * h);
    EXPECT_EQ(f - f, RatFunc(0));
    if (!g.is_zero()) EXPECT_EQ((f / g) * g, f);
    if (!f.is_zero()) EXPECT_EQ(f * f.inverse(), RatFunc(1));
    EXPECT_EQ(RatFunc::deserialize(f.serialize()), f);
  }
}

TEST(RatFunc, AgreesWithPointEvaluation) {
  std::mt19937 rng(11);
  const mpq_class xs[] = {mpq_class(2), mpq_class(-3), mpq_class(5, 7)};
  for (int trial = 0; trial < 200; ++trial) {
    RatFunc f = qhat::testing::random_ratfunc(rng);
    RatFunc g = qhat::testing::random_ratfunc(rng);
    for (const auto& x : xs) {
      mpq_class fd = eval_q(f.den(), x), gd = eval_q(g.den(), x);
      if (fd == 0 || gd == 0) continue;
      EXPECT_EQ(eval_q(f * g, x), eval_q(f, x) * eval_q(g, x));
      EXPECT_EQ(eval_q(f + g, x), eval_q(f, x) + eval_q(g, x));
    }
  }
}

TEST(Evaluate, Examples) {
  auto one = RingPoint::rational(1);
  EXPECT_EQ(evaluate(RatFunc(v + vi), one), RingElem(2));
  auto i4 = RingPoint::cyclotomic(4);
  EXPECT_TRUE(evaluate(RatFunc(v + vi), i4).is_zero());
  EXPECT_TRUE(evaluate(qint(2, 1), i4).is_zero());
  EXPECT_THROW(evaluate(RatFunc(1, v - 1), one), PoleError);
}

TEST(Evaluate, RationalPointMatchesDirectSum) {
  std::mt19937 rng(3);
  for (mpq_class x : {mpq_class(1), mpq_class(-2), mpq_class(3, 4)}) {
    auto p = RingPoint::rational(x);
    for (int trial = 0; trial < 100; ++trial) {
      RatFunc f = qhat::testing::random_ratfunc(rng);
      if (eval_q(f.den(), x) == 0) {
        EXPECT_THROW(evaluate(f, p), PoleError);
        continue;
      }
      EXPECT_EQ(evaluate(f, p), RingElem(eval_q(f, x)));
    }
  }
}

TEST(Evaluate, RingHomomorphism) {
  std::mt19937 rng(5);
  std::vector<RingPoint> points = {RingPoint::rational(mpq_class(2, 3)), RingPoint::cyclotomic(3),
                                   RingPoint::cyclotomic(4), RingPoint::cyclotomic(5), RingPoint::cyclotomic(12)};
  for (const auto& p : points) {
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
      RatFunc f = qhat::testing::random_ratfunc(rng);
      RatFunc g = qhat::testing::random_ratfunc(rng);
      RatFunc h = qhat::testing::random_ratfunc(rng);
      try {
        RingElem lhs = evaluate(f * g + h, p);
        RingElem rhs = evaluate(f, p) * evaluate(g, p) + evaluate(h, p);
        EXPECT_EQ(lhs, rhs) << p.describe();
        ++checked;
      } catch (const PoleError&) {
      }
    }
    EXPECT_GT(checked, 50) << p.describe();
  }
}

TEST(Ring, CyclotomicRootHasExactOrder) {
  for (int n = 1; n <= 12; ++n) {
    auto p = RingPoint::cyclotomic(n);
    RingElem x = p.one();
    for (int k = 1; k <= n; ++k) {
      x *= p.xi();
      EXPECT_EQ(x.is_one(), k == n) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Ring, CyclotomicPolynomialsMultiplyToXnMinusOne) {
  for (int n = 1; n <= 15; ++n) {
    ZPoly prod = {1};
    for (int d = 1; d <= n; ++d) {
      if (n % d == 0) prod = zpoly::mul(prod, cyclotomic_polynomial(d));
    }
    ZPoly expect(n + 1, 0);
    expect[0] = -1;
    expect[n] = 1;
    EXPECT_EQ(prod, expect) << n;
  }
}

TEST(Ring, InverseIsTwoSided) {
  std::mt19937 rng(9);
  auto p = RingPoint::cyclotomic(7);
  for (int trial = 0; trial < 50; ++trial) {
    RingElem x;
    try {
      x = evaluate(qhat::testing::random_laurent(rng), p);
    } catch (const PoleError&) {
      continue;
    }
    if (x.is_zero()) continue;
    EXPECT_TRUE((x * x.inverse()).is_one());
  }
}

TEST(Laurent, SerializeRoundTrip) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    LaurentPoly f = qhat::testing::random_laurent(rng, 20, 1000000);
    EXPECT_EQ(LaurentPoly::deserialize(f.serialize()), f);
  }
}
