#include <gtest/gtest.h>

#include <random>

#include "qhat/errors.hpp"
#include "qhat/limit.hpp"
#include "qhat/qnumbers.hpp"

using namespace qhat;

namespace {

SaturatedSet sat(const DatumPtr& d, std::vector<Weight> gens) { return saturate(d, gens); }

std::vector<SchurPtr> a1_chain(Tower& t, std::initializer_list<int> tops) {
  std::vector<SchurPtr> out;
  for (int k : tops) out.push_back(t.get(std::vector<Weight>{{k}}));
  return out;
}

RMatrix diag(std::vector<RatFunc> xs) {
  RMatrix m(xs.size(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) m(i, i) = xs[i];
  return m;
}

// Letter matrices taken straight from the module, bypassing Expr evaluation.
RMatrix letter_on(const WeylModule& m, const Letter& l) {
  switch (l.kind) {
    case Letter::Kind::E:
      return m.divided_power(l.sign, l.index, l.power);
    case Letter::Kind::K:
      return m.k_matrix(l.vec);
    case Letter::Kind::One:
      return m.weight_projector(l.vec);
  }
  return {};
}

SchurElement direct_value(const Expr& e, const SchurAlgebra& s) {
  SchurElement out = s.zero();
  for (std::size_t b = 0; b < s.modules().size(); ++b) {
    const auto& m = *s.modules()[b];
    for (const auto& [w, c] : e.terms()) {
      RMatrix acc = RMatrix::identity(m.dim());
      for (const auto& l : w) acc = acc * letter_on(m, l);
      out.blocks[b] += c * acc;
    }
  }
  return out;
}

Expr random_u(std::mt19937& rng, const RootDatum& d, bool with_ones) {
  std::uniform_int_distribution<int> len(0, 4), kind(0, with_ones ? 3 : 2), idx(0, static_cast<int>(d.rank()) - 1),
      pw(1, 2), hv(-1, 1), terms(1, 2), coef(-2, 2);
  Expr out;
  const int nt = terms(rng);
  for (int t = 0; t < nt; ++t) {
    Word w;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) {
      const int c = kind(rng);
      if (c <= 1) {
        w.push_back(Letter::e(c == 0 ? Sign::Plus : Sign::Minus, idx(rng), pw(rng)));
      } else if (c == 2) {
        Coweight h(d.rank_y());
        for (auto& x : h) x = hv(rng);
        w.push_back(Letter::k(h));
      } else {
        Weight lam(d.rank_x());
        for (auto& x : lam) x = hv(rng);
        w.push_back(Letter::one(lam));
      }
    }
    if (with_ones) {
      Weight lam(d.rank_x());
      for (auto& x : lam) x = hv(rng);
      w.push_back(Letter::one(lam));
    }
    int c = coef(rng);
    if (c == 0) c = 1;
    out += Expr::word(w, RatFunc(c) * RatFunc::v(t));
  }
  return out;
}

int corpus_height(const std::string& name) { return name == "A1xA1" ? 3 : 4; }

}  // namespace

TEST(HatElements, Examples) {
  auto a1 = RootDatum::preset("A1");
  Tower t(a1);
  auto s02 = t.get(std::vector<Weight>{{2}});
  auto one0 = hat_one(a1, {0}).at(*s02);
  EXPECT_EQ(one0.blocks[0], diag({1}));
  EXPECT_EQ(one0.blocks[1], diag({0, 1, 0}));
  EXPECT_TRUE(hat_one(a1, {4}).at(*s02).is_zero());
  EXPECT_EQ(hat_K(a1, {0}).at(*s02), s02->identity());
  EXPECT_EQ(hat_E(a1, Sign::Minus, 0, 2).at(*s02), s02->divided_power(Sign::Minus, 0, 2));
  EXPECT_TRUE(limit_zero(a1).at(*s02).is_zero());
  EXPECT_EQ(limit_identity(a1).at(*s02), s02->identity());
}

TEST(LimitArithmetic, Examples) {
  auto a1 = RootDatum::preset("A1");
  Tower t(a1);
  for (int top : {0, 1, 2, 3, 4}) {
    auto s = t.get(std::vector<Weight>{{top}});
    for (int lam : {-2, -1, 0, 1, 2}) {
      auto e = hat_one(a1, {lam});
      EXPECT_EQ(limit_mul(e, e).at(*s), e.at(*s));
    }
    EXPECT_TRUE((hat_one(a1, {1}) * hat_one(a1, {-1})).at(*s).is_zero());
    EXPECT_EQ((hat_K(a1, {1}) * hat_K(a1, {-1})).at(*s), s->identity());
    auto sum = limit_add(hat_E(a1, Sign::Plus, 0), hat_E(a1, Sign::Minus, 0));
    EXPECT_EQ(sum.at(*s), s->generator(Sign::Plus, 0) + s->generator(Sign::Minus, 0));
    EXPECT_EQ((RatFunc(3) * hat_K(a1, {1})).at(*s), RatFunc(3) * s->k_element({1}));
    EXPECT_TRUE((hat_K(a1, {1}) - hat_K(a1, {1})).at(*s).is_zero());
  }
}

TEST(Theta, Examples) {
  auto a1 = RootDatum::preset("A1");
  Tower t(a1);
  auto s0 = t.get(std::vector<Weight>{{0}});
  auto s02 = t.get(std::vector<Weight>{{2}});
  auto e = theta(a1, parse_expr("E1", *a1));
  EXPECT_TRUE(e.at(*s0).is_zero());
  EXPECT_FALSE(e.at(*s02).is_zero());
  for (const auto& s : {s0, s02}) {
    EXPECT_EQ(theta(a1, parse_expr("K(1)", *a1)).at(*s), hat_K(a1, {1}).at(*s));
    EXPECT_EQ(theta(a1, Expr(RatFunc(1))).at(*s), s->identity());
  }
  EXPECT_THROW(theta(a1, parse_expr("E1 1(0)", *a1)), InvalidArgument);
}

TEST(ThetaDot, Examples) {
  auto a1 = RootDatum::preset("A1");
  Tower t(a1);
  auto s0 = t.get(std::vector<Weight>{{0}});
  EXPECT_TRUE(theta_dot(a1, parse_expr("E1 1(0)", *a1)).at(*s0).is_zero());
  auto one4 = theta_dot(a1, parse_expr("1(4)", *a1));
  EXPECT_TRUE(one4.at(*t.get(std::vector<Weight>{{2}})).is_zero());
  EXPECT_FALSE(one4.at(*t.get(std::vector<Weight>{{4}})).is_zero());
  EXPECT_TRUE(theta_dot(a1, Expr()).at(*s0).is_zero());
  EXPECT_THROW(theta_dot(a1, parse_expr("E1", *a1)), InvalidArgument);
}

TEST(Coherence, Examples) {
  auto a1 = RootDatum::preset("A1");
  Tower t(a1);
  auto chain = a1_chain(t, {0, 2, 4});
  EXPECT_TRUE(verify_coherence(hat_K(a1, {1}), chain).pass());
  EXPECT_TRUE(verify_coherence(hat_one(a1, {2}), chain).pass());
  EXPECT_THROW(verify_coherence(hat_K(a1, {1}), {chain[1], t.get(std::vector<Weight>{{1}})}), InvalidArgument);
}

TEST(Coherence, CorruptedEvaluatorIsCaught) {
  auto a1 = RootDatum::preset("A1");
  Tower t(a1);
  auto chain = a1_chain(t, {0, 2, 4});
  auto k = hat_K(a1, {1});
  auto bad = LimitElement::from_pi(
      a1,
      [k](const SchurAlgebra& s) {
        SchurElement x = k.at(s);
        if (s.pi().size() == 2) x.blocks.back()(0, 0) += RatFunc(1);
        return x;
      },
      "corrupted K");
  auto rep = verify_coherence(bad, chain);
  EXPECT_FALSE(rep.pass());
  ASSERT_EQ(rep.links.size(), 2u);
  EXPECT_TRUE(rep.links[0].pass);
  EXPECT_FALSE(rep.links[1].pass);
  EXPECT_FALSE(rep.links[1].witness.empty());
  EXPECT_THROW(bad.at_block(*chain[0]->modules()[0]), InvalidArgument);
}

TEST(EqUpTo, ReportsWitness) {
  auto a1 = RootDatum::preset("A1");
  Tower t(a1);
  auto s = t.get(std::vector<Weight>{{2}});
  EXPECT_TRUE(eq_up_to(hat_K(a1, {0}), limit_identity(a1), *s).equal);
  auto c = eq_up_to(hat_K(a1, {1}), limit_identity(a1), *s);
  EXPECT_FALSE(c.equal);
  EXPECT_FALSE(c.witness.empty());
}

TEST(LimitSuites, Examples) {
  auto a1 = RootDatum::preset("A1");
  Tower t(a1);
  auto s02 = t.get(std::vector<Weight>{{2}});
  auto ksum = weight_sum(
      a1, [](const Weight& w) { return RatFunc::v(w[0]); }, limit_identity(a1), "sum v^lambda 1_lambda");
  EXPECT_TRUE(eq_up_to(hat_K(a1, {1}), ksum, *s02).equal);
  auto s1 = t.get(std::vector<Weight>{{1}});
  auto e = hat_E(a1, Sign::Plus, 0);
  EXPECT_TRUE(eq_up_to(hat_K(a1, {1}) * e, RatFunc::v(2) * (e * hat_K(a1, {1})), *s1).equal);
  EXPECT_TRUE(check_prop_Kh(*s02).pass());
  EXPECT_TRUE(check_uhat_relations(*s02).pass());
  EXPECT_TRUE(check_u_relations(*s02).pass());
}

TEST(SeparationProbe, Examples) {
  auto a1 = RootDatum::preset("A1");
  Tower t(a1);
  auto p4 = separation_probe(parse_expr("1(4)", *a1), 6, t);
  ASSERT_TRUE(p4);
  EXPECT_EQ(p4->key(), "(0);(2);(4)");
  auto p1 = separation_probe(parse_expr("1(1)", *a1), 6, t);
  ASSERT_TRUE(p1);
  EXPECT_EQ(p1->key(), "(1)");
  EXPECT_FALSE(separation_probe(Expr(), 6, t));
  EXPECT_FALSE(separation_probe(parse_expr("1(8)", *a1), 6, t));
  auto sched = probe_schedule(a1, 3);
  ASSERT_EQ(sched.size(), 4u);
  EXPECT_EQ(sched[0].key(), "(0)");
  EXPECT_EQ(sched[3].key(), "(1);(3)");
}

TEST(CoherentBasis, Examples) {
  auto a1 = RootDatum::preset("A1");
  Tower t(a1);
  std::vector<Expr> fam;
  for (int a = 0; a <= 1; ++a) {
    for (int b = 0; b <= 1; ++b) {
      for (int lam = -1; lam <= 1; ++lam) {
        fam.push_back(Expr::word({Letter::e(Sign::Plus, 0, a), Letter::one({lam}), Letter::e(Sign::Minus, 0, b)}));
      }
    }
  }
  auto s1 = t.get(std::vector<Weight>{{1}});
  auto r = coherent_basis_check(fam, *s1);
  EXPECT_EQ(r.candidates, fam.size());
  EXPECT_EQ(r.rank, 4u);
  EXPECT_TRUE(r.spanning);

  auto z = coherent_basis_check({Expr()}, *s1);
  EXPECT_EQ(z.nonzero, 0u);
  EXPECT_TRUE(z.independent);
  EXPECT_FALSE(z.spanning);

  std::vector<Expr> fam2;
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      for (int lam = -2; lam <= 2; ++lam) {
        fam2.push_back(Expr::word({Letter::e(Sign::Plus, 0, a), Letter::one({lam}), Letter::e(Sign::Minus, 0, b)}));
      }
    }
  }
  auto s02 = t.get(std::vector<Weight>{{2}});
  auto r2 = coherent_basis_check(fam2, *s02);
  Echelon<RatFunc> ech(s02->basis().front().flatten().size());
  std::size_t nonzero = 0;
  for (const auto& e : fam2) {
    auto x = direct_value(e, *s02);
    if (x.is_zero()) continue;
    ++nonzero;
    ech.insert(x.flatten());
  }
  EXPECT_EQ(r2.dimension, 10u);
  EXPECT_EQ(r2.nonzero, nonzero);
  EXPECT_EQ(r2.rank, ech.rank());
  EXPECT_EQ(r2.independent, ech.rank() == nonzero);
  EXPECT_EQ(r2.spanning, ech.rank() == 10u);
}

TEST(Cofinal, Examples) {
  auto a1 = RootDatum::preset("A1");
  Tower t(a1);
  auto even = a1_chain(t, {0, 2, 4, 6});
  std::vector<SchurPtr> sums;
  std::vector<Weight> gens;
  for (int k = 1; k <= 3; ++k) {
    gens.push_back({k * (k + 1) / 2});
    sums.push_back(t.get(gens));
  }
  EXPECT_TRUE(cofinal_consistency(hat_K(a1, {1}), even, sums).pass());
  EXPECT_TRUE(cofinal_consistency(limit_zero(a1), even, sums).pass());
  EXPECT_TRUE(cofinal_consistency(theta(a1, parse_expr("E1 F1", *a1)), even, a1_chain(t, {1, 3, 5})).pass());
}

class LimitCorpus : public ::testing::TestWithParam<const char*> {};

TEST_P(LimitCorpus, SuitesHoldAtEveryTruncation) {
  auto d = RootDatum::preset(GetParam());
  Tower t(d);
  for (const auto& pi : all_saturated_sets(d, corpus_height(GetParam()))) {
    auto s = t.get(pi);
    for (const auto& rep : {check_prop_Kh(*s), check_uhat_relations(*s), check_u_relations(*s)}) {
      for (const auto& row : rep.rows) EXPECT_TRUE(row.pass) << pi.key() << " " << row.name << ": " << row.witness;
    }
  }
}

TEST_P(LimitCorpus, RelationCAgainstWeightSum) {
  auto d = RootDatum::preset(GetParam());
  Tower t(d);
  for (std::size_t i = 0; i < d->rank(); ++i) {
    auto lhs = hat_E(d, Sign::Plus, i) * hat_E(d, Sign::Minus, i) - hat_E(d, Sign::Minus, i) * hat_E(d, Sign::Plus, i);
    auto rhs = weight_sum(
        d, [&](const Weight& w) { return RatFunc(qint(d->pair_simple(i, w), d->d(i))); }, limit_identity(d),
        "sum [<h_i, lambda>]_i 1_lambda");
    for (const auto& pi : all_saturated_sets(d, 3)) {
      auto c = eq_up_to(lhs, rhs, *t.get(pi));
      EXPECT_TRUE(c.equal) << pi.key() << " " << c.witness;
    }
  }
}

TEST_P(LimitCorpus, ThetaIsMultiplicativeAndMatchesModuleProducts) {
  auto d = RootDatum::preset(GetParam());
  Tower t(d);
  std::mt19937 rng(17);
  auto sets = all_saturated_sets(d, corpus_height(GetParam()));
  for (int trial = 0; trial < 12; ++trial) {
    Expr u = random_u(rng, *d, false), w = random_u(rng, *d, false);
    auto prod = theta(d, u * w);
    auto mul = limit_mul(theta(d, u), theta(d, w));
    for (std::size_t k = 0; k < sets.size(); k += 1 + sets.size() / 16) {
      auto s = t.get(sets[k]);
      EXPECT_EQ(prod.at(*s), mul.at(*s)) << u.str() << " | " << w.str() << " at " << sets[k].key();
      EXPECT_EQ(prod.at(*s), direct_value(u * w, *s));
    }
  }
}

TEST_P(LimitCorpus, ThetaDotIsMultiplicative) {
  auto d = RootDatum::preset(GetParam());
  Tower t(d);
  std::mt19937 rng(23);
  auto sets = all_saturated_sets(d, corpus_height(GetParam()));
  for (int trial = 0; trial < 12; ++trial) {
    Expr u = random_u(rng, *d, true), w = random_u(rng, *d, true);
    auto prod = theta_dot(d, u * w);
    auto mul = limit_mul(theta_dot(d, u), theta_dot(d, w));
    for (std::size_t k = 0; k < sets.size(); k += 1 + sets.size() / 16) {
      auto s = t.get(sets[k]);
      EXPECT_EQ(prod.at(*s), mul.at(*s)) << u.str() << " | " << w.str() << " at " << sets[k].key();
      EXPECT_EQ(prod.at(*s), direct_value(u * w, *s));
    }
  }
}

TEST_P(LimitCorpus, MemoIsTransparentAndFamiliesCohere) {
  auto d = RootDatum::preset(GetParam());
  Tower t(d);
  std::vector<SchurPtr> chain;
  std::vector<Weight> gens;
  for (const auto& mu : d->dominant_weights_up_to(corpus_height(GetParam()))) {
    gens.push_back(mu);
    chain.push_back(t.get(gens));
  }
  std::vector<LimitElement> family = {hat_E(d, Sign::Plus, 0, 2), hat_one(d, d->zero_weight()),
                                      hat_K(d, d->coroot(0)),
                                      theta(d, parse_expr("E1 F1 K(" + std::string(d->rank_y() == 1 ? "1" : "1,0") + ")", *d))};
  for (const auto& a : family) {
    EXPECT_TRUE(verify_coherence(a, chain).pass()) << a.label();
    for (const auto& s : chain) {
      auto warm = a.at(*s);
      EXPECT_EQ(a.at(*s, false), warm);
      EXPECT_EQ(a.at(*s, true), warm);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Presets, LimitCorpus, ::testing::Values("A1", "A1xA1", "A2", "B2"));
