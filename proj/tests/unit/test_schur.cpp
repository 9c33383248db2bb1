#include <gtest/gtest.h>

#include "qhat/errors.hpp"
#include "qhat/oracles.hpp"
#include "qhat/qnumbers.hpp"
#include "qhat/schur.hpp"

using namespace qhat;

namespace {

SchurPtr algebra(const std::string& preset, std::vector<Weight> gens) {
  return SchurAlgebra::build(saturate(RootDatum::preset(preset), gens));
}

RMatrix diag(std::vector<RatFunc> xs) {
  RMatrix m(xs.size(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) m(i, i) = xs[i];
  return m;
}

std::size_t oracle_dimension(const SaturatedSet& pi) {
  mpz_class s = 0;
  for (const auto& lam : pi.elements()) {
    mpz_class d = weyl_dim_oracle(*pi.datum(), lam);
    s += d * d;
  }
  return s.get_ui();
}

}  // namespace

TEST(SchurBuild, DimensionExamples) {
  EXPECT_EQ(algebra("A1", {{0}})->dimension(), 1u);
  EXPECT_EQ(algebra("A1", {{1}})->dimension(), 4u);
  EXPECT_EQ(algebra("A1", {{2}})->dimension(), 10u);
  EXPECT_EQ(algebra("A1", {{1}, {2}})->dimension(), 14u);
  auto a2 = algebra("A2", {{1, 0}});
  EXPECT_EQ(a2->dimension(), 9u);
  EXPECT_EQ(a2->weights().size(), 3u);
  EXPECT_EQ(algebra("A2", {{1, 1}})->dimension(), 65u);
}

TEST(SchurBuild, BlockOrderFollowsPi) {
  auto s = algebra("A1", {{1}, {2}});
  ASSERT_EQ(s->shapes().size(), 3u);
  EXPECT_EQ(s->shapes()[0].lambda, Weight{0});
  EXPECT_EQ(s->shapes()[1].lambda, Weight{1});
  EXPECT_EQ(s->shapes()[2].lambda, Weight{2});
}

TEST(Presentation, A1Examples) {
  auto s1 = algebra("A1", {{1}});
  auto e = s1->generator(Sign::Plus, 0), f = s1->generator(Sign::Minus, 0);
  SchurElement c = e * f - f * e;
  EXPECT_EQ(c.blocks[0], diag({1, -1}));
  EXPECT_EQ(c, s1->one({1}) - s1->one({-1}));

  auto s02 = algebra("A1", {{2}});
  EXPECT_TRUE((s02->generator(Sign::Plus, 0) * s02->one({2})).is_zero());
  EXPECT_TRUE(s02->one({4}).is_zero());
  EXPECT_TRUE(s02->one({1}).is_zero());
}

TEST(Presentation, A2SerreExample) {
  auto s = algebra("A2", {{1, 0}});
  SchurElement serre = s->divided_power(Sign::Plus, 0, 2) * s->generator(Sign::Plus, 1) -
                       s->generator(Sign::Plus, 0) * s->generator(Sign::Plus, 1) * s->generator(Sign::Plus, 0) +
                       s->generator(Sign::Plus, 1) * s->divided_power(Sign::Plus, 0, 2);
  EXPECT_TRUE(serre.is_zero());
  EXPECT_EQ(s->shapes()[0].dim, 3u);
}

TEST(KElement, Examples) {
  auto s1 = algebra("A1", {{1}});
  EXPECT_EQ(s1->k_element({1}).blocks[0], diag({RatFunc::v(1), RatFunc::v(-1)}));
  EXPECT_EQ(s1->k_element({0}), s1->identity());
  auto s02 = algebra("A1", {{2}});
  auto k = s02->k_element({1});
  EXPECT_EQ(k.blocks[0], diag({1}));
  EXPECT_EQ(k.blocks[1], diag({RatFunc::v(2), 1, RatFunc::v(-2)}));
}

TEST(Evaluate, Examples) {
  auto a1 = RootDatum::preset("A1");
  auto s0 = algebra("A1", {{0}});
  EXPECT_TRUE(s0->evaluate(parse_expr("E1", *a1)).is_zero());
  auto s = algebra("A1", {{1}, {2}});
  EXPECT_EQ(s->evaluate(parse_expr("K(1) K(-1)", *a1)), s->identity());
  Expr c = parse_expr("E1 F1 - F1 E1", *a1);
  c -= (RatFunc(1) / (RatFunc::v(1) - RatFunc::v(-1))) * (Expr(Letter::k({1})) - Expr(Letter::k({-1})));
  EXPECT_TRUE(s->evaluate(c).is_zero());
  EXPECT_THROW(s->from_blocks({RMatrix(1, 1)}), InvalidArgument);
}

TEST(Truncation, Examples) {
  auto small = algebra("A1", {{0}});
  auto big = algebra("A1", {{2}});
  TruncationMap f(big, small);
  EXPECT_TRUE(f.apply(big->generator(Sign::Plus, 0)).is_zero());
  EXPECT_EQ(f.apply(big->one({0})), small->identity());
  EXPECT_TRUE(f.apply(big->one({2})).is_zero());
  EXPECT_TRUE(f.verify().pass());
  EXPECT_THROW(TruncationMap(small, big), InvalidArgument);
  EXPECT_THROW(TruncationMap(algebra("A1", {{1}}), small), InvalidArgument);

  auto top = algebra("A1", {{4}});
  auto rep = verify_chain(small, big, top);
  EXPECT_TRUE(rep.pass());
  TruncationMap same(big, big);
  for (const auto& x : big->basis()) EXPECT_EQ(same.apply(x), x);
}

TEST(ReportRows, FailureFoldsIntoFirstWitness) {
  Report r;
  r.record("x", true);
  r.record("x", false, "first");
  r.record("x", false, "second");
  r.record("y", true);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(r.rows[0].witness, "first");
  EXPECT_TRUE(r.rows[1].pass);
}

class SchurCorpus : public ::testing::TestWithParam<const char*> {
 protected:
  // A1xA1 has thousands of saturated sets above height 3.
  static int height(const std::string& name) { return name == "A1xA1" ? 3 : 4; }
};

TEST_P(SchurCorpus, DimensionMatchesOracleAndIsDense) {
  auto d = RootDatum::preset(GetParam());
  ModuleCache cache(d);
  for (const auto& pi : all_saturated_sets(d, height(GetParam()))) {
    auto s = SchurAlgebra::build(pi, cache);
    EXPECT_EQ(s->dimension(), oracle_dimension(pi)) << pi.key();
    EXPECT_EQ(s->expected_dimension(), oracle_dimension(pi));
    // Density: the basis restricted to each block spans all of End(Delta(lambda)).
    for (std::size_t b = 0; b < s->shapes().size(); ++b) {
      const std::size_t n = s->shapes()[b].dim;
      Echelon<RatFunc> e(n * n);
      for (const auto& x : s->basis()) e.insert(x.blocks[b].data());
      EXPECT_EQ(e.rank(), n * n) << pi.key() << " block " << b;
    }
  }
}

TEST_P(SchurCorpus, IdempotentsKAndPresentation) {
  auto d = RootDatum::preset(GetParam());
  ModuleCache cache(d);
  for (const auto& pi : all_saturated_sets(d, height(GetParam()))) {
    auto s = SchurAlgebra::build(pi, cache);
    SchurElement sum = s->zero();
    for (const auto& a : s->weights()) {
      sum += s->one(a);
      for (const auto& b : s->weights()) {
        EXPECT_EQ(s->one(a) * s->one(b), a == b ? s->one(a) : s->zero());
      }
    }
    EXPECT_EQ(sum, s->identity()) << pi.key();
    for (const auto& mod : s->modules()) {
      for (const auto& [w, mult] : mod->multiplicities()) EXPECT_TRUE(pi.weyl_closure().count(w));
    }
    for (std::size_t k = 0; k < d->rank_y(); ++k) {
      Coweight h(d->rank_y(), 0), mh(d->rank_y(), 0);
      h[k] = 1;
      mh[k] = -1;
      EXPECT_EQ(s->k_element(h) * s->k_element(mh), s->identity());
      Coweight h2(d->rank_y(), 0);
      h2[k] = 2;
      EXPECT_EQ(s->k_element(h) * s->k_element(h), s->k_element(h2));
      for (std::size_t b = 0; b < s->modules().size(); ++b) {
        EXPECT_EQ(s->k_element(h).blocks[b], s->modules()[b]->k_matrix(h));
      }
      for (std::size_t i = 0; i < d->rank(); ++i) {
        const int p = d->pair(h, d->alpha(i));
        EXPECT_EQ(s->k_element(h) * s->generator(Sign::Plus, i) * s->k_element(mh),
                  RatFunc::v(p) * s->generator(Sign::Plus, i));
        EXPECT_EQ(s->k_element(h) * s->generator(Sign::Minus, i) * s->k_element(mh),
                  RatFunc::v(-p) * s->generator(Sign::Minus, i));
      }
    }
    auto rep = s->verify_presentation();
    for (const auto& row : rep.rows) EXPECT_TRUE(row.pass) << pi.key() << " " << row.name << ": " << row.witness;
  }
}

TEST_P(SchurCorpus, RelationCFromDirectSum) {
  auto d = RootDatum::preset(GetParam());
  for (const auto& pi : all_saturated_sets(d, height(GetParam()))) {
    auto s = SchurAlgebra::build(pi);
    for (std::size_t i = 0; i < d->rank(); ++i) {
      for (std::size_t j = 0; j < d->rank(); ++j) {
        SchurElement lhs = s->generator(Sign::Plus, i) * s->generator(Sign::Minus, j) -
                           s->generator(Sign::Minus, j) * s->generator(Sign::Plus, i);
        SchurElement rhs = s->zero();
        if (i == j) {
          for (const auto& lam : s->weights()) {
            rhs += RatFunc(qint(d->pair_simple(i, lam), d->d(i))) * s->one(lam);
          }
        }
        EXPECT_EQ(lhs, rhs) << pi.key() << " i=" << i << " j=" << j;
      }
    }
  }
}

TEST_P(SchurCorpus, TruncationMapsOnCoveringPairs) {
  auto d = RootDatum::preset(GetParam());
  ModuleCache cache(d);
  auto sets = all_saturated_sets(d, height(GetParam()) - 1);
  int pairs = 0;
  for (const auto& a : sets) {
    for (const auto& b : sets) {
      if (b.size() != a.size() + 1 || !a.is_subset_of(b)) continue;
      auto sa = SchurAlgebra::build(a, cache), sb = SchurAlgebra::build(b, cache);
      auto rep = TruncationMap(sb, sa).verify();
      for (const auto& row : rep.rows) EXPECT_TRUE(row.pass) << a.key() << " < " << b.key() << " " << row.name;
      ++pairs;
    }
  }
  EXPECT_GT(pairs, 0);
}

TEST_P(SchurCorpus, SerializeRoundTrip) {
  auto d = RootDatum::preset(GetParam());
  for (const auto& pi : all_saturated_sets(d, 2)) {
    auto s = SchurAlgebra::build(pi);
    auto back = SchurAlgebra::deserialize(d, s->serialize());
    EXPECT_TRUE(*back == *s) << pi.key();
    EXPECT_EQ(back->serialize(), s->serialize());
  }
  EXPECT_THROW(SchurAlgebra::deserialize(d, "schur nope"), InvalidArgument);
}

INSTANTIATE_TEST_SUITE_P(Presets, SchurCorpus, ::testing::Values("A1", "A1xA1", "A2", "B2"));
