#include <gtest/gtest.h>

#include "qhat/errors.hpp"
#include "qhat/lattice.hpp"
#include "qhat/qnumbers.hpp"
#include "qhat/specialize.hpp"
#include "a1_rank_oracle.hpp"

using namespace qhat;
using namespace qhat::testing;

namespace {

bool integral(const RMatrix& m) {
  for (const auto& x : m.data()) {
    if (!x.is_laurent()) return false;
  }
  return true;
}

SpecializedPtr spec(const std::string& preset, std::vector<Weight> gens, const RingPoint& p) {
  return SpecializedSchur::build(saturate(RootDatum::preset(preset), gens), p);
}

const char* kSemisimple[] = {"A1", "A1xA1", "A2", "B2"};

}  // namespace

TEST(Oracle, GaussBinomialsAtOneAreBinomials) {
  for (unsigned a = 0; a <= 10; ++a) {
    for (unsigned t = 0; t <= a; ++t) {
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), a, t);
      auto g = binom_at(static_cast<int>(a), static_cast<int>(t), kOne, kOne);
      EXPECT_EQ(g.re, mpq_class(c));
      EXPECT_EQ(g.im, 0);
    }
  }
  EXPECT_TRUE(binom_at(2, 1, kI, kMinusI).zero());
  EXPECT_FALSE(binom_at(4, 2, kI, kMinusI).zero());
}

TEST(Lattice, A1Examples) {
  auto a1 = RootDatum::preset("A1");
  auto l2 = LatticeBasis::build(WeylModule::build(a1, {2}));
  ASSERT_EQ(l2->dim(), 3u);
  EXPECT_EQ(l2->words()[0], DWord{});
  EXPECT_EQ(l2->words()[1], (DWord{{0, 1}}));
  EXPECT_EQ(l2->words()[2], (DWord{{0, 2}}));
  const auto& e = l2->divided_power(Sign::Plus, 0, 1);
  EXPECT_EQ(e(0, 1), RatFunc(qint(2, 1)));
  EXPECT_EQ(e(1, 2), RatFunc(1));
  EXPECT_TRUE(integral(e));
  EXPECT_FALSE(l2->determinant_is_unit());
  EXPECT_EQ(l2->determinant(), RatFunc(1) / RatFunc(qint(2, 1)));
  EXPECT_EQ(l2->max_power(Sign::Minus, 0), 2);

  auto l1 = LatticeBasis::build(WeylModule::build(a1, {1}));
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    for (const auto& x : l1->divided_power(s, 0, 1).data()) EXPECT_TRUE(x.is_zero() || x.is_one());
  }
  EXPECT_TRUE(l1->determinant_is_unit());
}

TEST(Lattice, A2FundamentalIsIntegral) {
  auto a2 = RootDatum::preset("A2");
  auto l = LatticeBasis::build(WeylModule::build(a2, {1, 0}));
  EXPECT_EQ(l->dim(), 3u);
  for (std::size_t i = 0; i < 2; ++i) {
    for (Sign s : {Sign::Plus, Sign::Minus}) EXPECT_TRUE(integral(l->divided_power(s, i, 1)));
  }
}

class LatticeCorpus : public ::testing::TestWithParam<const char*> {};

TEST_P(LatticeCorpus, IntegralAndConsistentWithModule) {
  auto d = RootDatum::preset(GetParam());
  for (const auto& lam : d->dominant_weights_up_to(4)) {
    auto m = WeylModule::build(d, lam);
    auto l = LatticeBasis::build(m);
    ASSERT_EQ(l->dim(), m->dim());
    const RMatrix& t = l->transition();
    auto tinv = inverse(t);
    ASSERT_TRUE(tinv.has_value());
    EXPECT_EQ(determinant(t), l->determinant());
    // Column k of the transition is the divided-power monomial applied to m.
    RMatrix hw(m->dim(), 1);
    hw(0, 0) = 1;
    for (std::size_t k = 0; k < l->dim(); ++k) {
      RMatrix v = hw;
      const auto& w = l->words()[k];
      for (auto it = w.rbegin(); it != w.rend(); ++it) v = m->divided_power(Sign::Minus, it->first, it->second) * v;
      for (std::size_t r = 0; r < m->dim(); ++r) EXPECT_EQ(v(r, 0), t(r, k)) << weight_str(lam) << dword_str(w);
    }
    for (std::size_t i = 0; i < d->rank(); ++i) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        for (int k = 1; k <= l->max_power(s, i) + 1; ++k) {
          const RMatrix& x = l->divided_power(s, i, k);
          EXPECT_TRUE(integral(x)) << weight_str(lam) << " i=" << i << " k=" << k;
          EXPECT_EQ(x, *tinv * m->divided_power(s, i, k) * t);
        }
        EXPECT_TRUE(l->divided_power(s, i, l->max_power(s, i) + 1).is_zero());
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Presets, LatticeCorpus, ::testing::Values("A1", "A1xA1", "A2", "B2"));

TEST(Specialize, A1Examples) {
  auto one = RingPoint::rational(1);
  EXPECT_EQ(spec("A1", {{2}}, one)->dimension(), 10u);
  EXPECT_EQ(spec("A1", {{1}}, one)->dimension(), 4u);
  auto s = spec("A1", {{1}, {2}}, one);
  EXPECT_EQ(s->dimension(), 14u);
  EXPECT_EQ(s->generic_dimension(), 14u);
  EXPECT_EQ(s->k_element({1}), s->identity());

  auto i4 = RingPoint::cyclotomic(4);
  auto si = spec("A1", {{1}, {2}}, i4);
  const RingMatrix e = si->divided_power(Sign::Plus, 0, 1).blocks[2];
  EXPECT_TRUE(e(0, 1).is_zero());
  EXPECT_TRUE(e(1, 2).is_one());
  EXPECT_TRUE(evaluate(qint(2, 1), i4).is_zero());
  EXPECT_LE(si->dimension(), 14u);
}

TEST(Specialize, A1DimensionsMatchIndependentRankOracle) {
  const std::vector<std::vector<int>> pis = {{0}, {1}, {0, 2}, {1, 3}, {0, 1, 2}, {0, 2, 4}, {0, 1, 2, 3}};
  auto a1 = RootDatum::preset("A1");
  for (const auto& pi : pis) {
    std::vector<Weight> gens;
    for (int n : pi) gens.push_back({n});
    auto sat = saturate(a1, gens);
    ASSERT_EQ(sat.size(), pi.size());
    const std::size_t r1 = a1_specialized_rank(pi, kOne, kOne);
    const std::size_t ri = a1_specialized_rank(pi, kI, kMinusI);
    EXPECT_EQ(SpecializedSchur::build(sat, RingPoint::rational(1))->dimension(), r1) << sat.key();
    EXPECT_EQ(SpecializedSchur::build(sat, RingPoint::cyclotomic(4))->dimension(), ri) << sat.key();
    EXPECT_LE(ri, r1);
  }
  EXPECT_EQ(a1_specialized_rank({0, 1, 2}, kOne, kOne), 14u);
}

TEST(Specialize, RelationsHoldOverEveryRing) {
  const std::vector<RingPoint> points = {RingPoint::rational(1), RingPoint::rational(mpq_class(2, 3)),
                                         RingPoint::cyclotomic(3), RingPoint::cyclotomic(4)};
  for (auto name : kSemisimple) {
    auto d = RootDatum::preset(name);
    for (const auto& p : points) {
      LatticeCache lat(d);
      for (const auto& pi : all_saturated_sets(d, name == std::string("A1xA1") ? 2 : 3)) {
        auto s = SpecializedSchur::build(pi, p, lat);
        EXPECT_LE(s->dimension(), s->generic_dimension());
        for (const auto& row : s->verify_relations().rows) {
          EXPECT_TRUE(row.pass) << name << " " << p.describe() << " " << pi.key() << " " << row.name << ": "
                                << row.witness;
        }
      }
    }
  }
}

TEST(Specialize, GenericPointsKeepTheGenericDimension) {
  for (auto name : kSemisimple) {
    auto d = RootDatum::preset(name);
    for (const auto& pi : all_saturated_sets(d, name == std::string("A1xA1") ? 2 : 4)) {
      auto s = SpecializedSchur::build(pi, RingPoint::rational(1));
      EXPECT_EQ(s->dimension(), s->generic_dimension()) << name << " " << pi.key();
    }
  }
  auto a2 = RootDatum::preset("A2");
  EXPECT_EQ(SpecializedSchur::build(saturate(a2, {{1, 1}}), RingPoint::rational(1))->dimension(), 65u);
}

TEST(Specialize, CommutesWithTruncation) {
  for (auto name : kSemisimple) {
    auto d = RootDatum::preset(name);
    for (const auto& p : {RingPoint::rational(1), RingPoint::cyclotomic(4)}) {
      LatticeCache lat(d);
      auto sets = all_saturated_sets(d, name == std::string("A1xA1") ? 2 : 3);
      for (const auto& a : sets) {
        for (const auto& b : sets) {
          if (b.size() != a.size() + 1 || !a.is_subset_of(b)) continue;
          auto big = SchurAlgebra::build(b, lat.modules()), small = SchurAlgebra::build(a, lat.modules());
          auto rbig = SpecializedSchur::build(b, p, lat), rsmall = SpecializedSchur::build(a, p, lat);
          auto rep = verify_specialize_commutes(big, small, rbig, rsmall);
          EXPECT_TRUE(rep.pass()) << name << " " << a.key() << " < " << b.key();
          EXPECT_TRUE(RTruncationMap(rbig, rsmall).verify().pass());
        }
      }
    }
  }
}

TEST(RTruncation, Examples) {
  auto a1 = RootDatum::preset("A1");
  auto one = RingPoint::rational(1);
  LatticeCache lat(a1);
  auto s0 = SpecializedSchur::build(saturate(a1, {{0}}), one, lat);
  auto s02 = SpecializedSchur::build(saturate(a1, {{2}}), one, lat);
  auto s024 = SpecializedSchur::build(saturate(a1, {{4}}), one, lat);
  RTruncationMap f(s02, s0);
  EXPECT_TRUE(f.apply(s02->divided_power(Sign::Plus, 0, 1)).is_zero());
  EXPECT_EQ(f.apply(s02->identity()), s0->identity());
  EXPECT_TRUE(f.verify().pass());
  EXPECT_TRUE(verify_r_chain(s0, s02, s024).pass());
  EXPECT_THROW(RTruncationMap(s0, s02), InvalidArgument);

  auto u = r_theta_dot(a1, parse_expr("1(0)", *a1), one);
  EXPECT_TRUE(verify_r_coherence(u, {s0, s02, s024}).pass());
  auto z = r_theta_dot(a1, Expr(), RingPoint::cyclotomic(4));
  auto si = SpecializedSchur::build(saturate(a1, {{2}}), RingPoint::cyclotomic(4));
  EXPECT_TRUE(z.at(*si).is_zero());
  EXPECT_THROW(r_theta_dot(a1, parse_expr("E1", *a1), one), InvalidArgument);
}

TEST(RLimit, DividedPowerFamiliesCohereAtRootsOfUnity) {
  auto a1 = RootDatum::preset("A1");
  for (const auto& p : {RingPoint::rational(1), RingPoint::cyclotomic(4), RingPoint::cyclotomic(6)}) {
    LatticeCache lat(a1);
    std::vector<SpecializedPtr> chain;
    for (int k : {0, 2, 4, 6}) chain.push_back(SpecializedSchur::build(saturate(a1, {{k}}), p, lat));
    for (const char* text : {"E1^(2) 1(-2)", "F1^(3) 1(2)", "E1 F1^(2) 1(2)", "F1^(2) E1^(2) 1(0) + 1(2)"}) {
      auto u = r_theta_dot(a1, parse_expr(text, *a1), p);
      EXPECT_TRUE(verify_r_coherence(u, chain).pass()) << text << " " << p.describe();
    }
  }
}

TEST(KernelProbe, Examples) {
  auto a1 = RootDatum::preset("A1");
  auto r1 = kernel_probe_RU(a1, 2, 4, RingPoint::rational(1));
  ASSERT_FALSE(r1.kernel_dims.empty());
  EXPECT_EQ(r1.kernel_dims.back(), 0u);
  EXPECT_EQ(r1.pis.size(), r1.kernel_dims.size());
  auto r0 = kernel_probe_RU(a1, 0, 4, RingPoint::rational(1));
  EXPECT_EQ(r0.words.size(), 1u);
  for (auto k : r0.kernel_dims) EXPECT_EQ(k, 0u);

  auto ri = kernel_probe_RU(a1, 2, 4, RingPoint::cyclotomic(4));
  auto again = kernel_probe_RU(a1, 2, 4, RingPoint::cyclotomic(4));
  EXPECT_EQ(ri.kernel_dims, again.kernel_dims);
  EXPECT_EQ(ri.words, again.words);
}

TEST(KernelProbe, KernelDimsAreNonincreasing) {
  for (auto name : {"A1", "A2"}) {
    auto d = RootDatum::preset(name);
    for (const auto& p : {RingPoint::rational(1), RingPoint::cyclotomic(3), RingPoint::cyclotomic(4)}) {
      for (bool k : {false, true}) {
        auto r = kernel_probe_RU(d, 2, 4, p, k);
        ASSERT_EQ(r.kernel_dims.size(), r.pis.size());
        for (std::size_t j = 1; j < r.kernel_dims.size(); ++j) EXPECT_LE(r.kernel_dims[j], r.kernel_dims[j - 1]);
        if (!r.kernel_dims.empty()) EXPECT_LE(r.kernel_dims.front(), r.words.size());
      }
    }
  }
}

TEST(ProbeWords, Shape) {
  auto a1 = RootDatum::preset("A1");
  EXPECT_EQ(probe_words(*a1, 0, false).size(), 1u);
  auto w1 = probe_words(*a1, 1, false);
  EXPECT_EQ(w1.size(), 3u);
  auto wk = probe_words(*a1, 1, true);
  EXPECT_GT(wk.size(), w1.size());
  for (const auto& e : probe_words(*a1, 2, true)) EXPECT_TRUE(e.is_u());
}
