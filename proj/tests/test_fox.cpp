#include <gtest/gtest.h>

#include "generators.hpp"
#include "parcoh/errors.hpp"
#include "parcoh/fox.hpp"
#include "parcoh/moduli.hpp"

using namespace parcoh;
using namespace parcoh::testing;

TEST(Fox, RelatorExamples) {
  EXPECT_EQ(relator({0, 3}).str(), "z1 z2 z3");
  EXPECT_EQ(relator({1, 1}).str(), "x1 y1 x1^-1 y1^-1 z1");
  EXPECT_EQ(relator({2, 0}).str(), "x1 y1 x1^-1 y1^-1 x2 y2 x2^-1 y2^-1");
}

TEST(Fox, GroupoidRelatorExamples) {
  EXPECT_EQ(groupoid_relator({0, 3}).str(), "gamma1 a1 gamma1^-1 gamma2 a2 gamma2^-1 gamma3 a3 gamma3^-1");
  EXPECT_EQ(groupoid_relator({1, 1}).str(), "x1 y1 x1^-1 y1^-1 gamma1 a1 gamma1^-1");
  EXPECT_THROW(groupoid_relator({2, 0}), ConfigError);
  for (SurfaceData s : {SurfaceData{0, 3}, SurfaceData{1, 2}, SurfaceData{2, 1}})
    EXPECT_EQ(z_to_groupoid(relator(s)), groupoid_relator(s));
}

TEST(Fox, SurfaceValidation) {
  EXPECT_THROW((SurfaceData{0, 2}.validate()), ConfigError);
  EXPECT_THROW((SurfaceData{0, 0}.validate()), ConfigError);
  EXPECT_THROW((SurfaceData{-1, 3}.validate()), ConfigError);
  EXPECT_NO_THROW((SurfaceData{1, 0}.validate()));
  EXPECT_NO_THROW((SurfaceData{0, 3}.validate()));
}

TEST(Fox, ParsePrintRoundTrip) {
  const Word w = Word::parse("x1 y1 x1^-1 y1^-1 z1");
  EXPECT_EQ(w, relator({1, 1}));
  EXPECT_EQ(Word::parse(w.str()), w);
  EXPECT_EQ(Word::parse("x1 x1^-1").str(), "1");
  EXPECT_EQ(Word::parse("x1^2 x1^-1"), Word::of(gx(1)));
  EXPECT_THROW(Word::parse("q1"), ConfigError);
}

TEST(Fox, DerivativeExamples) {
  EXPECT_EQ(fox_derivative(Word::of(gz(1)), gz(1)), GroupRingElement::one());
  const SurfaceData s{1, 1};
  const Word r = relator(s);
  GroupRingElement expected = GroupRingElement::one();
  expected.add(Word::parse("x1 y1 x1^-1"), -1.0);
  EXPECT_EQ(fox_derivative(r, gx(1)), expected);

  const SurfaceData s3{2, 3};
  Word prefix = commutator_part(s3);
  for (int j = 1; j <= 3; ++j) {
    EXPECT_EQ(fox_derivative(relator(s3), gz(j)), GroupRingElement::of(prefix));
    prefix *= Word::of(gz(j));
  }
  EXPECT_TRUE(fox_derivative(r, gz(2)).is_zero());
  EXPECT_EQ(fox_derivative(Word::of(gx(1), -1), gx(1)), GroupRingElement::of(Word::of(gx(1), -1), -1.0));
}

TEST(FoxProperty, FundamentalIdentity) {
  for (SurfaceData s : {SurfaceData{1, 1}, SurfaceData{2, 2}, SurfaceData{0, 3}}) {
    for (auto seed : seeds(50)) {
      std::mt19937_64 rng(seed);
      EXPECT_TRUE(fox_identity_holds(random_word(group_alphabet(s), 12, rng), group_alphabet(s)));
      EXPECT_TRUE(fox_identity_holds(random_word(groupoid_alphabet(s), 12, rng), groupoid_alphabet(s)));
    }
  }
}

TEST(FoxProperty, ProductRule) {
  const auto alpha = group_alphabet({2, 1});
  for (auto seed : seeds(30)) {
    std::mt19937_64 rng(seed);
    const Word u = random_word(alpha, 8, rng), v = random_word(alpha, 8, rng);
    for (Gen g : alpha) {
      const GroupRingElement lhs = fox_derivative(u * v, g);
      const GroupRingElement rhs = fox_derivative(u, g) + fox_derivative(v, g).left_mul(u);
      EXPECT_EQ(lhs, rhs) << u.str() << " | " << v.str();
      if (!(u * v).contains(g)) EXPECT_TRUE(lhs.is_zero());
    }
  }
}

TEST(FoxProperty, ReductionIdempotent) {
  const auto alpha = groupoid_alphabet({1, 2});
  for (auto seed : seeds(30)) {
    std::mt19937_64 rng(seed);
    const Word w = random_word(alpha, 12, rng);
    EXPECT_EQ(Word::parse(w.str()), w);
    EXPECT_EQ(w * Word(), w);
    EXPECT_TRUE((w * w.inverse()).empty());
  }
}

TEST(Fox, EvalRingExamples) {
  const SurfaceData s{1, 1};
  std::mt19937_64 rng(8);
  const Backend su2 = Backend::su2();
  RepresentationPoint phi = constructed_solution(su2, s, rng);
  const Assignment as = phi.assignment();
  EXPECT_LT((eval_ring(GroupRingElement::one(), as) - RMat::Identity(3, 3)).norm(), 1e-15);

  GroupRingElement e = GroupRingElement::one();
  e.add(Word::parse("x1 y1 x1^-1"), -1.0);
  const RMat expected = RMat::Identity(3, 3) - su2.Ad(phi.x[0]) * su2.Ad(phi.y[0]) * su2.Ad(su2.inverse(phi.x[0]));
  EXPECT_LT((eval_ring(e, as) - expected).norm(), 1e-12);

  RepresentationPoint ab = constructed_solution(Backend::u1k(2), s, rng);
  GroupRingElement f = GroupRingElement::one();
  f.add(Word::of(gz(1)), -1.0);
  EXPECT_EQ(eval_ring(f, ab.assignment()).norm(), 0.0);
}

TEST(Fox, WordEvalExamples) {
  const SurfaceData s{2, 2};
  std::mt19937_64 rng(4);
  const RepresentationPoint phi = constructed_solution(Backend::su2(), s, rng);
  const Assignment as = phi.assignment();
  EXPECT_LT((word_eval(Word(), as) - Mat::Identity(2, 2)).norm(), 0.0 + 1e-300);
  EXPECT_LT((word_eval(Word::of(gz(2)), as) - phi.z[1]).norm(), 1e-300);
  EXPECT_LT((word_eval(relator(s), as) - Mat::Identity(2, 2)).norm(), 1e-9);
  EXPECT_THROW(word_eval(Word::of(ga(1)), as), UnboundGenerator);
}

TEST(FoxProperty, EvalRingIsMultiplicative) {
  const SurfaceData s{1, 2};
  for (auto seed : seeds(20)) {
    std::mt19937_64 rng(seed);
    const RepresentationPoint phi = constructed_solution(Backend::sl2r(), s, rng, 0.5);
    const Assignment as = phi.assignment();
    const Word u = random_word(group_alphabet(s), 6, rng), v = random_word(group_alphabet(s), 6, rng);
    const RMat lhs = eval_ring(GroupRingElement::of(u) * GroupRingElement::of(v), as);
    const RMat rhs = eval_ring(GroupRingElement::of(u), as) * eval_ring(GroupRingElement::of(v), as);
    EXPECT_LT((lhs - rhs).norm(), 1e-8 * (1.0 + rhs.norm()));
  }
}

TEST(Fox, GroupoidPathsComposable) {
  const SurfaceData s{1, 2};
  for (auto seed : seeds(20)) {
    std::mt19937_64 rng(seed);
    const Word w = random_groupoid_path(s, 12, rng);
    EXPECT_LE(w.length(), 12);
    EXPECT_TRUE(fox_identity_holds(w, groupoid_alphabet(s)));
  }
}
