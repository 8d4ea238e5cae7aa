#include <gtest/gtest.h>

#include <fstream>

#include "generators.hpp"
#include "parcoh/bar.hpp"
#include "parcoh/fixtures.hpp"
#include "parcoh/moduli.hpp"
#include "parcoh/serialize.hpp"

using namespace parcoh;
using namespace parcoh::testing;

namespace {

GroupRingElement cell(const char* w, double c = 1.0) { return GroupRingElement::of(Word::parse(w), c); }

const std::vector<SurfaceData> kSurfaces = {{0, 3}, {1, 1}, {1, 2}, {2, 2}, {2, 1}, {0, 4}};

Cochain1 random_parabolic(const RepresentationPoint& phi, const ParabolicSpaces& sp, std::mt19937_64& rng) {
  Vec a(sp.z1.cols());
  std::normal_distribution<double> n01(0.0, 1.0);
  for (int i = 0; i < a.size(); ++i) a(i) = n01(rng);
  return solve_parabolic_data(Cochain1{sp.z1 * a, {}}, phi);
}

}  // namespace

TEST(Bar, BoundaryExamples) {
  BarChain2 inv;
  inv.add(Word::parse("x1"), Word::parse("x1^-1"), 1.0);
  EXPECT_EQ(bar_boundary(inv), cell("x1^-1") + cell("x1"));

  BarChain2 ab;
  ab.add(Word::parse("x1"), Word::parse("y1"), 1.0);
  EXPECT_EQ(bar_boundary(ab), cell("y1") - cell("x1 y1") + cell("x1"));

  BarChain2 degenerate;
  degenerate.add(Word(), Word::parse("x1"), 1.0);
  EXPECT_EQ(degenerate.size(), 0u);
}

TEST(Bar, GenusZeroChainAsPrinted) {
  BarChain2 expected;
  expected.add(Word::parse("z1 z2"), Word::parse("z3"), -1.0);
  expected.add(Word::parse("z1"), Word::parse("z2"), -1.0);
  EXPECT_EQ(build_c({0, 3}), expected);
}

TEST(Bar, BoundaryContracts) {
  for (const SurfaceData& s : kSurfaces) {
    const BarChain2 c = build_c(s);
    EXPECT_EQ(bar_boundary(c), expected_boundary_c(s)) << s.genus << "," << s.boundary;
    EXPECT_EQ(bar_boundary(build_c_alternative(s)), expected_boundary_c(s));
    EXPECT_FALSE(build_c_alternative(s) == c || s.boundary == 0);
    EXPECT_LE(static_cast<int>(c.size()), relator(s).length() + 2 * s.genus);
    EXPECT_EQ(bar_boundary(lift_c_tilde(c, s)), expected_boundary_c_tilde(s));
    // c on its own, viewed in the groupoid, is not a relative cycle.
    const BarChain2 naive = c.map_words([](const Word& w) { return z_to_groupoid(w); });
    EXPECT_FALSE(bar_boundary(naive) == expected_boundary_c_tilde(s));
  }
  GroupRingElement r = GroupRingElement::of(relator({1, 1}));
  r.add(Word::of(gz(1)), -1.0);
  EXPECT_EQ(expected_boundary_c({1, 1}), r);
}

TEST(Bar, GoldenChains) {
  for (const char* name : {"c_l0n3", "c_l1n1", "c_tilde_l1n1"}) {
    std::ifstream in(std::string(PARCOH_GOLDEN_DIR) + "/" + name + ".json");
    ASSERT_TRUE(in) << name;
    const json golden = json::parse(in);
    const std::string n(name);
    const SurfaceData s = n.find("l0n3") != std::string::npos ? SurfaceData{0, 3} : SurfaceData{1, 1};
    const BarChain2 c = n.rfind("c_tilde", 0) == 0 ? lift_c_tilde(build_c(s), s) : build_c(s);
    EXPECT_EQ(chain_to_json(c), golden) << name;
    EXPECT_EQ(chain_from_json(golden), c) << name;
  }
}

TEST(Bar, CupOfZeroVanishes) {
  const Fixture f = fixture("su2-commutator-l1n1");
  std::map<Gen, Vec> zero, some;
  std::mt19937_64 rng(1);
  for (Gen g : absolute_slots(f.phi.surface)) {
    zero[g] = Vec::Zero(3);
    some[g] = f.phi.backend.random_algebra(rng);
  }
  const Assignment as = f.phi.assignment();
  EXPECT_EQ(cup_eval(build_c(f.phi.surface), WordCocycle(as, zero), WordCocycle(as, some)), 0.0);
}

TEST(Bar, AbelianIntersectionForm) {
  const SurfaceData s{1, 1};
  RepresentationPoint phi(Backend::u1k(1), s);
  const Assignment as = phi.assignment();
  const BarChain2 c = build_c(s);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    std::map<Gen, Vec> u, v;
    for (Gen g : {gx(1), gy(1)}) {
      u[g] = Vec::Constant(1, uniform(rng, -1, 1));
      v[g] = Vec::Constant(1, uniform(rng, -1, 1));
    }
    u[gz(1)] = v[gz(1)] = Vec::Zero(1);
    const WordCocycle U(as, u), V(as, v);
    const double anti = 0.5 * (cup_eval(c, U, V) - cup_eval(c, V, U));
    const double j = u[gx(1)](0) * v[gy(1)](0) - u[gy(1)](0) * v[gx(1)](0);
    EXPECT_NEAR(anti, kPairingSign * j, 1e-14);
  }
}

TEST(BarProperty, CocycleCoherence) {
  const SurfaceData s{1, 2};
  for (auto seed : seeds(10)) {
    std::mt19937_64 rng(seed);
    const RepresentationPoint phi = constructed_solution(Backend::sl2r(), s, rng, 0.5);
    std::map<Gen, Vec> vals;
    for (Gen g : absolute_slots(s)) vals[g] = phi.backend.random_algebra(rng);
    const WordCocycle u(phi.assignment(), vals);
    const Word a = random_word(group_alphabet(s), 6, rng), b = random_word(group_alphabet(s), 6, rng);
    const Vec lhs = u.value(a * b);
    const Vec rhs = u.value(a) + phi.backend.Ad(word_eval(a, phi.assignment())) * u.value(b);
    EXPECT_LE((lhs - rhs).norm(), 1e-10 * (1.0 + rhs.norm()));
  }
}

TEST(BarProperty, PairingIdentities) {
  for (const Backend& b : nonabelian_backends())
    for (const SurfaceData& s : {SurfaceData{1, 1}, SurfaceData{1, 2}, SurfaceData{0, 3}}) {
      if (b.id() == BackendId::sl2r && s.genus == 0) continue;
      std::vector<ConjugacyClassSpec> classes;
      for (int j = 0; j < s.boundary; ++j)
        classes.push_back(b.id() == BackendId::su2 ? ConjugacyClassSpec::su2(0.7 + 0.4 * j)
                                                   : ConjugacyClassSpec::sl2r_elliptic(0.6 + 0.2 * j));
      const RepresentationPoint phi = relator_level_point(b, s, classes, 11);
      const ParabolicSpaces sp = parabolic_spaces(phi);
      const PairingContext ctx(phi), alt(phi, build_c_alternative(s));
      std::mt19937_64 rng(4);
      for (int t = 0; t < 10; ++t) {
        const Cochain1 u = random_parabolic(phi, sp, rng), v = random_parabolic(phi, sp, rng);
        const double w = pairing_closed_form(ctx, u, v);
        EXPECT_NEAR(w, -pairing_closed_form(ctx, v, u), 1e-12);
        EXPECT_NEAR(pairing_closed_form(ctx, u, u), 0.0, 1e-12);
        const GroupoidPairing g = pairing_groupoid_detail(ctx, u, v);
        EXPECT_NEAR(g.value, w, 1e-10) << b.name();
        EXPECT_LE(g.normalization_residual, 1e-8);
        EXPECT_NEAR(pairing_closed_form(alt, u, v), w, 1e-10);
        // 2w = <c,u v> - <c,v u> + sum_j (X_j . z_j Y_j - Y_j . z_j X_j)
        double two = pairing_raw(ctx, u.values, v.values) - pairing_raw(ctx, v.values, u.values);
        for (int j = 0; j < s.boundary; ++j) {
          const RMat adz = b.Ad(phi.z[j]);
          two += b.form(u.X[j], adz * v.X[j]) - b.form(v.X[j], adz * u.X[j]);
        }
        EXPECT_NEAR(two, 2 * w, 1e-10);
        const Vec x0 = b.random_algebra(rng);
        const Cochain1 cob = solve_parabolic_data(Cochain1{build_absolute(phi).D0 * x0, {}}, phi);
        EXPECT_NEAR(pairing_groupoid(ctx, cob, v), 0.0, 1e-10);
        EXPECT_NEAR(pairing_closed_form(ctx, cob, v), 0.0, 1e-10);
      }
    }
}
