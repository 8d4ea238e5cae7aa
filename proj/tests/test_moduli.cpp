#include <gtest/gtest.h>

#include "generators.hpp"
#include "parcoh/errors.hpp"
#include "parcoh/fixtures.hpp"
#include "parcoh/moduli.hpp"

using namespace parcoh;
using namespace parcoh::testing;

namespace {

RepresentationPoint conjugate(const RepresentationPoint& phi, const Mat& g) {
  RepresentationPoint out = phi;
  const Mat gi = phi.backend.inverse(g);
  for (auto* list : {&out.x, &out.y, &out.z})
    for (Mat& m : *list) m = g * m * gi;
  return out;
}

TangentVector conjugate(const TangentVector& t, const RMat& ad, int d) {
  TangentVector out = t;
  for (int i = 0; i < t.u.size() / d; ++i) out.u.segment(i * d, d) = ad * t.u.segment(i * d, d);
  for (Vec& a : out.A) a = ad * a;
  return out;
}

ExtendedPoint sampled_extended(const Backend& b, const ConjugacyClassSpec& c, std::uint64_t seed) {
  const RepresentationPoint phi = sample_homFC(b, {1, 1}, {c}, seed, 0.5);
  return extend(phi, Vec::Zero(b.dim()));
}

}  // namespace

TEST(Moduli, SamplingDeterministic) {
  const auto c = ConjugacyClassSpec::su2(0.8);
  const RepresentationPoint a = sample_homFC(Backend::su2(), {2, 1}, {c}, 42);
  const RepresentationPoint b = sample_homFC(Backend::su2(), {2, 1}, {c}, 42);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(a.x[i], b.x[i]);
    EXPECT_EQ(a.y[i], b.y[i]);
  }
  EXPECT_EQ(a.z[0], b.z[0]);
  EXPECT_TRUE(class_membership(a.z[0], c));

  const auto u = ConjugacyClassSpec::u1k({0.4});
  const RepresentationPoint ab = sample_homFC(Backend::u1k(1), {1, 1}, {u}, 3);
  EXPECT_LE((ab.z[0] - u.representative()).norm(), 1e-15);
}

TEST(Moduli, ProjectionExamples) {
  const Fixture f = fixture("su2-commutator-l1n1");
  ProjectionStats st;
  const RepresentationPoint same = project_to_relator_level(f.phi, f.phi.backend.identity(), default_tolerances(), &st);
  EXPECT_EQ(st.iterations, 0);
  EXPECT_EQ(same.x[0], f.phi.x[0]);

  // Perturb the fixture and refine back to the level set, staying in the class.
  const auto c = ConjugacyClassSpec::su2(1.0);
  RepresentationPoint moved = f.phi;
  std::mt19937_64 rng(4);
  moved.x[0] = moved.backend.exp(0.05 * moved.backend.random_algebra(rng)) * moved.x[0];
  const RepresentationPoint back = project_to_relator_level(moved, moved.backend.identity());
  EXPECT_LE(back.relator_defect(), 1e-10);
  EXPECT_TRUE(class_membership(back.z[0], c));

  const auto bad = ConjugacyClassSpec::u1k({0.3});
  EXPECT_THROW(relator_level_point(Backend::u1k(1), {1, 1}, {bad}, 1), ObstructedClasses);
  const auto good = ConjugacyClassSpec::u1k({0.0});
  EXPECT_NO_THROW(relator_level_point(Backend::u1k(1), {1, 1}, {good}, 1));
}

TEST(Moduli, ExtendExamples) {
  const Fixture f = fixture("su2-commutator-l1n1");
  const ExtendedPoint p = extend(f.phi, Vec::Zero(3));
  EXPECT_LE(p.Lambda.norm(), 1e-9);
  EXPECT_LE(mu(p).norm(), 1e-9);
  const ExtendedPoint q = sampled_extended(Backend::su2(), ConjugacyClassSpec::su2(1.0), 5);
  EXPECT_LE((q.phi.backend.exp(q.Lambda) - q.phi.relator_value()).norm(), 1e-9);

  // Branch continuity along a path through the chart.
  const ExtendedChart chart(q);
  std::mt19937_64 rng(1);
  Vec dir = Vec::Random(chart.dim()).normalized();
  Vec prev = q.Lambda;
  for (int k = 1; k <= 20; ++k) {
    const Vec lam = chart.point(0.01 * k * dir).Lambda;
    EXPECT_LE((lam - prev).norm(), 0.1);
    prev = lam;
  }
}

TEST(Moduli, OmegaCExamples) {
  const Fixture f = fixture("su2-commutator-l1n1");
  const RepresentationPoint& phi = f.phi;
  std::mt19937_64 rng(2);
  const int c1 = 3 * phi.surface.rank();
  const Vec u = Vec::Random(c1), v = Vec::Random(c1);
  EXPECT_EQ(omega_c(phi, u, u), 0.0);
  const Mat g = random_conjugator(phi.backend, rng);
  const RMat ad = phi.backend.Ad(g);
  const TangentVector gu = conjugate(TangentVector{u, {}}, ad, 3), gv = conjugate(TangentVector{v, {}}, ad, 3);
  EXPECT_NEAR(omega_c(conjugate(phi, g), gu.u, gv.u), omega_c(phi, u, v), 1e-10);

  RepresentationPoint ab(Backend::u1k(1), {1, 1});
  Vec a(3), b(3);
  a << 0.3, -1.2, 0.0;
  b << 0.7, 0.4, 0.0;
  EXPECT_NEAR(omega_c(ab, a, b), kPairingSign * (0.3 * 0.4 - (-1.2) * 0.7), 1e-14);
}

TEST(ModuliProperty, ExtendedFormInvariantAndSkew) {
  for (const Backend& b : nonabelian_backends()) {
    const auto c = b.id() == BackendId::su2 ? ConjugacyClassSpec::su2(0.9) : ConjugacyClassSpec::sl2r_elliptic(0.6);
    for (auto seed : seeds(5)) {
      const ExtendedPoint p = sampled_extended(b, c, seed);
      const HomChart chart(p.phi);
      std::mt19937_64 rng(seed);
      const Vec s0 = Vec::Zero(chart.dim());
      const TangentVector U = chart.tangent(s0, Vec::Random(chart.dim()));
      const TangentVector V = chart.tangent(s0, Vec::Random(chart.dim()));
      EXPECT_NEAR(omega_ext(p, U, U), 0.0, 1e-12);
      EXPECT_NEAR(omega_ext(p, U, V), -omega_ext(p, V, U), 1e-12);
      const Mat g = random_conjugator(b, rng);
      const RMat ad = b.Ad(g);
      const ExtendedPoint gp{conjugate(p.phi, g), ad * p.Lambda};
      EXPECT_NEAR(omega_ext(gp, conjugate(U, ad, 3), conjugate(V, ad, 3)), omega_ext(p, U, V), 1e-10);
      const Vec x = b.random_algebra(rng);
      EXPECT_NEAR(mu_pair(gp, ad * x), mu_pair(p, x), 1e-10);
      EXPECT_NEAR(mu_pair(p, 2.0 * x), 2.0 * mu_pair(p, x), 1e-12);
    }
  }
}

TEST(Moduli, ExtendedFormAtIdentityHasNoBetaTerm) {
  const Fixture f = fixture("su2-commutator-l1n1");
  const ExtendedPoint p{f.phi, Vec::Zero(3)};
  const HomChart chart(f.phi);
  std::mt19937_64 rng(3);
  const Vec s0 = Vec::Zero(chart.dim());
  const TangentVector U = chart.tangent(s0, Vec::Random(chart.dim())), V = chart.tangent(s0, Vec::Random(chart.dim()));
  double expected = omega_c(f.phi, U.u, V.u);
  for (int j = 0; j < 1; ++j) expected += tau(f.phi.backend, f.phi.z[j], U.A[j], V.A[j]);
  EXPECT_NEAR(omega_ext(p, U, V), expected, 1e-12);
}

TEST(Moduli, ExtendedFormClosedWithMomentum) {
  struct Case {
    Backend b;
    ConjugacyClassSpec c;
  };
  for (const Case& k : {Case{Backend::su2(), ConjugacyClassSpec::su2(1.0)},
                        Case{Backend::sl2r(), ConjugacyClassSpec::sl2r_elliptic(0.7)}}) {
    const ExtendedPoint p = sampled_extended(k.b, k.c, 101);
    std::mt19937_64 rng(1);
    const ExtendedFormReport r = verify_extended_form(p, 5, 1e-3, rng);
    EXPECT_GE(r.closed_ratio, 3.5) << k.b.name();
    EXPECT_LE(r.momentum, 1e-6) << k.b.name();
  }
  const ExtendedPoint ab = sampled_extended(Backend::u1k(1), ConjugacyClassSpec::u1k({0.4}), 3);
  std::mt19937_64 rng(1);
  const ExtendedFormReport r = verify_extended_form(ab, 5, 1e-3, rng);
  EXPECT_TRUE(r.closed_exact);
  EXPECT_LE(r.momentum, 1e-12);
}

TEST(Moduli, RestrictionAtFixture) {
  const Fixture f = fixture("su2-commutator-l1n1");
  std::mt19937_64 rng(9);
  const RestrictionReport r = verify_restriction(f.phi, 20, rng);
  EXPECT_EQ(r.dim, 2);
  EXPECT_EQ(r.rank, 2);
  EXPECT_LE(r.gram_diff, 1e-9);
  EXPECT_LE(r.pair_diff, 1e-9);
  EXPECT_LE(r.coboundary, 1e-9);
}

TEST(Moduli, ParabolicH1Dimensions) {
  EXPECT_EQ(parabolic_h1_basis(fixture("su2-commutator-l1n1").phi).basis.cols(), 2);
  const H1ParBasis closed = parabolic_h1_basis(fixture("su2-closed-l2n0").phi);
  EXPECT_EQ(closed.basis.cols(), 6);
  for (int g = 1; g <= 3; ++g) {
    const H1ParBasis ab = parabolic_h1_basis(fixture("u1-trivial-l" + std::to_string(g) + "n1").phi);
    EXPECT_EQ(ab.basis.cols(), 2 * g);
    EXPECT_EQ(ab.rank, 2 * g);
  }
}

TEST(Moduli, ReducibleDegeneracyDetected) {
  // All values in the diagonal torus: the stabilizer is nontrivial.
  const Backend b = Backend::su2();
  RepresentationPoint phi(b, {2, 1});
  Vec e3 = Vec::Unit(3, 2);
  phi.x[0] = b.exp(0.7 * e3);
  phi.y[0] = b.exp(1.1 * e3);
  phi.x[1] = b.exp(-0.4 * e3);
  phi.y[1] = b.exp(0.2 * e3);
  phi.z[0] = b.identity();
  EXPECT_FALSE(is_irreducible(phi));
  const H1ParBasis h = parabolic_h1_basis(phi);
  EXPECT_GT(h.basis.cols(), (2 * 2 - 2) * 3);  // exceeds the irreducible count
}

TEST(Moduli, GroupoidRestriction) {
  for (const Backend& b : {Backend::su2(), Backend::sl2r()}) {
    std::mt19937_64 rng(6);
    const RepresentationPoint phi = constructed_solution(b, {1, 2}, rng, 0.5);
    const RepresentationPoint back = restrict_rep(corestrict(phi));
    for (int j = 0; j < 2; ++j) EXPECT_EQ(back.z[j], phi.z[j]);
    EXPECT_EQ(back.x[0], phi.x[0]);

    GroupoidRepPoint chi = corestrict(phi);
    for (Mat& g : chi.gamma) g = random_conjugator(b, rng);
    for (int t = 0; t < 10; ++t) {
      std::vector<Mat> th;
      for (int k = 0; k < 3; ++k) th.push_back(random_conjugator(b, rng));
      const GroupoidRepPoint moved = gauge_act(th, chi);
      const RepresentationPoint lhs = restrict_rep(moved);
      const RepresentationPoint rhs = conjugate(restrict_rep(chi), th[0]);
      for (int j = 0; j < 2; ++j) EXPECT_LE((lhs.z[j] - rhs.z[j]).norm(), 1e-12 * (1 + rhs.z[j].norm()));
      for (int j = 0; j < 2; ++j) {
        const ConjugacyClassSpec c = ConjugacyClassSpec::of_element(b, chi.a[j]);
        EXPECT_TRUE(class_membership(moved.a[j], c, 1e-8));
      }
    }
  }
}
