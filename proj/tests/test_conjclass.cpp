#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "parcoh/conjclass.hpp"
#include "parcoh/errors.hpp"

using namespace parcoh;
using namespace parcoh::testing;

namespace {

std::vector<ConjugacyClassSpec> noncentral_classes() {
  return {ConjugacyClassSpec::su2(0.4), ConjugacyClassSpec::su2(1.3), ConjugacyClassSpec::sl2r_elliptic(0.8),
          ConjugacyClassSpec::sl2r_hyperbolic(0.6)};
}

}  // namespace

TEST(ConjClass, Membership) {
  for (const auto& c : noncentral_classes()) {
    EXPECT_TRUE(class_membership(c.representative(), c)) << c.tag();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
      const Mat q = random_conjugator(c.backend(), rng);
      EXPECT_TRUE(class_membership(q * c.representative() * c.backend().inverse(q), c)) << c.tag();
    }
  }
  EXPECT_FALSE(class_membership(ConjugacyClassSpec::su2(0.5).representative(), ConjugacyClassSpec::su2(0.7)));
  EXPECT_TRUE(class_membership(ConjugacyClassSpec::su2(-0.7).representative(), ConjugacyClassSpec::su2(0.7)));
}

TEST(ConjClass, Sl2rTagsSeparateEqualTraces) {
  // exp(a(E - F)) and exp(-a(E - F)) share the trace but are not conjugate in SL(2,R).
  const auto plus = ConjugacyClassSpec::sl2r_elliptic(0.8), minus = ConjugacyClassSpec::sl2r_elliptic(-0.8);
  EXPECT_NEAR(plus.representative().trace().real(), minus.representative().trace().real(), 1e-14);
  EXPECT_NE(plus.tag(), minus.tag());
  EXPECT_FALSE(class_membership(minus.representative(), plus));
  EXPECT_EQ(ConjugacyClassSpec::sl2r_hyperbolic(0.5).tag(), "hyperbolic+");
  Mat unip(2, 2);
  unip << 1, 1, 0, 1;
  EXPECT_EQ(class_tag(Backend::sl2r(), unip).rfind("parabolic", 0), 0u);
}

TEST(ConjClass, TangentDimensions) {
  const Backend su2 = Backend::su2();
  EXPECT_EQ(class_tangent(su2, su2.identity()).size(), 0u);
  EXPECT_EQ(class_tangent(su2, -su2.identity()).size(), 0u);
  EXPECT_EQ(class_tangent(su2, ConjugacyClassSpec::su2(0.9).representative()).size(), 2u);
  const Backend u = Backend::u1k(3);
  std::mt19937_64 rng(1);
  EXPECT_EQ(class_tangent(u, u.random_group(rng)).size(), 0u);
  for (const auto& c : noncentral_classes()) EXPECT_EQ(c.dimension(), 2);
}

TEST(ConjClass, KirillovExamples) {
  const Backend b = Backend::su2();
  const double c = 1.7;
  EXPECT_NEAR(kirillov(b, c * Vec::Unit(3, 2), Vec::Unit(3, 0), Vec::Unit(3, 1)), c / 2, 1e-15);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10; ++i) {
    const Vec z = b.random_algebra(rng), x = b.random_algebra(rng), y = b.random_algebra(rng);
    EXPECT_EQ(kirillov(b, z, x, x), 0.0);
    EXPECT_NEAR(kirillov(b, z, x, y), b.form(b.bracket(z, x), y), 1e-12);
    // X + N with [N, Z] = 0 gives the same value.
    EXPECT_NEAR(kirillov(b, z, x + 0.3 * z, y), kirillov(b, z, x, y), 1e-12);
  }
}

TEST(ConjClass, TauExamples) {
  const Backend b = Backend::su2();
  const double theta = 0.45;
  const Mat p = ConjugacyClassSpec::su2(theta).representative();
  const Vec e1 = Vec::Unit(3, 0), e2 = Vec::Unit(3, 1);
  const Mat x = b.to_matrix(e1), y = b.to_matrix(e2), pi = b.inverse(p);
  const double direct = 0.5 * (-(x * p * y * pi).trace().real() + (y * p * x * pi).trace().real());
  EXPECT_NEAR(tau(b, p, e1, e2), direct, 1e-15);
  EXPECT_NEAR(std::abs(tau(b, p, e1, e2)), 0.5 * std::sin(2 * theta), 1e-15);
  EXPECT_EQ(tau(b, p, e1, e1), 0.0);
}

TEST(ConjClassProperty, TauEquivariantAndWellDefined) {
  for (const auto& c : noncentral_classes()) {
    const Backend& b = c.backend();
    for (auto seed : seeds(10)) {
      std::mt19937_64 rng(seed);
      const Mat p = c.representative();
      const Mat g = random_conjugator(b, rng);
      const Vec x = b.random_algebra(rng), y = b.random_algebra(rng);
      const RMat ag = b.Ad(g);
      EXPECT_NEAR(tau(b, g * p * b.inverse(g), ag * x, ag * y), tau(b, p, x, y), 1e-10) << c.tag();
      const RMat ker = null_basis(b.Ad(p) - RMat::Identity(3, 3), 1e-8);
      const Vec k = ker * Vec::Random(ker.cols());
      EXPECT_NEAR(tau(b, p, x + k, y), tau(b, p, x, y), 1e-10);
    }
  }
}

TEST(ConjClass, BetaClosedExamples) {
  const Backend b = Backend::sl2r();
  std::mt19937_64 rng(7);
  const Vec z = b.random_algebra(rng), x = b.random_algebra(rng), y = b.random_algebra(rng);
  EXPECT_NEAR(beta_closed(b, z, x, x), 0.0, 1e-14);
  EXPECT_NEAR(beta_closed(b, Vec::Zero(3), x, y), 0.0, 1e-14);
}

TEST(ConjClassProperty, BetaAndTauPullback) {
  for (const auto& c : noncentral_classes()) {
    for (auto seed : seeds(5)) {
      std::mt19937_64 rng(seed);
      const OrbitPoint z = orbit_point(c, random_conjugator(c.backend(), rng));
      const TauPullbackReport r = verify_tau_pullback(c.backend(), z, 20, rng);
      EXPECT_LE(r.closed_vs_quadrature, 1e-8) << c.tag();
      EXPECT_LE(r.tau_pullback_closed, 1e-8) << c.tag();
      EXPECT_LE(r.tau_pullback_quadrature, 1e-8) << c.tag();
      EXPECT_LE(r.dexp_image, 1e-8) << c.tag();
    }
  }
}

TEST(ConjClass, AbelianFormsVanish) {
  const auto c = ConjugacyClassSpec::u1k({0.3, -1.1});
  std::mt19937_64 rng(1);
  const TauPullbackReport r = verify_tau_pullback(c.backend(), orbit_point(c), 10, rng);
  EXPECT_EQ(r.tau_pullback_closed, 0.0);
  EXPECT_EQ(r.closed_vs_quadrature, 0.0);
  const CartanReport r63 = verify_cartan(c, 3, rng);
  EXPECT_EQ(r63.class_dim, 0);
  EXPECT_EQ(r63.theta, 0.0);
}

TEST(ConjClass, CartanIdentities) {
  for (const auto& c : noncentral_classes()) {
    std::mt19937_64 rng(5);
    const CartanReport r = verify_cartan(c, 8, rng);
    EXPECT_LE(r.theta, 1e-10) << c.tag();
    // Classes are 2-dimensional here: d tau = lambda has no triples to test.
    EXPECT_EQ(r.triples, 0);
    EXPECT_TRUE(r.dtau.exact);
    EXPECT_GE(r.dbeta.ratio, 3.5) << c.tag();
  }
}

TEST(ConjClass, UnipotentHasNoOrbitPoint) {
  Mat unip(2, 2);
  unip << 1, 1, 0, 1;
  const auto c = ConjugacyClassSpec::of_element(Backend::sl2r(), unip);
  EXPECT_THROW(c.orbit_coordinates(), NotInRegularSet);
}

TEST(ConjClass, OrbitPointExpLandsInClass) {
  for (const auto& c : noncentral_classes()) {
    std::mt19937_64 rng(12);
    const OrbitPoint o = orbit_point(c, random_conjugator(c.backend(), rng));
    EXPECT_TRUE(class_membership(c.backend().exp(o.Z), c, 1e-9));
    EXPECT_LE((c.backend().exp(o.Z) - o.p).norm(), 1e-9);
  }
}
