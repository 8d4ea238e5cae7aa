#include "parcoh/fixtures.hpp"

#include <cmath>

#include "parcoh/errors.hpp"

namespace parcoh {

namespace {

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

Mat commutator_inverse(const Backend& b, const Mat& x, const Mat& y) {
  return b.inverse(x * y * b.inverse(x) * b.inverse(y));
}

}  // namespace

RepresentationPoint su2_commutator_point(double theta) {
  const Backend b = Backend::su2();
  const double alpha = 2.0 * std::asin(std::sqrt(std::abs(std::sin(theta / 2.0))));
  RepresentationPoint phi(b, SurfaceData{1, 1});
  phi.x[0] = b.exp(v3(alpha, 0, 0));
  phi.y[0] = b.exp(v3(0, alpha, 0));
  phi.z[0] = commutator_inverse(b, phi.x[0], phi.y[0]);
  return phi;
}

RepresentationPoint sl2r_commutator_point(double a) {
  const Backend b = Backend::sl2r();
  RepresentationPoint phi(b, SurfaceData{1, 1});
  phi.x[0] = b.exp(v3(a, 0, 0));
  phi.y[0] = b.exp(v3(0, a, a));
  phi.z[0] = commutator_inverse(b, phi.x[0], phi.y[0]);
  return phi;
}

std::vector<Fixture> fixture_catalog() {
  std::vector<Fixture> out;
  {
    const double theta = 1.0;
    out.push_back({"su2-commutator-l1n1", "su2, genus 1, one boundary circle, class angle 1.0",
                   "explicit commutator of rotations about orthogonal axes",
                   {{"theta", theta}, {"alpha", 2.0 * std::asin(std::sqrt(std::sin(theta / 2.0)))}},
                   su2_commutator_point(theta)});
  }
  out.push_back({"sl2r-elliptic-l1n1", "sl2r, genus 1, one boundary circle, elliptic boundary class",
                 "explicit commutator of two hyperbolic elements", {{"a", 0.5}}, sl2r_commutator_point(0.5)});
  {
    const Backend b = Backend::su2();
    RepresentationPoint phi(b, SurfaceData{2, 0});
    const double alpha = 1.1;
    phi.x[0] = b.exp(v3(alpha, 0, 0));
    phi.y[0] = b.exp(v3(0, alpha, 0));
    phi.x[1] = phi.y[0];
    phi.y[1] = phi.x[0];
    out.push_back({"su2-closed-l2n0", "su2, closed genus 2 surface", "x2 = y1, y2 = x1 cancels the commutators",
                   {{"alpha", alpha}}, phi});
  }
  {
    const Backend b = Backend::su2();
    RepresentationPoint phi(b, SurfaceData{0, 3});
    phi.z[0] = b.exp(v3(1.2, 0, 0));
    phi.z[1] = b.exp(v3(0, 0.8, 0));
    phi.z[2] = b.inverse(phi.z[0] * phi.z[1]);
    out.push_back({"su2-pants-l0n3", "su2, three-holed sphere", "z3 = (z1 z2)^-1",
                   {{"z1_angle", 1.2}, {"z2_angle", 0.8}}, phi});
  }
  for (int g = 1; g <= 3; ++g) {
    RepresentationPoint phi(Backend::u1k(1), SurfaceData{g, 1});
    out.push_back({"u1-trivial-l" + std::to_string(g) + "n1",
                   "u1, genus " + std::to_string(g) + ", one boundary circle, class {0}", "trivial representation",
                   {{"genus", g}}, phi});
  }
  for (const Fixture& f : out)
    if (!(f.phi.relator_defect() <= 1e-10))
      throw Error("fixture " + f.name + " fails r(phi) = e: " + std::to_string(f.phi.relator_defect()));
  return out;
}

Fixture fixture(const std::string& name) {
  for (Fixture& f : fixture_catalog())
    if (f.name == name) return f;
  throw ConfigError("unknown fixture '" + name + "'");
}

}  // namespace parcoh
