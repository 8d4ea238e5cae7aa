#pragma once

#include <string>
#include <utility>
#include <vector>

#include "parcoh/rep.hpp"

namespace parcoh {

struct Fixture {
  std::string name;
  std::string description;
  std::string provenance;  // how the point was obtained
  std::vector<std::pair<std::string, double>> params;
  RepresentationPoint phi;
};

// x = exp(alpha e1), y = exp(alpha e2), z = [x,y]^-1 with alpha chosen so
// that tr z = 2 cos(theta).
RepresentationPoint su2_commutator_point(double theta);
// x = exp(a H), y = exp(a (E + F)), z = [x,y]^-1; elliptic for cosh^2 a < 2.
RepresentationPoint sl2r_commutator_point(double a);

std::vector<Fixture> fixture_catalog();
Fixture fixture(const std::string& name);  // throws ConfigError

}  // namespace parcoh
