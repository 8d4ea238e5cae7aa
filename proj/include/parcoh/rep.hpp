#pragma once

#include <vector>

#include "parcoh/fox.hpp"

namespace parcoh {

// phi : F -> G given by its values on x_1..y_l, z_1..z_n.
struct RepresentationPoint {
  Backend backend;
  SurfaceData surface;
  std::vector<Mat> x, y, z;

  RepresentationPoint(Backend b, SurfaceData s)
      : backend(std::move(b)), surface(s),
        x(s.genus, backend.identity()), y(s.genus, backend.identity()), z(s.boundary, backend.identity()) {}

  const Mat& value(Gen g) const;
  Mat& value(Gen g);
  Assignment assignment() const;
  // Also binds a_j -> z_j and gamma_j -> e (corestriction), so groupoid words
  // can be evaluated through the deformation retraction.
  Assignment retract_assignment() const;
  Mat relator_value() const;
  double relator_defect() const;  // ||r(phi) - e||_F
};

// A homomorphism from the free groupoid on x, y, a, gamma.
struct GroupoidRepPoint {
  Backend backend;
  SurfaceData surface;
  std::vector<Mat> x, y, a, gamma;

  GroupoidRepPoint(Backend b, SurfaceData s)
      : backend(std::move(b)), surface(s),
        x(s.genus, backend.identity()), y(s.genus, backend.identity()),
        a(s.boundary, backend.identity()), gamma(s.boundary, backend.identity()) {}

  Assignment assignment() const;
};

}  // namespace parcoh
