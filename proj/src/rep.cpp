#include "parcoh/rep.hpp"

#include "parcoh/errors.hpp"

namespace parcoh {

namespace {

template <class Self>
auto& value_impl(Self& self, Gen g) {
  auto pick = [&](auto& vec) -> auto& {
    if (g.index < 1 || g.index > static_cast<int>(vec.size()))
      throw UnboundGenerator("generator " + g.str() + " out of range");
    return vec[g.index - 1];
  };
  switch (g.kind) {
    case GenKind::x: return pick(self.x);
    case GenKind::y: return pick(self.y);
    case GenKind::z: return pick(self.z);
    default: break;
  }
  throw UnboundGenerator("representation point has no value for " + g.str());
}

}  // namespace

const Mat& RepresentationPoint::value(Gen g) const { return value_impl(*this, g); }
Mat& RepresentationPoint::value(Gen g) { return value_impl(*this, g); }

Assignment RepresentationPoint::assignment() const {
  Assignment a(backend);
  for (int j = 1; j <= surface.genus; ++j) {
    a.bind(gx(j), x[j - 1]);
    a.bind(gy(j), y[j - 1]);
  }
  for (int j = 1; j <= surface.boundary; ++j) a.bind(gz(j), z[j - 1]);
  return a;
}

Assignment RepresentationPoint::retract_assignment() const {
  Assignment a = assignment();
  for (int j = 1; j <= surface.boundary; ++j) {
    a.bind(ga(j), z[j - 1]);
    a.bind(ggamma(j), backend.identity());
  }
  return a;
}

Mat RepresentationPoint::relator_value() const { return word_eval(relator(surface), assignment()); }

double RepresentationPoint::relator_defect() const { return (relator_value() - backend.identity()).norm(); }

Assignment GroupoidRepPoint::assignment() const {
  Assignment as(backend);
  for (int j = 1; j <= surface.genus; ++j) {
    as.bind(gx(j), x[j - 1]);
    as.bind(gy(j), y[j - 1]);
  }
  for (int j = 1; j <= surface.boundary; ++j) {
    as.bind(ga(j), a[j - 1]);
    as.bind(ggamma(j), gamma[j - 1]);
  }
  return as;
}

}  // namespace parcoh
