#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "parcoh/linalg.hpp"

namespace parcoh {

// Finite-difference residual of an exterior derivative at steps h and h/2.
struct FdConvergence {
  double residual_h = 0.0;
  double residual_h2 = 0.0;
  double ratio = 0.0;
  bool exact = false;  // both residuals at round-off level, or nothing to test
};

inline FdConvergence fd_convergence(double rh, double rh2, double floor = 1e-12) {
  FdConvergence f;
  f.residual_h = rh;
  f.residual_h2 = rh2;
  f.exact = std::max(rh, rh2) < floor;
  f.ratio = rh2 > 0 ? rh / rh2 : (rh > 0 ? INFINITY : 0.0);
  return f;
}

// Max over i<j<k of |(d alpha)_ijk - target(i,j,k)| for a 2-form alpha given
// as a matrix-valued function on R^m, using central differences with step h.
template <class Form2, class Form3>
double dform_residual(int m, const Form2& alpha, const Form3& target, double h) {
  std::vector<RMat> plus(m), minus(m);
  for (int i = 0; i < m; ++i) {
    Vec s = Vec::Zero(m);
    s(i) = h;
    plus[i] = alpha(s);
    minus[i] = alpha(-s);
  }
  auto partial = [&](int i, int a, int b) { return (plus[i](a, b) - minus[i](a, b)) / (2 * h); };
  double worst = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        const double d = partial(i, j, k) - partial(j, i, k) + partial(k, i, j);
        worst = std::max(worst, std::abs(d - target(i, j, k)));
      }
  return worst;
}

}  // namespace parcoh
