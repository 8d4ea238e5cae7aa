#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace parcoh {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;   // group / algebra elements (ambient matrices)
using RMat = Eigen::MatrixXd;   // real linear maps on algebra coordinates
using Vec = Eigen::VectorXd;    // algebra coordinates, cochains

struct RankInfo {
  int rank = 0;
  double sigma_max = 0.0;
  double threshold = 0.0;
  double gap_below = 0.0;  // smallest kept singular value (0 if rank 0)
  double gap_above = 0.0;  // largest dropped singular value (0 if full)
};

// Numerical rank with threshold rel * max(sigma_max, 1).  Throws
// IllConditioned when a singular value lies within a decade of the threshold
// and `strict` is set.
RankInfo numerical_rank(const RMat& a, double rel, bool strict = true);

// Orthonormal basis (columns) of the column space / null space.
RMat column_basis(const RMat& a, double rel);
RMat null_basis(const RMat& a, double rel);

// Minimum-norm least-squares solution of a x = b.
Vec min_norm_solve(const RMat& a, const Vec& b, double rel);

double max_abs(const RMat& a);

}  // namespace parcoh
