#include "parcoh/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "parcoh/errors.hpp"

namespace parcoh {

namespace {

Eigen::JacobiSVD<RMat> svd_full(const RMat& a) {
  return Eigen::JacobiSVD<RMat>(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

double threshold_for(double sigma_max, double rel) { return rel * std::max(sigma_max, 1.0); }

int rank_from(const Vec& s, double thr) {
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > thr) ++r;
  return r;
}

}  // namespace

RankInfo numerical_rank(const RMat& a, double rel, bool strict) {
  RankInfo info;
  if (a.size() == 0) return info;
  Eigen::JacobiSVD<RMat> svd(a);
  const Vec& s = svd.singularValues();
  info.sigma_max = s.size() ? s(0) : 0.0;
  info.threshold = threshold_for(info.sigma_max, rel);
  info.rank = rank_from(s, info.threshold);
  if (info.rank > 0) info.gap_below = s(info.rank - 1);
  if (info.rank < s.size()) info.gap_above = s(info.rank);
  if (strict) {
    for (int i = 0; i < s.size(); ++i) {
      if (s(i) > info.threshold / 10 && s(i) < info.threshold * 10) {
        std::ostringstream os;
        os << "singular value " << s(i) << " within a decade of rank threshold " << info.threshold;
        throw IllConditioned(os.str());
      }
    }
  }
  return info;
}

RMat column_basis(const RMat& a, double rel) {
  if (a.size() == 0) return RMat(a.rows(), 0);
  auto svd = svd_full(a);
  const Vec& s = svd.singularValues();
  int r = rank_from(s, threshold_for(s.size() ? s(0) : 0.0, rel));
  return svd.matrixU().leftCols(r);
}

RMat null_basis(const RMat& a, double rel) {
  if (a.rows() == 0) return RMat::Identity(a.cols(), a.cols());
  if (a.cols() == 0) return RMat(0, 0);
  auto svd = svd_full(a);
  const Vec& s = svd.singularValues();
  int r = rank_from(s, threshold_for(s.size() ? s(0) : 0.0, rel));
  return svd.matrixV().rightCols(a.cols() - r);
}

Vec min_norm_solve(const RMat& a, const Vec& b, double rel) {
  if (a.cols() == 0) return Vec(0);
  Eigen::JacobiSVD<RMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  double thr = threshold_for(s.size() ? s(0) : 0.0, rel);
  Vec ub = svd.matrixU().transpose() * b;
  for (int i = 0; i < s.size(); ++i) ub(i) = s(i) > thr ? ub(i) / s(i) : 0.0;
  return svd.matrixV() * ub;
}

double max_abs(const RMat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace parcoh
