#pragma once

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "parcoh/linalg.hpp"
#include "parcoh/tolerances.hpp"

namespace parcoh {

enum class BackendId { su2, sl2r, u1k };

// A matrix Lie group together with a basis of its Lie algebra and an
// invariant symmetric bilinear form.  Algebra elements are handled as real
// coordinate vectors in that basis; group elements are ambient matrices.
//
//   su2 : e_k = -(i/2) sigma_k, [e1,e2] = e3,  X.Y = -tr(XY)  (Gram = I/2)
//   sl2r: H, E, F,                             X.Y = tr(XY)
//   u1k : i E_mm,                              X.Y = sum x_m y_m
class Backend {
 public:
  static Backend su2();
  static Backend sl2r();
  static Backend u1k(int k);

  BackendId id() const { return d_->id; }
  std::string name() const;
  int k() const { return d_->k; }
  int matrix_size() const { return d_->n; }
  int dim() const { return d_->dim; }
  bool is_abelian() const { return d_->id == BackendId::u1k; }
  bool same_as(const Backend& o) const { return id() == o.id() && k() == o.k(); }

  const std::vector<Mat>& basis() const { return d_->basis; }
  const RMat& gram() const { return d_->gram; }
  bool form_nondegenerate() const;

  Mat identity() const { return Mat::Identity(d_->n, d_->n); }
  Mat to_matrix(const Vec& coords) const;
  Vec coords(const Mat& x) const;  // least-squares projection onto the basis

  double form(const Vec& x, const Vec& y) const { return x.dot(d_->gram * y); }
  Vec bracket(const Vec& x, const Vec& y) const { return ad(x) * y; }
  RMat ad(const Vec& x) const;
  RMat Ad(const Mat& g) const;
  Mat inverse(const Mat& g) const;

  bool in_group(const Mat& g, double tol) const;
  bool in_algebra(const Mat& x, double tol) const;

  Mat exp(const Vec& z) const;

  // J_L(Z) = sum (-ad Z)^k/(k+1)!  so that d/dt exp(Z+tV) = exp(Z) J_L(Z) V.
  // J_R(Z) = sum ( ad Z)^k/(k+1)!  so that d/dt exp(Z+tV) = (J_R(Z) V) exp(Z).
  RMat jacobian_left(const Vec& z) const;
  RMat jacobian_right(const Vec& z) const;

  // Random samples: Haar on SU(2), exp of bounded normal coordinates otherwise.
  Mat random_group(std::mt19937_64& rng, double scale = 1.0) const;
  Vec random_algebra(std::mt19937_64& rng, double scale = 1.0) const;

 private:
  struct Data {
    BackendId id;
    int k = 0;
    int n = 0;
    int dim = 0;
    std::vector<Mat> basis;
    RMat gram;
    std::vector<RMat> ad_basis;  // ad(e_i)
    RMat realify_pinv;           // ambient (re,im) -> coords
  };
  explicit Backend(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static std::shared_ptr<const Data> finish(Data d);

  std::shared_ptr<const Data> d_;
};

// Haar on SU(2); exp of N(0, 1/4) coordinates otherwise.  Conjugating by
// unbounded sl2r elements makes orbit coordinates arbitrarily large.
Mat random_conjugator(const Backend& b, std::mt19937_64& rng);

// exp(Z) J_L(Z) V as an ambient tangent matrix at exp(Z).
Mat dexp(const Backend& b, const Vec& z, const Vec& v);

// Newton iteration for Z with exp(Z) = g, started at `hint`.
Vec log_regular(const Backend& b, const Mat& g, const Vec& hint,
                const Tolerances& tol = default_tolerances());

// Smallest singular value of J_L(Z); Z is regular when it exceeds the tolerance.
double regularity(const Backend& b, const Vec& z);

double triple(const Backend& b, const Vec& a, const Vec& x, const Vec& y);

// lambda_g(u,v,w) = 1/2 triple(g^-1 u, g^-1 v, g^-1 w) for ambient tangent u,v,w at g.
double cartan3(const Backend& b, const Mat& g, const Mat& u, const Mat& v, const Mat& w);

// Radial homotopy operator on forms over the algebra:
//   (h w)_Z(v...) = int_0^1 t^(p-1) w_{tZ}(Z, v...) dt,  p = vectors.size() + 1.
using AlgebraForm = std::function<double(const Vec& at, const std::vector<Vec>& args)>;
double homotopy_h(const AlgebraForm& form, const Vec& z, const std::vector<Vec>& vectors);

// exp^* lambda at W, as a 3-form on algebra coordinates.
double exp_pullback_cartan3(const Backend& b, const Vec& w, const Vec& x, const Vec& y, const Vec& v);

// beta = h(exp^* lambda) at Z, returned as the d x d matrix B with
// beta_Z(V1, V2) = V1^T B V2.  One quadrature pass serves all arguments.
RMat beta_quadrature_matrix(const Backend& b, const Vec& z);

// theta(X)_a(v) = 1/2 X . (v a^-1 + a^-1 v).
double theta_oneform(const Backend& b, const Vec& x, const Mat& a, const Mat& v);

}  // namespace parcoh
