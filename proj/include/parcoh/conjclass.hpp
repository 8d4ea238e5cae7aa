#pragma once

#include <random>
#include <string>
#include <vector>

#include "parcoh/fd.hpp"
#include "parcoh/lie.hpp"

namespace parcoh {

// Conjugacy class given by a representative, its trace-type fingerprint and,
// for sl2r, a discrete type tag (trace alone does not separate real classes).
class ConjugacyClassSpec {
 public:
  static ConjugacyClassSpec su2(double theta);              // diag(e^{i theta}, e^{-i theta})
  static ConjugacyClassSpec sl2r_elliptic(double theta);    // exp(theta (E - F))
  static ConjugacyClassSpec sl2r_hyperbolic(double t);      // exp(t H)
  static ConjugacyClassSpec u1k(const std::vector<double>& angles);
  static ConjugacyClassSpec of_element(const Backend& b, const Mat& g);

  const Backend& backend() const { return backend_; }
  const Mat& representative() const { return rep_; }
  const std::vector<double>& fingerprint() const { return fp_; }
  const std::string& tag() const { return tag_; }
  const std::string& type() const { return type_; }
  const std::vector<double>& params() const { return params_; }
  bool central() const;
  int dimension() const;  // rank(Ad(rep) - I)
  // Canonical log of the representative (throws NotInRegularSet when the
  // class is not in the exp image, e.g. unipotent or negative hyperbolic).
  Vec orbit_coordinates() const;

 private:
  ConjugacyClassSpec(Backend b, Mat rep, std::string type, std::vector<double> params);
  Backend backend_;
  Mat rep_;
  std::string type_;
  std::vector<double> params_;
  std::vector<double> fp_;
  std::string tag_;
  Vec hint_;
};

std::vector<double> class_fingerprint(const Backend& b, const Mat& g);
std::string class_tag(const Backend& b, const Mat& g, double tol = 1e-9);
bool class_membership(const Mat& g, const ConjugacyClassSpec& c, double tol = 1e-8);

struct OrbitPoint {
  Vec Z;  // exp(Z) lies in the class
  Mat p;
};
// Z = Ad(q) log(rep), p = q rep q^-1.
OrbitPoint orbit_point(const ConjugacyClassSpec& c, const Mat& q);
OrbitPoint orbit_point(const ConjugacyClassSpec& c);

// Basis {X p - p X} of T_p C, one per column of an orthonormal basis of the
// Euclidean complement of ker(Ad p - I).
std::vector<Mat> class_tangent(const Backend& b, const Mat& p);
RMat class_chart_directions(const Backend& b, const Mat& p);

double kirillov(const Backend& b, const Vec& z, const Vec& x, const Vec& y);
double tau(const Backend& b, const Mat& p, const Vec& x, const Vec& y);
double beta_closed(const Backend& b, const Vec& z, const Vec& x, const Vec& y);
// beta_Z([X,Z],[Y,Z]) from the homotopy operator (quadrature).
double beta_quadrature(const Backend& b, const Vec& z, const Vec& x, const Vec& y);

struct TauPullbackReport {
  int trials = 0;
  double closed_vs_quadrature = 0.0;  // |beta closed - beta quadrature|
  double tau_pullback_closed = 0.0;          // |tau(dexp., dexp.) - (beta closed - kirillov)|
  double tau_pullback_quadrature = 0.0;      // same with quadrature beta
  double dexp_image = 0.0;            // ||dexp_Z [X,Z] - (Xp - pX)||
};
TauPullbackReport verify_tau_pullback(const Backend& b, const OrbitPoint& z, int trials, std::mt19937_64& rng);


struct CartanReport {
  int class_dim = 0;
  int triples = 0;
  FdConvergence dtau;   // d tau = lambda on C
  FdConvergence dbeta;  // d beta = exp^* lambda on g (supplementary, full dimension)
  double theta = 0.0;   // max | -tau_p(X,Y) - theta(X)_p(Yp - pY) |
};
CartanReport verify_cartan(const ConjugacyClassSpec& c, int trials, std::mt19937_64& rng, double h = 1e-3);

}  // namespace parcoh
