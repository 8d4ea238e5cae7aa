#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "parcoh/bar.hpp"
#include "parcoh/conjclass.hpp"

namespace parcoh {

// Point of the extended space: phi in Hom(F,G)_C and Lambda with exp(Lambda) = r(phi).
struct ExtendedPoint {
  RepresentationPoint phi;
  Vec Lambda;
};

// Tangent vector to Hom(F,G)_C, right-translated: u(g) = g' g^-1 on
// generators, and class coordinates A_j with u(z_j) = A_j - Ad(z_j) A_j.
struct TangentVector {
  Vec u;
  std::vector<Vec> A;
};

// ---- sampling and level sets --------------------------------------------

// x, y random (Haar for su2 when scale >= 1), z_j = q_j rep_j q_j^-1.
RepresentationPoint sample_homFC(const Backend& b, const SurfaceData& s,
                                 const std::vector<ConjugacyClassSpec>& classes,
                                 std::uint64_t seed, double scale = 1.0);
// Random x, y, z_1..z_{n-1}; z_n := (prod [x,y] z_1 ... z_{n-1})^-1, so r(phi) = e.
RepresentationPoint constructed_solution(const Backend& b, const SurfaceData& s, std::mt19937_64& rng,
                                         double scale = 1.0);

struct ProjectionStats {
  int iterations = 0;
  double residual = 0.0;
};
// Damped Gauss-Newton with Armijo backtracking; x, y move by left
// multiplication, z_j by conjugation (stays in its class).
RepresentationPoint project_to_relator_level(const RepresentationPoint& phi, const Mat& target,
                                             const Tolerances& tol = default_tolerances(),
                                             ProjectionStats* stats = nullptr);
// sample_homFC followed by projection, retrying with derived seeds.
RepresentationPoint relator_level_point(const Backend& b, const SurfaceData& s,
                                        const std::vector<ConjugacyClassSpec>& classes,
                                        std::uint64_t seed, const Tolerances& tol = default_tolerances());

ExtendedPoint extend(const RepresentationPoint& phi, const Vec& hint, const Tolerances& tol = default_tolerances());

// ---- chart ---------------------------------------------------------------

// Coordinates s = (xi_x1, xi_y1, ..., zeta_1, ..., zeta_n):
//   x_i = exp(xi) x_i^0,  z_j = exp(W_j zeta) z_j^0 exp(-W_j zeta),
// W_j an orthonormal basis of the complement of ker(Ad z_j^0 - I).
class HomChart {
 public:
  explicit HomChart(const RepresentationPoint& base);
  int dim() const { return dim_; }
  const RepresentationPoint& base() const { return base_; }
  RepresentationPoint point(const Vec& s) const;
  // Tangent vectors of the coordinate directions at s (one per coordinate).
  std::vector<TangentVector> tangents(const Vec& s) const;
  TangentVector tangent(const Vec& s, const Vec& sdot) const;

 private:
  RepresentationPoint base_;
  std::vector<RMat> w_;  // per z_j
  int dim_ = 0;
};

// Extended chart: Lambda(s) = log(r(phi(s))) continued from the base Lambda.
class ExtendedChart {
 public:
  explicit ExtendedChart(const ExtendedPoint& base, const Tolerances& tol = default_tolerances());
  int dim() const { return chart_.dim(); }
  const HomChart& hom() const { return chart_; }
  ExtendedPoint point(const Vec& s) const;  // throws ChartTooSmall
  RMat omega_matrix(const Vec& s) const;    // omega_ext on coordinate directions

 private:
  HomChart chart_;
  Vec lambda0_;
  Tolerances tol_;
};

// ---- forms ---------------------------------------------------------------

TangentVector tangent_from_cochain(const RepresentationPoint& phi, const Vec& u,
                                   const Tolerances& tol = default_tolerances());
double omega_c(const RepresentationPoint& phi, const Vec& u, const Vec& v);
// Lambda' = J_R(Lambda)^-1 D1 u
Vec lambda_dot(const ExtendedPoint& p, const Vec& u);
// omega_c - beta_Lambda(Lambda'_U, Lambda'_V) + sum_j tau_{z_j}(A_j(U), A_j(V))
double omega_ext(const ExtendedPoint& p, const TangentVector& U, const TangentVector& V);
RMat omega_ext_gram(const ExtendedPoint& p, const std::vector<TangentVector>& tangents);

Vec mu(const ExtendedPoint& p);  // the dual vector Lambda . (-) in coordinates
double mu_pair(const ExtendedPoint& p, const Vec& x);

// Generator of simultaneous conjugation by exp(tX).
TangentVector conjugation_generator(const RepresentationPoint& phi, const Vec& x);

struct ExtendedFormReport {
  int points = 0;
  int chart_dim = 0;
  double closed_h = 0.0, closed_h2 = 0.0, closed_ratio = 0.0, closed_constant = 0.0;
  bool closed_exact = false;
  double momentum = 0.0;  // max |omega(X_H, V) + d(mu.X)(V)|
};
ExtendedFormReport verify_extended_form(const ExtendedPoint& p, int trials, double h, std::mt19937_64& rng,
                   const Tolerances& tol = default_tolerances());

struct H1ParBasis {
  RMat basis;  // columns in absolute C^1 coordinates
  RMat gram;   // pairing_closed_form on the basis
  int rank = 0;
  double sigma_min = 0.0, sigma_max = 0.0;
};
H1ParBasis parabolic_h1_basis(const RepresentationPoint& phi, const Tolerances& tol = default_tolerances());

struct RestrictionReport {
  int dim = 0;
  double gram_diff = 0.0;     // omega_ext Gram vs closed-form Gram on the H^1_par basis
  double pair_diff = 0.0;     // random pairs in Z^1_par
  double coboundary = 0.0;    // |omega_ext(delta X, v)|
  int rank = 0;
  double sigma_ratio = 0.0;
};
RestrictionReport verify_restriction(const RepresentationPoint& phi, int trials, std::mt19937_64& rng,
                   const Tolerances& tol = default_tolerances());

// ---- groupoid ------------------------------------------------------------

GroupoidRepPoint corestrict(const RepresentationPoint& phi);
RepresentationPoint restrict_rep(const GroupoidRepPoint& chi);
// vartheta has n + 1 entries (objects p_0..p_n).  A path w from object s to
// object t (traversal order) goes to vartheta(s) chi(w) vartheta(t)^-1.
GroupoidRepPoint gauge_act(const std::vector<Mat>& vartheta, const GroupoidRepPoint& chi);

bool is_irreducible(const RepresentationPoint& phi, const Tolerances& tol = default_tolerances());

}  // namespace parcoh
