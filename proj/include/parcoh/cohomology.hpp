#pragma once

#include <map>
#include <vector>

#include "parcoh/rep.hpp"

namespace parcoh {

enum class ComplexVariant { absolute, relative, parabolic };
const char* variant_name(ComplexVariant v);

// C^0 --D0--> C^1 --D1--> C^2 with C^0 = C^2 = g (coordinates).
struct TwistedComplex {
  ComplexVariant variant = ComplexVariant::absolute;
  int d = 0;
  std::vector<Gen> slots;      // one C^1 block per slot
  std::vector<int> slot_dims;  // block sizes (d, except parabolic z-slots)
  RMat D0, D1;
  // parabolic only: C^1_par -> absolute C^1 (orthonormal columns) and the
  // orthogonal projectors onto h_j = im(Ad z_j - I), one per z-slot.
  RMat embedding;
  std::vector<RMat> projectors;

  int c0() const { return static_cast<int>(D0.cols()); }
  int c1() const { return static_cast<int>(D0.rows()); }
  int c2() const { return static_cast<int>(D1.rows()); }
  double defect() const;  // max |D1 D0|
};

struct CohomologyReport {
  ComplexVariant variant = ComplexVariant::absolute;
  int c0 = 0, c1 = 0, c2 = 0;
  int rank_d0 = 0, rank_d1 = 0;
  int h0 = 0, h1 = 0, h2 = 0;
  int z1 = 0;           // dim ker D1
  int stabilizer = 0;   // dim ker D0
  double rank_margin = 0.0;  // decades between kept/dropped singular values and threshold
  double defect = 0.0;
};

TwistedComplex build_absolute(const RepresentationPoint& phi);
TwistedComplex build_relative(const RepresentationPoint& phi);
TwistedComplex build_parabolic(const RepresentationPoint& phi, const Tolerances& tol = default_tolerances());

// Relative C^1 -> absolute C^1: identity on x, y; u(z_j) = (I - Ad z_j) w(gamma_j).
RMat comparison_map(const RepresentationPoint& phi);

CohomologyReport cohomology_dims(const TwistedComplex& c, const Tolerances& tol = default_tolerances());

// Chain complexes C_2 --d2--> C_1 --d1--> C_0 for homology.
struct ChainComplex2 {
  RMat d1, d2;
};
struct HomologyDims {
  int h0 = 0, h1 = 0, h2 = 0;
  bool fundamental_class = false;  // d2 = 0 on the top cell
};
ChainComplex2 trivial_absolute_chains(const SurfaceData& s);  // group presentation
ChainComplex2 trivial_relative_chains(const SurfaceData& s);  // system, peripheral part divided out
// Coefficients g as a right module (m.w = Ad(w)^-1 m).
ChainComplex2 absolute_homology_chains(const RepresentationPoint& phi);
HomologyDims homology_dims(const ChainComplex2& c, const Tolerances& tol = default_tolerances());

// A 1-cochain in absolute coordinates plus optional parabolic data X_j with
// u(z_j) = Ad(z_j) X_j - X_j.
struct Cochain1 {
  Vec values;
  std::vector<Vec> X;
  bool parabolic() const { return !X.empty(); }
};

Vec slot_block(const Vec& u, int slot, int d);
std::map<Gen, Vec> generator_values(const Vec& u, const std::vector<Gen>& slots, int d);

Cochain1 solve_parabolic_data(const Cochain1& u, const RepresentationPoint& phi,
                              const Tolerances& tol = default_tolerances());

struct ParabolicSpaces {
  RMat z1;  // orthonormal basis of Z^1_par, absolute C^1 coordinates
  RMat b1;  // orthonormal basis of im D0
  RMat h1;  // orthonormal basis of Z^1_par cap (im D0)^perp
};
ParabolicSpaces parabolic_spaces(const RepresentationPoint& phi, const Tolerances& tol = default_tolerances());

// dim Z^1_par from the kernel of [D1; (I - P_j) on z-slots], without the
// parabolic complex.
int z1_par_dim_direct(const RepresentationPoint& phi, const Tolerances& tol = default_tolerances());
// rank of H^1(rel) -> H^1(abs): rank[D0 | C Z^1_rel] - rank D0.
int comparison_image_rank(const RepresentationPoint& phi, const Tolerances& tol = default_tolerances());
// dim of {X : gXg^-1 = X for all generator values}, from commutators in the
// ambient matrix algebra.
int stabilizer_dim(const RepresentationPoint& phi, const Tolerances& tol = default_tolerances());
// sum_j dim ker(Ad z_j - I), i.e. H^0 = H^1 of the peripheral groups.
int peripheral_dim(const RepresentationPoint& phi, const Tolerances& tol = default_tolerances());

}  // namespace parcoh
