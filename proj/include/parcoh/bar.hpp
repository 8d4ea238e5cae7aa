#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "parcoh/cohomology.hpp"

namespace parcoh {

// Formal real combination of bar cells [a|b] in the reduced normalized bar
// complex: cells with an empty slot are dropped on insertion.
class BarChain2 {
 public:
  using Cell = std::pair<Word, Word>;

  void add(const Word& a, const Word& b, double c);
  void add(const BarChain2& o, double scale = 1.0);
  BarChain2 map_words(const std::function<Word(const Word&)>& f) const;

  const std::map<Cell, double>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool operator==(const BarChain2& o) const { return cells_ == o.cells_; }

 private:
  std::map<Cell, double> cells_;
};

// d[a|b] = [b] - [ab] + [a]; 1-cells on the empty word are dropped.
GroupRingElement bar_boundary(const BarChain2& ch);

// t(w) = sum_k [w_1..w_k | w_{k+1}], so that d t(w) = sum_k [w_k] - [w].
BarChain2 telescope(const Word& w);

// d c = [r] - sum_j [z_j].
BarChain2 build_c(const SurfaceData& s);
// A second chain with the same boundary, built through r z_n^-1 ... z_k^-1.
BarChain2 build_c_alternative(const SurfaceData& s);
// z_j -> gamma_j a_j gamma_j^-1 in every slot, plus
// sum_j ([gamma_j^-1 | gamma_j a_j] - [gamma_j a_j | gamma_j^-1]).
BarChain2 lift_c_tilde(const BarChain2& c, const SurfaceData& s);

GroupRingElement expected_boundary_c(const SurfaceData& s);
GroupRingElement expected_boundary_c_tilde(const SurfaceData& s);

// The cocycle on the free group(oid) determined by its generator values,
// extended by u(ab) = u(a) + Ad(a) u(b).
class WordCocycle {
 public:
  WordCocycle(const Assignment& as, const std::map<Gen, Vec>& gen_values);
  Vec value(const Word& w) const;
  RMat Ad(const Word& w) const;
  const Backend& backend() const { return backend_; }

 private:
  void walk(const Word& w, Vec* val, RMat* ad) const;
  Backend backend_;
  std::map<Gen, Vec> u_;
  std::map<Gen, RMat> ad_, ad_inv_;
};

// sum over cells nu * u(a) . Ad(a) v(b)
double cup_eval(const BarChain2& ch, const WordCocycle& u, const WordCocycle& v);

// K with cup_eval(ch, u, v) = u^T K v for cochains stacked over `slots`.
RMat cup_matrix(const BarChain2& ch, const std::vector<Gen>& slots, const Assignment& as);
// Linear map (stacked generator values) -> u(w).
RMat word_value_matrix(const Word& w, const std::vector<Gen>& slots, const Assignment& as);

// Orientation: with the chain from build_c the u1 pairing on genus-one
// slots is kPairingSign * (u(x) v(y) - u(y) v(x)).
inline constexpr double kPairingSign = -1.0;

struct PairingContext {
  RepresentationPoint phi;
  BarChain2 c;
  BarChain2 c_tilde;

  explicit PairingContext(const RepresentationPoint& p);
  PairingContext(const RepresentationPoint& p, BarChain2 chain);
};

// <c, u cup v> for absolute cochains.
double pairing_raw(const PairingContext& ctx, const Vec& u, const Vec& v);

// 1/2 (<c,u cup v> - <c,v cup u>) + 1/2 sum_j (X_j . z_j Y_j - Y_j . z_j X_j)
double pairing_closed_form(const PairingContext& ctx, const Cochain1& u, const Cochain1& v,
                           const Tolerances& tol = default_tolerances());

struct GroupoidPairing {
  double raw_uv = 0.0;  // <c~, u~ cup v~>
  double raw_vu = 0.0;
  double value = 0.0;   // antisymmetrized
  double normalization_residual = 0.0;
};

// Extend through the retraction, normalize so u~(a_j) = 0, evaluate on c~.
GroupoidPairing pairing_groupoid_detail(const PairingContext& ctx, const Cochain1& u, const Cochain1& v,
                                        const Tolerances& tol = default_tolerances());
double pairing_groupoid(const PairingContext& ctx, const Cochain1& u, const Cochain1& v,
                        const Tolerances& tol = default_tolerances());

}  // namespace parcoh
