#include "parcoh/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "parcoh/errors.hpp"

namespace parcoh {

namespace {

// Sum of coefficients: the augmentation R[pi] -> R.
double augmentation(const GroupRingElement& e) {
  double s = 0.0;
  for (const auto& [w, c] : e.terms()) s += c;
  return s;
}

GroupRingElement antipode(const GroupRingElement& e) {
  GroupRingElement r;
  for (const auto& [w, c] : e.terms()) r.add(w.inverse(), c);
  return r;
}

double margin_of(const RankInfo& r) {
  if (r.threshold <= 0) return 16.0;
  double m = 16.0;
  if (r.gap_below > 0) m = std::min(m, std::log10(r.gap_below / r.threshold));
  if (r.gap_above > 0) m = std::min(m, std::log10(r.threshold / r.gap_above));
  return m;
}

TwistedComplex fox_complex(ComplexVariant variant, const Word& rel, const std::vector<Gen>& slots,
                           const Assignment& as, const std::vector<RMat>& d0_blocks) {
  const int d = as.backend().dim();
  const int m = static_cast<int>(slots.size());
  TwistedComplex c;
  c.variant = variant;
  c.d = d;
  c.slots = slots;
  c.slot_dims.assign(m, d);
  c.D0 = RMat(m * d, d);
  c.D1 = RMat(d, m * d);
  for (int i = 0; i < m; ++i) {
    c.D0.block(i * d, 0, d, d) = d0_blocks[i];
    c.D1.block(0, i * d, d, d) = eval_ring(fox_derivative(rel, slots[i]), as);
  }
  return c;
}

}  // namespace

const char* variant_name(ComplexVariant v) {
  switch (v) {
    case ComplexVariant::absolute: return "absolute";
    case ComplexVariant::relative: return "relative";
    case ComplexVariant::parabolic: return "parabolic";
  }
  return "?";
}

double TwistedComplex::defect() const { return max_abs(D1 * D0); }

TwistedComplex build_absolute(const RepresentationPoint& phi) {
  const Assignment as = phi.assignment();
  const auto slots = absolute_slots(phi.surface);
  const int d = phi.backend.dim();
  std::vector<RMat> d0;
  for (Gen g : slots) d0.push_back(RMat::Identity(d, d) - phi.backend.Ad(as.at(g)));
  return fox_complex(ComplexVariant::absolute, relator(phi.surface), slots, as, d0);
}

TwistedComplex build_relative(const RepresentationPoint& phi) {
  if (phi.surface.boundary < 1) {
    // No peripheral subgroups: the system is the group itself.
    TwistedComplex c = build_absolute(phi);
    c.variant = ComplexVariant::relative;
    return c;
  }
  const Assignment as = phi.retract_assignment();
  const auto slots = relative_slots(phi.surface);
  const int d = phi.backend.dim();
  std::vector<RMat> d0;
  for (Gen g : slots) {
    // d_1[gamma_j] = -[p_0] after dividing out the peripheral points, so the
    // coboundary on a gamma-slot is X -> X.
    if (g.kind == GenKind::gamma) d0.push_back(RMat::Identity(d, d));
    else d0.push_back(RMat::Identity(d, d) - phi.backend.Ad(as.at(g)));
  }
  return fox_complex(ComplexVariant::relative, groupoid_relator(phi.surface), slots, as, d0);
}

TwistedComplex build_parabolic(const RepresentationPoint& phi, const Tolerances& tol) {
  TwistedComplex abs = build_absolute(phi);
  const int d = abs.d;
  std::vector<RMat> blocks;
  int total = 0;
  TwistedComplex c;
  c.variant = ComplexVariant::parabolic;
  c.d = d;
  c.slots = abs.slots;
  for (Gen g : abs.slots) {
    RMat b;
    if (g.kind == GenKind::z) {
      const RMat a = phi.backend.Ad(phi.value(g)) - RMat::Identity(d, d);
      b = column_basis(a, tol.rank_rel);
      c.projectors.push_back(b * b.transpose());
    } else {
      b = RMat::Identity(d, d);
    }
    total += static_cast<int>(b.cols());
    c.slot_dims.push_back(static_cast<int>(b.cols()));
    blocks.push_back(b);
  }
  c.embedding = RMat::Zero(abs.c1(), total);
  int col = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    c.embedding.block(i * d, col, d, blocks[i].cols()) = blocks[i];
    col += static_cast<int>(blocks[i].cols());
  }
  c.D0 = c.embedding.transpose() * abs.D0;
  c.D1 = abs.D1 * c.embedding;
  return c;
}

RMat comparison_map(const RepresentationPoint& phi) {
  const auto slots = absolute_slots(phi.surface);
  const int d = phi.backend.dim();
  const int m = static_cast<int>(slots.size());
  RMat c = RMat::Zero(m * d, m * d);
  for (int i = 0; i < m; ++i) {
    if (slots[i].kind == GenKind::z)
      c.block(i * d, i * d, d, d) = RMat::Identity(d, d) - phi.backend.Ad(phi.value(slots[i]));
    else
      c.block(i * d, i * d, d, d) = RMat::Identity(d, d);
  }
  return c;
}

CohomologyReport cohomology_dims(const TwistedComplex& c, const Tolerances& tol) {
  CohomologyReport r;
  r.variant = c.variant;
  r.c0 = c.c0();
  r.c1 = c.c1();
  r.c2 = c.c2();
  RankInfo k0 = numerical_rank(c.D0, tol.rank_rel);
  RankInfo k1 = numerical_rank(c.D1, tol.rank_rel);
  r.rank_d0 = k0.rank;
  r.rank_d1 = k1.rank;
  r.h0 = r.c0 - r.rank_d0;
  r.h1 = r.c1 - r.rank_d1 - r.rank_d0;
  r.h2 = r.c2 - r.rank_d1;
  r.z1 = r.c1 - r.rank_d1;
  r.stabilizer = r.h0;
  r.rank_margin = std::min(margin_of(k0), margin_of(k1));
  r.defect = c.defect();
  return r;
}

ChainComplex2 trivial_absolute_chains(const SurfaceData& s) {
  const Word r = relator(s);
  const auto slots = absolute_slots(s);
  ChainComplex2 c;
  c.d1 = RMat::Zero(1, slots.size());  // eps(g - 1) = 0
  c.d2 = RMat(slots.size(), 1);
  for (std::size_t i = 0; i < slots.size(); ++i) c.d2(i, 0) = augmentation(fox_derivative(r, slots[i]));
  return c;
}

ChainComplex2 trivial_relative_chains(const SurfaceData& s) {
  if (s.boundary < 1) return trivial_absolute_chains(s);
  const Word r = groupoid_relator(s);
  const auto slots = relative_slots(s);
  ChainComplex2 c;
  c.d1 = RMat::Zero(1, slots.size());
  c.d2 = RMat(slots.size(), 1);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    c.d2(i, 0) = augmentation(fox_derivative(r, slots[i]));
    if (slots[i].kind == GenKind::gamma) c.d1(0, i) = -1.0;
  }
  return c;
}

ChainComplex2 absolute_homology_chains(const RepresentationPoint& phi) {
  const Assignment as = phi.assignment();
  const Word r = relator(phi.surface);
  const auto slots = absolute_slots(phi.surface);
  const int d = phi.backend.dim();
  const int m = static_cast<int>(slots.size());
  ChainComplex2 c;
  c.d1 = RMat(d, m * d);
  c.d2 = RMat(m * d, d);
  for (int i = 0; i < m; ++i) {
    const RMat adg = phi.backend.Ad(as.at(slots[i]));
    c.d1.block(0, i * d, d, d) = adg.inverse() - RMat::Identity(d, d);
    c.d2.block(i * d, 0, d, d) = eval_ring(antipode(fox_derivative(r, slots[i])), as);
  }
  return c;
}

HomologyDims homology_dims(const ChainComplex2& c, const Tolerances& tol) {
  const int c0 = static_cast<int>(c.d1.rows());
  const int c1 = static_cast<int>(c.d1.cols());
  const int c2 = static_cast<int>(c.d2.cols());
  const int r1 = numerical_rank(c.d1, tol.rank_rel).rank;
  const int r2 = numerical_rank(c.d2, tol.rank_rel).rank;
  HomologyDims h;
  h.h0 = c0 - r1;
  h.h1 = c1 - r1 - r2;
  h.h2 = c2 - r2;
  h.fundamental_class = c2 == 1 && max_abs(c.d2) == 0.0;
  return h;
}

Vec slot_block(const Vec& u, int slot, int d) { return u.segment(slot * d, d); }

std::map<Gen, Vec> generator_values(const Vec& u, const std::vector<Gen>& slots, int d) {
  std::map<Gen, Vec> out;
  for (std::size_t i = 0; i < slots.size(); ++i) out[slots[i]] = slot_block(u, static_cast<int>(i), d);
  return out;
}

Cochain1 solve_parabolic_data(const Cochain1& u, const RepresentationPoint& phi, const Tolerances& tol) {
  const auto slots = absolute_slots(phi.surface);
  const int d = phi.backend.dim();
  Cochain1 out;
  out.values = u.values;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].kind != GenKind::z) continue;
    const RMat a = phi.backend.Ad(phi.value(slots[i])) - RMat::Identity(d, d);
    const Vec rhs = slot_block(u.values, static_cast<int>(i), d);
    Vec x = min_norm_solve(a, rhs, tol.rank_rel);
    const double res = (a * x - rhs).norm();
    if (res > tol.parabolic_residual)
      throw NotParabolic("cochain value on " + slots[i].str() + " is not in im(Ad z - I) (residual " +
                         std::to_string(res) + ")");
    out.X.push_back(x);
  }
  return out;
}

ParabolicSpaces parabolic_spaces(const RepresentationPoint& phi, const Tolerances& tol) {
  const TwistedComplex par = build_parabolic(phi, tol);
  const TwistedComplex abs = build_absolute(phi);
  ParabolicSpaces s;
  s.z1 = par.embedding * null_basis(par.D1, tol.rank_rel);
  s.b1 = column_basis(abs.D0, tol.rank_rel);
  const RMat proj = RMat::Identity(abs.c1(), abs.c1()) - s.b1 * s.b1.transpose();
  s.h1 = s.z1.cols() ? column_basis(proj * s.z1, tol.rank_rel) : RMat(abs.c1(), 0);
  return s;
}

int z1_par_dim_direct(const RepresentationPoint& phi, const Tolerances& tol) {
  const TwistedComplex abs = build_absolute(phi);
  const int d = abs.d;
  std::vector<RMat> rows{abs.D1};
  for (std::size_t i = 0; i < abs.slots.size(); ++i) {
    if (abs.slots[i].kind != GenKind::z) continue;
    const RMat a = phi.backend.Ad(phi.value(abs.slots[i])) - RMat::Identity(d, d);
    const RMat b = column_basis(a, tol.rank_rel);
    RMat sel = RMat::Zero(d, abs.c1());
    sel.block(0, i * d, d, d) = RMat::Identity(d, d) - b * b.transpose();
    rows.push_back(sel);
  }
  int total = 0;
  for (const RMat& r : rows) total += static_cast<int>(r.rows());
  RMat stacked(total, abs.c1());
  int at = 0;
  for (const RMat& r : rows) {
    stacked.middleRows(at, r.rows()) = r;
    at += static_cast<int>(r.rows());
  }
  return abs.c1() - numerical_rank(stacked, tol.rank_rel).rank;
}

int comparison_image_rank(const RepresentationPoint& phi, const Tolerances& tol) {
  const TwistedComplex abs = build_absolute(phi);
  const TwistedComplex rel = build_relative(phi);
  const RMat zrel = null_basis(rel.D1, tol.rank_rel);
  const RMat img = comparison_map(phi) * zrel;
  RMat both(abs.c1(), abs.D0.cols() + img.cols());
  both << abs.D0, img;
  return numerical_rank(both, tol.rank_rel).rank - numerical_rank(abs.D0, tol.rank_rel).rank;
}

int stabilizer_dim(const RepresentationPoint& phi, const Tolerances& tol) {
  const Backend& b = phi.backend;
  const int d = b.dim();
  std::vector<Mat> gens;
  for (const Mat& g : phi.x) gens.push_back(g);
  for (const Mat& g : phi.y) gens.push_back(g);
  for (const Mat& g : phi.z) gens.push_back(g);
  if (gens.empty()) return d;
  const int n2 = b.matrix_size() * b.matrix_size();
  RMat m(2 * n2 * gens.size(), d);
  for (int i = 0; i < d; ++i) {
    const Mat& e = b.basis()[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Mat c = gens[k] * e - e * gens[k];
      for (int q = 0; q < n2; ++q) {
        m(2 * (k * n2 + q), i) = c.data()[q].real();
        m(2 * (k * n2 + q) + 1, i) = c.data()[q].imag();
      }
    }
  }
  return d - numerical_rank(m, tol.rank_rel).rank;
}

int peripheral_dim(const RepresentationPoint& phi, const Tolerances& tol) {
  const int d = phi.backend.dim();
  int total = 0;
  for (const Mat& z : phi.z)
    total += d - numerical_rank(phi.backend.Ad(z) - RMat::Identity(d, d), tol.rank_rel).rank;
  return total;
}

}  // namespace parcoh
