#include "parcoh/moduli.hpp"

#include <cmath>

#include "parcoh/errors.hpp"
#include "parcoh/fd.hpp"

namespace parcoh {

namespace {

RMat tau_matrix(const Backend& b, const Mat& p) {
  const RMat ga = b.gram() * b.Ad(p);
  return 0.5 * (ga - ga.transpose());
}

// Block-stacked linear map chart velocity -> u at the chart centre.
RMat velocity_map(const RepresentationPoint& phi, const std::vector<RMat>& w) {
  const int d = phi.backend.dim();
  const int g = phi.surface.genus;
  int n = 2 * g * d;
  for (const RMat& wj : w) n += static_cast<int>(wj.cols());
  RMat l = RMat::Zero(d * phi.surface.rank(), n);
  l.topLeftCorner(2 * g * d, 2 * g * d).setIdentity();
  int col = 2 * g * d;
  for (int j = 0; j < phi.surface.boundary; ++j) {
    const RMat a = RMat::Identity(d, d) - phi.backend.Ad(phi.z[j]);
    l.block((2 * g + j) * d, col, d, w[j].cols()) = a * w[j];
    col += static_cast<int>(w[j].cols());
  }
  return l;
}

}  // namespace

// ---- sampling ------------------------------------------------------------

RepresentationPoint sample_homFC(const Backend& b, const SurfaceData& s,
                                 const std::vector<ConjugacyClassSpec>& classes,
                                 std::uint64_t seed, double scale) {
  if (static_cast<int>(classes.size()) != s.boundary)
    throw ConfigError("need one conjugacy class per boundary circle");
  std::mt19937_64 rng(seed);
  RepresentationPoint phi(b, s);
  for (int i = 0; i < s.genus; ++i) {
    phi.x[i] = b.random_group(rng, scale);
    phi.y[i] = b.random_group(rng, scale);
  }
  for (int j = 0; j < s.boundary; ++j) {
    if (!classes[j].backend().same_as(b)) throw ConfigError("classes use different backends");
    const Mat q = b.random_group(rng, scale);
    phi.z[j] = q * classes[j].representative() * b.inverse(q);
  }
  return phi;
}

RepresentationPoint constructed_solution(const Backend& b, const SurfaceData& s, std::mt19937_64& rng, double scale) {
  if (s.boundary < 1) throw ConfigError("constructed solutions need a boundary circle");
  RepresentationPoint phi(b, s);
  for (int i = 0; i < s.genus; ++i) {
    phi.x[i] = b.random_group(rng, scale);
    phi.y[i] = b.random_group(rng, scale);
  }
  for (int j = 0; j + 1 < s.boundary; ++j) phi.z[j] = b.random_group(rng, scale);
  Word partial = commutator_part(s);
  for (int j = 1; j < s.boundary; ++j) partial *= Word::of(gz(j));
  phi.z[s.boundary - 1] = b.inverse(word_eval(partial, phi.assignment()));
  return phi;
}

RepresentationPoint project_to_relator_level(const RepresentationPoint& phi0, const Mat& target,
                                             const Tolerances& tol, ProjectionStats* stats) {
  const Backend& b = phi0.backend;
  const int d = b.dim();
  const Mat tinv = b.inverse(target);
  RepresentationPoint cur = phi0;
  auto defect = [&](const RepresentationPoint& p) { return (p.relator_value() * tinv - b.identity()).norm(); };
  double res = defect(cur);
  int it = 0;
  for (; it < tol.project_max_iter && res > tol.project_residual; ++it) {
    const Mat e = cur.relator_value() * tinv;
    Vec rho;
    try {
      rho = log_regular(b, e, Vec::Zero(d), tol);
    } catch (const NotInRegularSet&) {
      rho = b.coords(e - b.identity());
    }
    std::vector<RMat> w;
    for (const Mat& z : cur.z) w.push_back(class_chart_directions(b, z));
    const RMat jac = build_absolute(cur).D1 * velocity_map(cur, w);
    const Vec step = -min_norm_solve(jac, rho, tol.rank_rel);
    const int rank = numerical_rank(jac, tol.rank_rel, false).rank;
    const double unreachable = (jac * step + rho).norm();
    if (rank < d && unreachable > tol.project_residual && step.norm() < 1e-14)
      throw ObstructedClasses("relator map has rank " + std::to_string(rank) + " < " + std::to_string(d) +
                                  " and the defect is outside its image",
                              res);

    auto moved = [&](double alpha) {
      RepresentationPoint p = cur;
      int off = 0;
      for (int i = 0; i < cur.surface.genus; ++i) {
        p.x[i] = b.exp(alpha * step.segment(off, d)) * p.x[i];
        p.y[i] = b.exp(alpha * step.segment(off + d, d)) * p.y[i];
        off += 2 * d;
      }
      for (int j = 0; j < cur.surface.boundary; ++j) {
        const Vec zeta = w[j] * (alpha * step.segment(off, w[j].cols()));
        const Mat q = b.exp(zeta);
        p.z[j] = q * p.z[j] * b.inverse(q);
        off += static_cast<int>(w[j].cols());
      }
      return p;
    };
    double alpha = 1.0;
    RepresentationPoint next = moved(alpha);
    double nres = defect(next);
    while (nres > (1.0 - 1e-4 * alpha) * res && alpha > 1e-8) {
      alpha *= 0.5;
      next = moved(alpha);
      nres = defect(next);
    }
    if (nres >= res) {
      if (rank < d)
        throw ObstructedClasses("relator map lost rank (" + std::to_string(rank) + ") and no descent step exists",
                                res);
      break;
    }
    cur = std::move(next);
    res = nres;
  }
  if (stats) {
    stats->iterations = it;
    stats->residual = res;
  }
  if (res > tol.project_residual)
    throw NoConvergence("projection to the relator level stalled at residual " + std::to_string(res), res);
  return cur;
}

RepresentationPoint relator_level_point(const Backend& b, const SurfaceData& s,
                                        const std::vector<ConjugacyClassSpec>& classes,
                                        std::uint64_t seed, const Tolerances& tol) {
  const double scale = b.id() == BackendId::su2 ? 1.0 : 0.5;
  std::string last;
  bool obstructed = false;
  for (int attempt = 0; attempt < 12; ++attempt) {
    RepresentationPoint phi = sample_homFC(b, s, classes, seed + 7919ULL * attempt, scale);
    try {
      return project_to_relator_level(phi, phi.backend.identity(), tol);
    } catch (const NoConvergence& e) {
      last = e.what();
    } catch (const ObstructedClasses& e) {
      // A rank drop at one start does not rule out the others.
      last = e.what();
      obstructed = true;
    }
  }
  if (obstructed) throw ObstructedClasses("no relator-level point found: " + last, NAN);
  throw NoConvergence("no relator-level point found: " + last, NAN);
}

ExtendedPoint extend(const RepresentationPoint& phi, const Vec& hint, const Tolerances& tol) {
  return ExtendedPoint{phi, log_regular(phi.backend, phi.relator_value(), hint, tol)};
}

// ---- chart ---------------------------------------------------------------

HomChart::HomChart(const RepresentationPoint& base) : base_(base) {
  const int d = base.backend.dim();
  dim_ = 2 * base.surface.genus * d;
  for (const Mat& z : base.z) {
    w_.push_back(class_chart_directions(base.backend, z));
    dim_ += static_cast<int>(w_.back().cols());
  }
}

RepresentationPoint HomChart::point(const Vec& s) const {
  const Backend& b = base_.backend;
  const int d = b.dim();
  RepresentationPoint p = base_;
  int off = 0;
  for (int i = 0; i < base_.surface.genus; ++i) {
    p.x[i] = b.exp(s.segment(off, d)) * base_.x[i];
    p.y[i] = b.exp(s.segment(off + d, d)) * base_.y[i];
    off += 2 * d;
  }
  for (int j = 0; j < base_.surface.boundary; ++j) {
    const Mat q = b.exp(w_[j] * s.segment(off, w_[j].cols()));
    p.z[j] = q * base_.z[j] * b.inverse(q);
    off += static_cast<int>(w_[j].cols());
  }
  return p;
}

std::vector<TangentVector> HomChart::tangents(const Vec& s) const {
  std::vector<TangentVector> out;
  for (int k = 0; k < dim_; ++k) out.push_back(tangent(s, Vec::Unit(dim_, k)));
  return out;
}

TangentVector HomChart::tangent(const Vec& s, const Vec& sdot) const {
  const Backend& b = base_.backend;
  const int d = b.dim();
  const RepresentationPoint p = point(s);
  TangentVector t;
  t.u = Vec::Zero(d * base_.surface.rank());
  int off = 0;
  for (int i = 0; i < 2 * base_.surface.genus; ++i) {
    t.u.segment(i * d, d) = b.jacobian_right(s.segment(off, d)) * sdot.segment(off, d);
    off += d;
  }
  for (int j = 0; j < base_.surface.boundary; ++j) {
    const int m = static_cast<int>(w_[j].cols());
    const Vec a = b.jacobian_right(w_[j] * s.segment(off, m)) * (w_[j] * sdot.segment(off, m));
    t.A.push_back(a);
    t.u.segment((2 * base_.surface.genus + j) * d, d) = a - b.Ad(p.z[j]) * a;
    off += m;
  }
  return t;
}

ExtendedChart::ExtendedChart(const ExtendedPoint& base, const Tolerances& tol)
    : chart_(base.phi), lambda0_(base.Lambda), tol_(tol) {}

ExtendedPoint ExtendedChart::point(const Vec& s) const {
  RepresentationPoint phi = chart_.point(s);
  Vec lam;
  try {
    lam = log_regular(phi.backend, phi.relator_value(), lambda0_, tol_);
  } catch (const NotInRegularSet& e) {
    throw ChartTooSmall(std::string("extended chart left the regular set: ") + e.what());
  }
  if ((lam - lambda0_).norm() > 1.0 + 10.0 * s.norm())
    throw ChartTooSmall("log branch jumped inside the chart");
  return ExtendedPoint{std::move(phi), lam};
}

RMat ExtendedChart::omega_matrix(const Vec& s) const {
  return omega_ext_gram(point(s), chart_.tangents(s));
}

// ---- forms ---------------------------------------------------------------

TangentVector tangent_from_cochain(const RepresentationPoint& phi, const Vec& u, const Tolerances& tol) {
  const int d = phi.backend.dim();
  TangentVector t;
  t.u = u;
  for (int j = 0; j < phi.surface.boundary; ++j) {
    const RMat a = RMat::Identity(d, d) - phi.backend.Ad(phi.z[j]);
    const Vec rhs = u.segment((2 * phi.surface.genus + j) * d, d);
    const Vec aj = min_norm_solve(a, rhs, tol.rank_rel);
    if ((a * aj - rhs).norm() > tol.parabolic_residual)
      throw NotParabolic("tangent z-slot is not tangent to the class of z" + std::to_string(j + 1));
    t.A.push_back(aj);
  }
  return t;
}

double omega_c(const RepresentationPoint& phi, const Vec& u, const Vec& v) {
  const RMat k = cup_matrix(build_c(phi.surface), absolute_slots(phi.surface), phi.assignment());
  return 0.5 * (u.dot(k * v) - v.dot(k * u));
}

Vec lambda_dot(const ExtendedPoint& p, const Vec& u) {
  const RMat jr = p.phi.backend.jacobian_right(p.Lambda);
  return jr.fullPivLu().solve(build_absolute(p.phi).D1 * u);
}

RMat omega_ext_gram(const ExtendedPoint& p, const std::vector<TangentVector>& t) {
  const Backend& b = p.phi.backend;
  const int n = static_cast<int>(t.size());
  const int c1 = p.phi.backend.dim() * p.phi.surface.rank();
  RMat u(c1, n), ld(b.dim(), n);
  for (int i = 0; i < n; ++i) u.col(i) = t[i].u;
  const RMat k = cup_matrix(build_c(p.phi.surface), absolute_slots(p.phi.surface), p.phi.assignment());
  const RMat jr = b.jacobian_right(p.Lambda);
  ld = jr.fullPivLu().solve(build_absolute(p.phi).D1 * u);
  const RMat beta = beta_quadrature_matrix(b, p.Lambda);
  RMat g = 0.5 * u.transpose() * (k - k.transpose()) * u - ld.transpose() * beta * ld;
  for (int j = 0; j < p.phi.surface.boundary; ++j) {
    RMat a(b.dim(), n);
    for (int i = 0; i < n; ++i) a.col(i) = t[i].A[j];
    g += a.transpose() * tau_matrix(b, p.phi.z[j]) * a;
  }
  return g;
}

double omega_ext(const ExtendedPoint& p, const TangentVector& U, const TangentVector& V) {
  return omega_ext_gram(p, {U, V})(0, 1);
}

Vec mu(const ExtendedPoint& p) { return p.phi.backend.gram() * p.Lambda; }

double mu_pair(const ExtendedPoint& p, const Vec& x) { return p.phi.backend.form(p.Lambda, x); }

TangentVector conjugation_generator(const RepresentationPoint& phi, const Vec& x) {
  const Backend& b = phi.backend;
  const auto slots = absolute_slots(phi.surface);
  const int d = b.dim();
  TangentVector t;
  t.u = Vec(d * slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) t.u.segment(i * d, d) = x - b.Ad(phi.value(slots[i])) * x;
  t.A.assign(phi.surface.boundary, x);
  return t;
}

ExtendedFormReport verify_extended_form(const ExtendedPoint& p, int trials, double h, std::mt19937_64& rng, const Tolerances& tol) {
  const Backend& b = p.phi.backend;
  ExtendedChart chart(p, tol);
  const int n = chart.dim();
  ExtendedFormReport r;
  r.points = 1;
  r.chart_dim = n;
  auto omega = [&](const Vec& s) { return chart.omega_matrix(s); };
  auto zero = [](int, int, int) { return 0.0; };
  const double rh = dform_residual(n, omega, zero, h);
  const double rh2 = dform_residual(n, omega, zero, h / 2);
  const FdConvergence f = fd_convergence(rh, rh2);
  r.closed_h = rh;
  r.closed_h2 = rh2;
  r.closed_ratio = f.ratio;
  r.closed_exact = f.exact;
  r.closed_constant = rh / (h * h);

  const double hm = tol.fd_step;
  std::normal_distribution<double> n01(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    const Vec x = b.random_algebra(rng);
    Vec sdot(n);
    for (int i = 0; i < n; ++i) sdot(i) = n01(rng);
    if (n) sdot.normalize();
    const TangentVector v = chart.hom().tangent(Vec::Zero(n), sdot);
    const TangentVector xh = conjugation_generator(p.phi, x);
    const double w = omega_ext(p, xh, v);
    const double dmu = (mu_pair(chart.point(hm * sdot), x) - mu_pair(chart.point(-hm * sdot), x)) / (2 * hm);
    r.momentum = std::max(r.momentum, std::abs(w + dmu));
  }
  return r;
}

H1ParBasis parabolic_h1_basis(const RepresentationPoint& phi, const Tolerances& tol) {
  const ParabolicSpaces sp = parabolic_spaces(phi, tol);
  const PairingContext ctx(phi);
  H1ParBasis out;
  out.basis = sp.h1;
  const int m = static_cast<int>(sp.h1.cols());
  std::vector<Cochain1> cs;
  for (int i = 0; i < m; ++i) cs.push_back(solve_parabolic_data(Cochain1{sp.h1.col(i), {}}, phi, tol));
  out.gram = RMat::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      out.gram(i, j) = pairing_closed_form(ctx, cs[i], cs[j], tol);
      out.gram(j, i) = -out.gram(i, j);
    }
  if (m) {
    Eigen::JacobiSVD<RMat> svd(out.gram);
    out.sigma_max = svd.singularValues()(0);
    out.sigma_min = svd.singularValues()(m - 1);
    out.rank = numerical_rank(out.gram, tol.rank_rel, false).rank;
  }
  return out;
}

RestrictionReport verify_restriction(const RepresentationPoint& phi, int trials, std::mt19937_64& rng, const Tolerances& tol) {
  RestrictionReport r;
  const H1ParBasis h1 = parabolic_h1_basis(phi, tol);
  const ParabolicSpaces sp = parabolic_spaces(phi, tol);
  const ExtendedPoint p = extend(phi, Vec::Zero(phi.backend.dim()), tol);
  const HomChart chart(phi);
  const int n = chart.dim();
  const Vec s0 = Vec::Zero(n);
  RMat u0(phi.backend.dim() * phi.surface.rank(), n);
  {
    const auto ts = chart.tangents(s0);
    for (int k = 0; k < n; ++k) u0.col(k) = ts[k].u;
  }
  // Tangent vector of the chart whose right-translated value is u.
  auto through_chart = [&](const Vec& u) {
    const Vec sdot = min_norm_solve(u0, u, tol.rank_rel);
    if ((u0 * sdot - u).norm() > tol.parabolic_residual) throw NotParabolic("cocycle is not tangent to Hom(F,G)_C");
    return chart.tangent(s0, sdot);
  };
  const PairingContext ctx(phi);

  r.dim = static_cast<int>(h1.basis.cols());
  r.rank = h1.rank;
  r.sigma_ratio = h1.sigma_max > 0 ? h1.sigma_min / h1.sigma_max : 0.0;
  std::vector<TangentVector> tb;
  for (int i = 0; i < r.dim; ++i) tb.push_back(through_chart(h1.basis.col(i)));
  if (r.dim) r.gram_diff = max_abs(omega_ext_gram(p, tb) - h1.gram);

  const int zdim = static_cast<int>(sp.z1.cols());
  std::normal_distribution<double> n01(0.0, 1.0);
  for (int t = 0; t < trials && zdim > 0; ++t) {
    Vec a(zdim), c(zdim);
    for (int i = 0; i < zdim; ++i) {
      a(i) = n01(rng);
      c(i) = n01(rng);
    }
    const Vec u = sp.z1 * a, v = sp.z1 * c;
    const double lhs = omega_ext(p, through_chart(u), through_chart(v));
    const double rhs = pairing_closed_form(ctx, Cochain1{u, {}}, Cochain1{v, {}}, tol);
    r.pair_diff = std::max(r.pair_diff, std::abs(lhs - rhs));
    const Vec x0 = phi.backend.random_algebra(rng);
    const Vec cob = build_absolute(phi).D0 * x0;
    r.coboundary = std::max(r.coboundary, std::abs(omega_ext(p, through_chart(cob), through_chart(v))));
  }
  return r;
}

// ---- groupoid ------------------------------------------------------------

GroupoidRepPoint corestrict(const RepresentationPoint& phi) {
  GroupoidRepPoint chi(phi.backend, phi.surface);
  chi.x = phi.x;
  chi.y = phi.y;
  chi.a = phi.z;
  return chi;
}

RepresentationPoint restrict_rep(const GroupoidRepPoint& chi) {
  RepresentationPoint phi(chi.backend, chi.surface);
  phi.x = chi.x;
  phi.y = chi.y;
  for (int j = 0; j < chi.surface.boundary; ++j)
    phi.z[j] = chi.gamma[j] * chi.a[j] * chi.backend.inverse(chi.gamma[j]);
  return phi;
}

GroupoidRepPoint gauge_act(const std::vector<Mat>& th, const GroupoidRepPoint& chi) {
  if (static_cast<int>(th.size()) != chi.surface.boundary + 1)
    throw ConfigError("gauge transformation needs one element per object");
  const Backend& b = chi.backend;
  GroupoidRepPoint out = chi;
  const Mat t0i = b.inverse(th[0]);
  for (int i = 0; i < chi.surface.genus; ++i) {
    out.x[i] = th[0] * chi.x[i] * t0i;
    out.y[i] = th[0] * chi.y[i] * t0i;
  }
  for (int j = 0; j < chi.surface.boundary; ++j) {
    const Mat tji = b.inverse(th[j + 1]);
    out.a[j] = th[j + 1] * chi.a[j] * tji;
    out.gamma[j] = th[0] * chi.gamma[j] * tji;
  }
  return out;
}

bool is_irreducible(const RepresentationPoint& phi, const Tolerances& tol) { return stabilizer_dim(phi, tol) == 0; }

}  // namespace parcoh
