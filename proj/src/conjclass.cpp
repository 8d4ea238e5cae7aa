#include "parcoh/conjclass.hpp"

#include <algorithm>
#include <cmath>

#include "parcoh/errors.hpp"

namespace parcoh {


// ---- class specs --------------------------------------------------------

ConjugacyClassSpec::ConjugacyClassSpec(Backend b, Mat rep, std::string type, std::vector<double> params)
    : backend_(std::move(b)), rep_(std::move(rep)), type_(std::move(type)), params_(std::move(params)) {
  fp_ = class_fingerprint(backend_, rep_);
  tag_ = class_tag(backend_, rep_);
}

ConjugacyClassSpec ConjugacyClassSpec::su2(double theta) {
  Backend b = Backend::su2();
  Vec z(3);
  z << 0.0, 0.0, -2.0 * theta;
  ConjugacyClassSpec c(b, b.exp(z), "su2", {theta});
  c.hint_ = z;
  return c;
}

ConjugacyClassSpec ConjugacyClassSpec::sl2r_elliptic(double theta) {
  Backend b = Backend::sl2r();
  Vec z(3);
  z << 0.0, theta, -theta;
  ConjugacyClassSpec c(b, b.exp(z), "elliptic", {theta});
  c.hint_ = z;
  return c;
}

ConjugacyClassSpec ConjugacyClassSpec::sl2r_hyperbolic(double t) {
  Backend b = Backend::sl2r();
  Vec z(3);
  z << t, 0.0, 0.0;
  ConjugacyClassSpec c(b, b.exp(z), "hyperbolic", {t});
  c.hint_ = z;
  return c;
}

ConjugacyClassSpec ConjugacyClassSpec::u1k(const std::vector<double>& angles) {
  Backend b = Backend::u1k(static_cast<int>(angles.size()));
  Vec z = Eigen::Map<const Vec>(angles.data(), angles.size());
  ConjugacyClassSpec c(b, b.exp(z), "u1", angles);
  c.hint_ = z;
  return c;
}

ConjugacyClassSpec ConjugacyClassSpec::of_element(const Backend& b, const Mat& g) {
  switch (b.id()) {
    case BackendId::su2: {
      const double tr = std::clamp(g.trace().real() / 2.0, -1.0, 1.0);
      return su2(std::acos(tr));
    }
    case BackendId::u1k: {
      std::vector<double> a;
      for (int m = 0; m < b.dim(); ++m) a.push_back(std::arg(g(m, m)));
      return u1k(a);
    }
    case BackendId::sl2r: {
      const std::string tag = class_tag(b, g);
      const double tr = g.trace().real();
      if (tag.rfind("elliptic", 0) == 0) {
        const double th = std::acos(std::clamp(tr / 2.0, -1.0, 1.0));
        return sl2r_elliptic(tag == "elliptic+" ? th : -th);
      }
      if (tag == "hyperbolic+") return sl2r_hyperbolic(std::acosh(tr / 2.0));
      ConjugacyClassSpec c(b, g, tag, {tr});
      c.hint_ = Vec::Zero(3);
      return c;
    }
  }
  throw ConfigError("unknown backend");
}

bool ConjugacyClassSpec::central() const { return dimension() == 0; }

int ConjugacyClassSpec::dimension() const {
  const int d = backend_.dim();
  return numerical_rank(backend_.Ad(rep_) - RMat::Identity(d, d), 1e-8, false).rank;
}

Vec ConjugacyClassSpec::orbit_coordinates() const {
  if (backend_.id() == BackendId::sl2r && tag_.rfind("elliptic", 0) != 0 && tag_ != "hyperbolic+" &&
      tag_ != "central+")
    throw NotInRegularSet("sl2r class '" + tag_ + "' has no regular orbit point");
  return log_regular(backend_, rep_, hint_);
}

std::vector<double> class_fingerprint(const Backend& b, const Mat& g) {
  if (b.id() == BackendId::u1k) {
    std::vector<double> f;
    for (int m = 0; m < b.dim(); ++m) {
      f.push_back(g(m, m).real());
      f.push_back(g(m, m).imag());
    }
    return f;
  }
  return {g.trace().real()};
}

std::string class_tag(const Backend& b, const Mat& g, double tol) {
  if (b.id() != BackendId::sl2r) return b.name();
  const double tr = g.trace().real();
  const double skew = g(0, 1).real() - g(1, 0).real();
  if (std::abs(tr) < 2.0 - tol) return skew > 0 ? "elliptic+" : "elliptic-";
  if (std::abs(tr) > 2.0 + tol) return tr > 0 ? "hyperbolic+" : "hyperbolic-";
  const std::string sgn = tr > 0 ? "+" : "-";
  if ((g - (tr > 0 ? 1.0 : -1.0) * b.identity()).norm() < std::sqrt(tol)) return "central" + sgn;
  return std::string("parabolic") + sgn + (skew > 0 ? "+" : "-");
}

bool class_membership(const Mat& g, const ConjugacyClassSpec& c, double tol) {
  const auto f = class_fingerprint(c.backend(), g);
  const auto& f0 = c.fingerprint();
  if (f.size() != f0.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(f[i] - f0[i]) > tol) return false;
  return class_tag(c.backend(), g) == c.tag();
}

OrbitPoint orbit_point(const ConjugacyClassSpec& c, const Mat& q) {
  const Backend& b = c.backend();
  OrbitPoint o;
  o.Z = b.Ad(q) * c.orbit_coordinates();
  o.p = q * c.representative() * b.inverse(q);
  return o;
}

OrbitPoint orbit_point(const ConjugacyClassSpec& c) { return orbit_point(c, c.backend().identity()); }

RMat class_chart_directions(const Backend& b, const Mat& p) {
  const int d = b.dim();
  const RMat a = b.Ad(p) - RMat::Identity(d, d);
  return column_basis(a.transpose(), 1e-8);
}

std::vector<Mat> class_tangent(const Backend& b, const Mat& p) {
  std::vector<Mat> out;
  const RMat w = class_chart_directions(b, p);
  for (int i = 0; i < w.cols(); ++i) {
    const Mat x = b.to_matrix(w.col(i));
    out.push_back(x * p - p * x);
  }
  return out;
}

// ---- forms --------------------------------------------------------------

double kirillov(const Backend& b, const Vec& z, const Vec& x, const Vec& y) { return b.form(b.bracket(x, y), z); }

double tau(const Backend& b, const Mat& p, const Vec& x, const Vec& y) {
  const RMat adp = b.Ad(p);
  return 0.5 * (b.form(x, adp * y) - b.form(y, adp * x));
}

double beta_closed(const Backend& b, const Vec& z, const Vec& x, const Vec& y) {
  return b.form(b.bracket(z, x), y) + tau(b, b.exp(z), x, y);
}

double beta_quadrature(const Backend& b, const Vec& z, const Vec& x, const Vec& y) {
  const RMat bm = beta_quadrature_matrix(b, z);
  return b.bracket(x, z).dot(bm * b.bracket(y, z));
}

// ---- verification -------------------------------------------------------

TauPullbackReport verify_tau_pullback(const Backend& b, const OrbitPoint& o, int trials, std::mt19937_64& rng) {
  TauPullbackReport r;
  r.trials = trials;
  const int d = b.dim();
  const RMat bm = beta_quadrature_matrix(b, o.Z);
  const RMat lhs = RMat::Identity(d, d) - b.Ad(o.p);
  const Mat pinv = b.inverse(o.p);
  for (int t = 0; t < trials; ++t) {
    const Vec x = b.random_algebra(rng);
    const Vec y = b.random_algebra(rng);
    const Vec vx = b.bracket(x, o.Z);
    const Vec vy = b.bracket(y, o.Z);
    const Mat wx = dexp(b, o.Z, vx);
    const Mat wy = dexp(b, o.Z, vy);
    const Mat xm = b.to_matrix(x);
    r.dexp_image = std::max(r.dexp_image, (wx - (xm * o.p - o.p * xm)).norm());
    // Recover tau's inputs from the tangent vectors themselves.
    const Vec ax = min_norm_solve(lhs, b.coords(wx * pinv), 1e-10);
    const Vec ay = min_norm_solve(lhs, b.coords(wy * pinv), 1e-10);
    const double t_val = tau(b, o.p, ax, ay);
    const double closed = beta_closed(b, o.Z, x, y);
    const double quad = vx.dot(bm * vy);
    const double omega = kirillov(b, o.Z, x, y);
    r.closed_vs_quadrature = std::max(r.closed_vs_quadrature, std::abs(closed - quad));
    r.tau_pullback_closed = std::max(r.tau_pullback_closed, std::abs(t_val - (closed - omega)));
    r.tau_pullback_quadrature = std::max(r.tau_pullback_quadrature, std::abs(t_val - (quad - omega)));
  }
  return r;
}

CartanReport verify_cartan(const ConjugacyClassSpec& c, int trials, std::mt19937_64& rng, double h) {
  const Backend& b = c.backend();
  const int d = b.dim();
  CartanReport r;
  r.class_dim = c.dimension();
  r.triples = r.class_dim * (r.class_dim - 1) * (r.class_dim - 2) / 6;
  double dtau_h = 0, dtau_h2 = 0, dbeta_h = 0, dbeta_h2 = 0;
  for (int t = 0; t < trials; ++t) {
    const Mat q = random_conjugator(b, rng);
    const Mat p = q * c.representative() * b.inverse(q);

    for (int k = 0; k < 4; ++k) {
      const Vec x = b.random_algebra(rng);
      const Vec y = b.random_algebra(rng);
      const Mat ym = b.to_matrix(y);
      const double lhs = -tau(b, p, x, y);
      const double rhs = theta_oneform(b, x, p, ym * p - p * ym);
      r.theta = std::max(r.theta, std::abs(lhs - rhs));
    }

    // d tau = lambda in the chart s -> exp(xi) p exp(-xi), xi = W s.
    const RMat w = class_chart_directions(b, p);
    const int m = static_cast<int>(w.cols());
    auto tau_chart = [&](const Vec& s) {
      const Vec xi = w * s;
      const Mat e = b.exp(xi);
      const Mat cs = e * p * b.inverse(e);
      const RMat a = b.jacobian_right(xi) * w;
      RMat out(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out(i, j) = tau(b, cs, a.col(i), a.col(j));
      return out;
    };
    std::vector<Mat> tang;
    for (int i = 0; i < m; ++i) {
      const Mat wi = b.to_matrix(w.col(i));
      tang.push_back(wi * p - p * wi);
    }
    auto lam_c = [&](int i, int j, int k) { return cartan3(b, p, tang[i], tang[j], tang[k]); };
    if (m >= 3) {
      dtau_h = std::max(dtau_h, dform_residual(m, tau_chart, lam_c, h));
      dtau_h2 = std::max(dtau_h2, dform_residual(m, tau_chart, lam_c, h / 2));
    }

    // d beta = exp^* lambda on the whole algebra at an orbit point over p.
    if (d >= 3 && !b.is_abelian()) {
      Vec z;
      try {
        z = orbit_point(c, q).Z;
      } catch (const NotInRegularSet&) {
        continue;
      }
      auto beta_at = [&](const Vec& s) { return RMat(beta_quadrature_matrix(b, z + s)); };
      auto lam_g = [&](int i, int j, int k) {
        return exp_pullback_cartan3(b, z, Vec::Unit(d, i), Vec::Unit(d, j), Vec::Unit(d, k));
      };
      dbeta_h = std::max(dbeta_h, dform_residual(d, beta_at, lam_g, h));
      dbeta_h2 = std::max(dbeta_h2, dform_residual(d, beta_at, lam_g, h / 2));
    }
  }
  r.dtau = fd_convergence(dtau_h, dtau_h2);
  r.dbeta = fd_convergence(dbeta_h, dbeta_h2);
  return r;
}

}  // namespace parcoh
