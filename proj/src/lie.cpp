#include "parcoh/lie.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "parcoh/errors.hpp"

namespace parcoh {

namespace {

constexpr cplx I_(0.0, 1.0);

Vec realify(const Mat& m) {
  Vec v(2 * m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    v(2 * i) = m.data()[i].real();
    v(2 * i + 1) = m.data()[i].imag();
  }
  return v;
}

struct GaussNodes {
  std::vector<double> t, w;  // on [0, 1]
  GaussNodes() {
    using Rule = boost::math::quadrature::gauss<double, 32>;
    const auto& a = Rule::abscissa();
    const auto& wt = Rule::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
      // 32 is even: no node at 0, each abscissa stands for +a and -a.
      for (double s : {-1.0, 1.0}) {
        t.push_back(0.5 * (1.0 + s * a[i]));
        w.push_back(0.5 * wt[i]);
      }
    }
  }
};

const GaussNodes& gauss_nodes() {
  static const GaussNodes g;
  return g;
}

RMat series(const RMat& adz, double sign, double cutoff) {
  const int d = adz.rows();
  RMat sum = RMat::Identity(d, d);
  RMat term = RMat::Identity(d, d);
  for (int k = 1; k < 400; ++k) {
    term = (sign / (k + 1)) * (term * adz);
    sum += term;
    if (term.norm() < cutoff) break;
  }
  return sum;
}

}  // namespace

std::shared_ptr<const Backend::Data> Backend::finish(Data d) {
  d.dim = static_cast<int>(d.basis.size());
  RMat r(2 * d.n * d.n, d.dim);
  for (int i = 0; i < d.dim; ++i) r.col(i) = realify(d.basis[i]);
  d.realify_pinv = (r.transpose() * r).inverse() * r.transpose();
  d.ad_basis.assign(d.dim, RMat::Zero(d.dim, d.dim));
  for (int i = 0; i < d.dim; ++i)
    for (int j = 0; j < d.dim; ++j) {
      Mat c = d.basis[i] * d.basis[j] - d.basis[j] * d.basis[i];
      d.ad_basis[i].col(j) = d.realify_pinv * realify(c);
    }
  return std::make_shared<const Data>(std::move(d));
}

Backend Backend::su2() {
  Data d;
  d.id = BackendId::su2;
  d.n = 2;
  Mat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -I_, I_, 0;
  s3 << 1, 0, 0, -1;
  for (const Mat& s : {s1, s2, s3}) d.basis.push_back(-0.5 * I_ * s);
  d.gram = 0.5 * RMat::Identity(3, 3);
  return Backend(finish(std::move(d)));
}

Backend Backend::sl2r() {
  Data d;
  d.id = BackendId::sl2r;
  d.n = 2;
  Mat h(2, 2), e(2, 2), f(2, 2);
  h << 1, 0, 0, -1;
  e << 0, 1, 0, 0;
  f << 0, 0, 1, 0;
  d.basis = {h, e, f};
  d.gram = RMat::Zero(3, 3);
  d.gram(0, 0) = 2.0;
  d.gram(1, 2) = d.gram(2, 1) = 1.0;
  return Backend(finish(std::move(d)));
}

Backend Backend::u1k(int k) {
  Data d;
  d.id = BackendId::u1k;
  d.k = k;
  d.n = k;
  for (int m = 0; m < k; ++m) {
    Mat e = Mat::Zero(k, k);
    e(m, m) = I_;
    d.basis.push_back(e);
  }
  d.gram = RMat::Identity(k, k);
  return Backend(finish(std::move(d)));
}

std::string Backend::name() const {
  switch (id()) {
    case BackendId::su2: return "su2";
    case BackendId::sl2r: return "sl2r";
    case BackendId::u1k: return "u1^" + std::to_string(k());
  }
  return "?";
}

bool Backend::form_nondegenerate() const {
  return numerical_rank(gram(), 1e-12, false).rank == dim();
}

Mat Backend::to_matrix(const Vec& c) const {
  Mat m = Mat::Zero(d_->n, d_->n);
  for (int i = 0; i < dim(); ++i) m += c(i) * d_->basis[i];
  return m;
}

Vec Backend::coords(const Mat& x) const { return d_->realify_pinv * realify(x); }

RMat Backend::ad(const Vec& x) const {
  RMat a = RMat::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) a += x(i) * d_->ad_basis[i];
  return a;
}

RMat Backend::Ad(const Mat& g) const {
  RMat a(dim(), dim());
  if (is_abelian()) return RMat::Identity(dim(), dim());
  Mat gi = inverse(g);
  for (int j = 0; j < dim(); ++j) a.col(j) = coords(g * d_->basis[j] * gi);
  return a;
}

Mat Backend::inverse(const Mat& g) const {
  switch (id()) {
    case BackendId::su2: return g.adjoint();
    case BackendId::u1k: return g.adjoint();
    case BackendId::sl2r: {
      Mat r(2, 2);
      r << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
      return r;
    }
  }
  return g.inverse();
}

bool Backend::in_group(const Mat& g, double tol) const {
  if (g.rows() != d_->n || g.cols() != d_->n) return false;
  switch (id()) {
    case BackendId::su2:
      return (g * g.adjoint() - identity()).norm() <= tol && std::abs(g.determinant() - 1.0) <= tol;
    case BackendId::sl2r:
      return g.imag().norm() <= tol && std::abs(g.determinant() - 1.0) <= tol;
    case BackendId::u1k: {
      Mat off = g;
      off.diagonal().setZero();
      if (off.norm() > tol) return false;
      for (int m = 0; m < d_->n; ++m)
        if (std::abs(std::abs(g(m, m)) - 1.0) > tol) return false;
      return true;
    }
  }
  return false;
}

bool Backend::in_algebra(const Mat& x, double tol) const {
  if (x.rows() != d_->n || x.cols() != d_->n) return false;
  return (to_matrix(coords(x)) - x).norm() <= tol;
}

Mat Backend::exp(const Vec& z) const {
  if (is_abelian()) {
    Mat g = Mat::Zero(d_->n, d_->n);
    for (int m = 0; m < d_->n; ++m) g(m, m) = std::exp(I_ * z(m));
    return g;
  }
  Mat g = to_matrix(z).exp();
  if (id() == BackendId::sl2r) g = Mat(g.real().cast<cplx>());
  return g;
}

RMat Backend::jacobian_left(const Vec& z) const {
  if (is_abelian()) return RMat::Identity(dim(), dim());
  return series(ad(z), -1.0, default_tolerances().series_cutoff);
}

RMat Backend::jacobian_right(const Vec& z) const {
  if (is_abelian()) return RMat::Identity(dim(), dim());
  return series(ad(z), 1.0, default_tolerances().series_cutoff);
}

Mat Backend::random_group(std::mt19937_64& rng, double scale) const {
  std::normal_distribution<double> n01(0.0, 1.0);
  if (id() == BackendId::su2 && scale >= 1.0) {
    Eigen::Vector4d q;
    for (int i = 0; i < 4; ++i) q(i) = n01(rng);
    q.normalize();
    Mat g(2, 2);
    g << cplx(q(0), q(1)), cplx(q(2), q(3)), cplx(-q(2), q(3)), cplx(q(0), -q(1));
    return g;
  }
  if (id() == BackendId::u1k) {
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    Vec z(dim());
    for (int i = 0; i < dim(); ++i) z(i) = scale * ang(rng);
    return exp(z);
  }
  return exp(random_algebra(rng, scale));
}

Vec Backend::random_algebra(std::mt19937_64& rng, double scale) const {
  std::normal_distribution<double> n01(0.0, 1.0);
  Vec z(dim());
  for (int i = 0; i < dim(); ++i) z(i) = scale * n01(rng);
  return z;
}

Mat random_conjugator(const Backend& b, std::mt19937_64& rng) {
  return b.random_group(rng, b.id() == BackendId::su2 ? 1.0 : 0.5);
}

Mat dexp(const Backend& b, const Vec& z, const Vec& v) {
  return b.exp(z) * b.to_matrix(b.jacobian_left(z) * v);
}

double regularity(const Backend& b, const Vec& z) {
  Eigen::JacobiSVD<RMat> svd(b.jacobian_left(z));
  return svd.singularValues().minCoeff();
}

Vec log_regular(const Backend& b, const Mat& g, const Vec& hint, const Tolerances& tol) {
  Vec z = hint;
  const Mat id = b.identity();
  double res = (b.exp(z) - g).norm();
  for (int it = 0; it < tol.log_max_iter && res > 1e-14; ++it) {
    Mat e = b.exp(z);
    Vec rhs = b.coords(b.inverse(e) * g - id);
    RMat j = b.jacobian_left(z);
    Vec step = j.fullPivLu().solve(rhs);
    if (!step.allFinite()) break;
    z += step;
    double nres = (b.exp(z) - g).norm();
    if (step.norm() < 1e-15 * (1.0 + z.norm()) && nres <= res) {
      res = nres;
      break;
    }
    res = nres;
  }
  if (!(res <= tol.log_residual))
    throw NotInRegularSet("log_regular: Newton did not converge (residual " + std::to_string(res) + ")");
  if (regularity(b, z) <= tol.regular_sigma)
    throw NotInRegularSet("log_regular: exp is singular at the solution");
  return z;
}

double triple(const Backend& b, const Vec& a, const Vec& x, const Vec& y) {
  return b.form(a, b.bracket(x, y));
}

double cartan3(const Backend& b, const Mat& g, const Mat& u, const Mat& v, const Mat& w) {
  Mat gi = b.inverse(g);
  return 0.5 * triple(b, b.coords(gi * u), b.coords(gi * v), b.coords(gi * w));
}

double homotopy_h(const AlgebraForm& form, const Vec& z, const std::vector<Vec>& vectors) {
  const int p = static_cast<int>(vectors.size()) + 1;
  std::vector<Vec> args;
  args.reserve(p);
  args.push_back(z);
  for (const Vec& v : vectors) args.push_back(v);
  auto integrand = [&](double t) { return std::pow(t, p - 1) * form(t * z, args); };
  return boost::math::quadrature::gauss<double, 32>::integrate(integrand, 0.0, 1.0);
}

double exp_pullback_cartan3(const Backend& b, const Vec& w, const Vec& x, const Vec& y, const Vec& v) {
  RMat j = b.jacobian_left(w);
  return 0.5 * triple(b, j * x, j * y, j * v);
}

RMat beta_quadrature_matrix(const Backend& b, const Vec& z) {
  const int d = b.dim();
  RMat out = RMat::Zero(d, d);
  if (b.is_abelian()) return out;
  const auto& q = gauss_nodes();
  for (std::size_t i = 0; i < q.t.size(); ++i) {
    const double t = q.t[i];
    RMat j = b.jacobian_left(t * z);
    Vec a = j * z;
    // c(r,k) = a . [e_r, e_k]
    RMat c(d, d);
    Vec qa = b.gram() * a;
    for (int r = 0; r < d; ++r) {
      Vec er = Vec::Unit(d, r);
      c.row(r) = qa.transpose() * b.ad(er);
    }
    out += (q.w[i] * t * t * 0.5) * (j.transpose() * c * j);  // 3-form: weight t^2
  }
  return out;
}

double theta_oneform(const Backend& b, const Vec& x, const Mat& a, const Mat& v) {
  Mat ai = b.inverse(a);
  return 0.5 * b.form(x, b.coords(v * ai + ai * v));
}

}  // namespace parcoh
