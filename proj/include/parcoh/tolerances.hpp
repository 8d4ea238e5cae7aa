#pragma once

// Every numeric threshold used by the library and the verification suites.
// Suites read a Tolerances value; `scaled(k)` multiplies the check
// tolerances (not the algorithmic ones) for --tol-scale.

namespace parcoh {

struct Tolerances {
  // algorithmic
  double series_cutoff = 1e-14;       // dexp / J series truncation
  int log_max_iter = 64;
  double log_residual = 1e-10;        // exp(log g) = g
  double regular_sigma = 1e-8;        // smallest singular value of J_L
  double rank_rel = 1e-8;             // SVD rank threshold (relative)
  double parabolic_residual = 1e-8;   // (Ad z - I)X = u(z) solve
  double normalization = 1e-8;        // u~(a_j) after normalization
  int quadrature_nodes = 32;          // fixed at compile time, informative
  int project_max_iter = 200;
  double project_residual = 1e-10;

  // checks
  double membership = 1e-10;
  double class_fingerprint = 1e-8;
  double complex_d1d0 = 1e-9;
  double projector_idem = 1e-10;
  double pairing_dual_path = 1e-10;
  double pairing_invariance = 1e-10;
  double beta_quadrature = 1e-8;
  double tau_pullback = 1e-8;
  double theta_identity = 1e-10;
  double fd_ratio = 3.5;
  double fd_step = 1e-4;
  double momentum = 1e-6;
  double thm83 = 1e-9;
  double abelian_gram = 1e-12;
  double nondegenerate_ratio = 1e-6;
  double gauge_identity = 1e-12;
  double relator_level = 1e-10;

  Tolerances scaled(double k) const {
    Tolerances t = *this;
    t.membership *= k;
    t.class_fingerprint *= k;
    t.complex_d1d0 *= k;
    t.projector_idem *= k;
    t.pairing_dual_path *= k;
    t.pairing_invariance *= k;
    t.beta_quadrature *= k;
    t.tau_pullback *= k;
    t.theta_identity *= k;
    t.momentum *= k;
    t.thm83 *= k;
    t.abelian_gram *= k;
    t.gauge_identity *= k;
    t.relator_level *= k;
    return t;
  }
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace parcoh
