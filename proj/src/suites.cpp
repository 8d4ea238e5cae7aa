#include "parcoh/suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <set>

#include "parcoh/errors.hpp"
#include "parcoh/moduli.hpp"

namespace parcoh {

namespace {

const std::vector<std::pair<const char*, double Tolerances::*>>& double_fields() {
  static const std::vector<std::pair<const char*, double Tolerances::*>> f = {
      {"series_cutoff", &Tolerances::series_cutoff},
      {"log_residual", &Tolerances::log_residual},
      {"regular_sigma", &Tolerances::regular_sigma},
      {"rank_rel", &Tolerances::rank_rel},
      {"parabolic_residual", &Tolerances::parabolic_residual},
      {"normalization", &Tolerances::normalization},
      {"project_residual", &Tolerances::project_residual},
      {"membership", &Tolerances::membership},
      {"class_fingerprint", &Tolerances::class_fingerprint},
      {"complex_d1d0", &Tolerances::complex_d1d0},
      {"projector_idem", &Tolerances::projector_idem},
      {"pairing_dual_path", &Tolerances::pairing_dual_path},
      {"pairing_invariance", &Tolerances::pairing_invariance},
      {"beta_quadrature", &Tolerances::beta_quadrature},
      {"tau_pullback", &Tolerances::tau_pullback},
      {"theta_identity", &Tolerances::theta_identity},
      {"fd_ratio", &Tolerances::fd_ratio},
      {"fd_step", &Tolerances::fd_step},
      {"momentum", &Tolerances::momentum},
      {"thm83", &Tolerances::thm83},
      {"abelian_gram", &Tolerances::abelian_gram},
      {"nondegenerate_ratio", &Tolerances::nondegenerate_ratio},
      {"gauge_identity", &Tolerances::gauge_identity},
      {"relator_level", &Tolerances::relator_level},
  };
  return f;
}

const std::vector<std::pair<const char*, int Tolerances::*>>& int_fields() {
  static const std::vector<std::pair<const char*, int Tolerances::*>> f = {
      {"log_max_iter", &Tolerances::log_max_iter},
      {"project_max_iter", &Tolerances::project_max_iter},
  };
  return f;
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("cannot parse " + what + " '" + s + "'");
}

// Collects checks; every entry carries its tolerance.
class Checks {
 public:
  void le(const std::string& name, double value, double tol) { add(name, value, tol, "<=", value <= tol); }
  void ge(const std::string& name, double value, double tol) { add(name, value, tol, ">=", value >= tol); }
  void eq(const std::string& name, int value, int expected) {
    add(name, value, expected, "==", value == expected);
  }
  void flag(const std::string& name, bool ok) { add(name, ok ? 1 : 0, 1, "==", ok); }
  void info(const std::string& name, const json& value) { info_[name] = value; }
  void fail(const std::string& message) {
    pass_ = false;
    errors_.push_back(message);
  }
  bool pass() const { return pass_; }
  json to_json(const std::string& name) const {
    json j = {{"name", name}, {"pass", pass_}, {"checks", items_}, {"info", info_}};
    if (!errors_.empty()) j["errors"] = errors_;
    return j;
  }

 private:
  void add(const std::string& name, const json& value, const json& tol, const char* rel, bool ok) {
    items_.push_back({{"name", name}, {"value", value}, {"tolerance", tol}, {"relation", rel}, {"pass", ok}});
    pass_ = pass_ && ok;
  }
  json items_ = json::array();
  json info_ = json::object();
  json errors_ = json::array();
  bool pass_ = true;
};

struct Context {
  RunConfig cfg;
  Tolerances tol;
  Backend backend;
  SurfaceData surface;
  std::vector<ConjugacyClassSpec> classes;
};

std::uint64_t derived_seed(std::uint64_t seed, int suite, int trial) {
  return seed * 1000003ULL + static_cast<std::uint64_t>(suite) * 10007ULL + static_cast<std::uint64_t>(trial);
}

int class_dim_sum(const std::vector<ConjugacyClassSpec>& classes) {
  int s = 0;
  for (const auto& c : classes) s += c.dimension();
  return s;
}

// ---- complexes -----------------------------------------------------------

void suite_complexes(const Context& cx, Checks& ck) {
  const Tolerances& tol = cx.tol;
  double d1d0[3] = {0, 0, 0}, idem = 0, relator = 0;
  bool member = true, euler = true, direct = true;
  json dims = json::array();
  for (int t = 0; t < cx.cfg.trials; ++t) {
    const RepresentationPoint phi = relator_level_point(cx.backend, cx.surface, cx.classes, derived_seed(cx.cfg.seed, 1, t), tol);
    relator = std::max(relator, phi.relator_defect());
    for (int j = 0; j < cx.surface.boundary; ++j) member = member && class_membership(phi.z[j], cx.classes[j]);
    const TwistedComplex cs[3] = {build_absolute(phi), build_relative(phi), build_parabolic(phi, tol)};
    json row;
    for (int v = 0; v < 3; ++v) {
      d1d0[v] = std::max(d1d0[v], cs[v].defect());
      const CohomologyReport r = cohomology_dims(cs[v], tol);
      euler = euler && (r.h0 - r.h1 + r.h2 == r.c0 - r.c1 + r.c2);
      row[variant_name(cs[v].variant)] = {r.h0, r.h1, r.h2};
      if (v == 2) direct = direct && (r.z1 == z1_par_dim_direct(phi, tol));
    }
    for (const RMat& p : cs[2].projectors) idem = std::max(idem, max_abs(p * p - p));
    dims.push_back(row);
  }
  ck.le("relator_defect", relator, tol.relator_level);
  ck.flag("boundary_values_in_classes", member);
  ck.le("d1d0_absolute", d1d0[0], tol.complex_d1d0);
  ck.le("d1d0_relative", d1d0[1], tol.complex_d1d0);
  ck.le("d1d0_parabolic", d1d0[2], tol.complex_d1d0);
  ck.le("projector_idempotence", idem, tol.projector_idem);
  ck.flag("euler_characteristic", euler);
  ck.flag("z1_parabolic_matches_direct", direct);

  const SurfaceData& s = cx.surface;
  const HomologyDims rel = homology_dims(trivial_relative_chains(s), tol);
  const HomologyDims abs = homology_dims(trivial_absolute_chains(s), tol);
  // A closed surface has no peripheral part to kill H_0.
  const bool closed = s.boundary == 0;
  ck.eq("trivial_system_H0", rel.h0, closed ? 1 : 0);
  ck.eq("trivial_system_H1", rel.h1, closed ? 2 * s.genus : 2 * s.genus + s.boundary - 1);
  ck.eq("trivial_system_H2", rel.h2, 1);
  ck.eq("trivial_absolute_H2", abs.h2, s.boundary >= 1 ? 0 : 1);
  ck.info("cohomology_dims_per_point", dims);
}

// ---- pairing -------------------------------------------------------------

void suite_pairing(const Context& cx, Checks& ck) {
  const Tolerances& tol = cx.tol;
  const SurfaceData& s = cx.surface;
  const Backend& b = cx.backend;
  const int d = b.dim();
  const RepresentationPoint phi = relator_level_point(b, s, cx.classes, derived_seed(cx.cfg.seed, 2, 0), tol);
  std::mt19937_64 rng(derived_seed(cx.cfg.seed, 2, 1));
  const H1ParBasis h1 = parabolic_h1_basis(phi, tol);
  const int m = static_cast<int>(h1.basis.cols());
  ck.info("H1par", m);
  ck.le("gram_skew", m ? max_abs(h1.gram + h1.gram.transpose()) : 0.0, tol.pairing_invariance);
  ck.eq("gram_rank", h1.rank, m);
  ck.ge("gram_sigma_ratio", m ? h1.sigma_min / h1.sigma_max : 1.0, tol.nondegenerate_ratio);

  if (b.is_abelian()) {
    const int k = d;
    ck.eq("H1par_dim", m, 2 * s.genus * k);
    // Coordinate basis of the x, y slots; z-slots vanish for a torus.
    const int n = 2 * s.genus * k;
    const PairingContext ctx(phi);
    RMat gram(n, n), expected = RMat::Zero(n, n);
    const int c1 = d * s.rank();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        gram(i, j) = pairing_closed_form(ctx, Cochain1{Vec::Unit(c1, i), {}}, Cochain1{Vec::Unit(c1, j), {}}, tol);
    for (int g = 0; g < s.genus; ++g)
      for (int a = 0; a < k; ++a) {
        expected(2 * g * k + a, (2 * g + 1) * k + a) = kPairingSign;
        expected((2 * g + 1) * k + a, 2 * g * k + a) = -kPairingSign;
      }
    ck.le("abelian_gram_vs_intersection_form", max_abs(gram - expected), tol.abelian_gram);
    const RMat p = h1.basis.topRows(n);
    ck.le("abelian_gram_congruence", m ? max_abs(p.transpose() * expected * p - h1.gram) : 0.0, tol.abelian_gram);
    ck.info("pairing_sign", kPairingSign);
  } else if (is_irreducible(phi, tol)) {
    ck.eq("dimension_law", m, (2 * s.genus - 2) * d + class_dim_sum(cx.classes));
  } else {
    ck.info("dimension_law", "point is reducible; law not applicable");
  }

  const ParabolicSpaces sp = parabolic_spaces(phi, tol);
  const int z = static_cast<int>(sp.z1.cols());
  const PairingContext ctx(phi);
  const PairingContext alt(phi, build_c_alternative(s));
  const RMat d0 = build_absolute(phi).D0;
  std::normal_distribution<double> n01(0.0, 1.0);
  auto random_z1 = [&]() {
    Vec a(z);
    for (int i = 0; i < z; ++i) a(i) = n01(rng);
    return Vec(sp.z1 * a);
  };
  double dual = 0, cob = 0, shift = 0, chain = 0, norm = 0;
  const int pairs = std::max(cx.cfg.trials, 1) * 10;
  for (int t = 0; t < pairs && z > 0; ++t) {
    const Cochain1 u = solve_parabolic_data(Cochain1{random_z1(), {}}, phi, tol);
    const Cochain1 v = solve_parabolic_data(Cochain1{random_z1(), {}}, phi, tol);
    const double ref = pairing_closed_form(ctx, u, v, tol);
    if (s.boundary >= 1) {
      const GroupoidPairing gp = pairing_groupoid_detail(ctx, u, v, tol);
      dual = std::max(dual, std::abs(gp.value - ref));
      norm = std::max(norm, gp.normalization_residual);
    }
    const Vec x0 = b.random_algebra(rng);
    Cochain1 ub{u.values + d0 * x0, {}};
    cob = std::max(cob, std::abs(pairing_closed_form(ctx, ub, v, tol) - ref));
    Cochain1 us = u;
    for (int j = 0; j < s.boundary; ++j) {
      const RMat ker = null_basis(b.Ad(phi.z[j]) - RMat::Identity(d, d), tol.rank_rel);
      Vec coef(ker.cols());
      for (int i = 0; i < coef.size(); ++i) coef(i) = n01(rng);
      if (ker.cols()) us.X[j] += ker * coef;
    }
    shift = std::max(shift, std::abs(pairing_closed_form(ctx, us, v, tol) - ref));
    chain = std::max(chain, std::abs(pairing_closed_form(alt, u, v, tol) - ref));
  }
  ck.info("random_pairs", z > 0 ? pairs : 0);
  if (s.boundary >= 1) {
    ck.le("groupoid_vs_closed_form", dual, tol.pairing_dual_path);
    ck.le("groupoid_normalization", norm, tol.normalization);
  } else {
    ck.info("groupoid_vs_closed_form", "closed surface: no peripheral data");
  }
  ck.le("coboundary_invariance", cob, tol.pairing_invariance);
  ck.le("peripheral_shift_invariance", shift, tol.pairing_invariance);
  ck.le("chain_independence", chain, tol.pairing_invariance);
}

// ---- conjclass -----------------------------------------------------------

void suite_conjclass(const Context& cx, Checks& ck) {
  const Tolerances& tol = cx.tol;
  std::set<std::string> seen;
  json classes = json::array();
  double cq = 0, tp = 0, tpq = 0, img = 0, theta = 0;
  double dbeta_ratio = INFINITY, dtau_ratio = INFINITY;
  bool dtau_tested = false;
  int samples = 0;
  for (std::size_t j = 0; j < cx.classes.size(); ++j) {
    const ConjugacyClassSpec& c = cx.classes[j];
    if (!seen.insert(cx.cfg.classes[j]).second) continue;
    std::mt19937_64 rng(derived_seed(cx.cfg.seed, 3, static_cast<int>(j)));
    json entry = {{"token", cx.cfg.classes[j]}, {"tag", c.tag()}, {"dimension", c.dimension()}};
    try {
      for (int t = 0; t < cx.cfg.trials; ++t) {
        const OrbitPoint z = orbit_point(c, random_conjugator(c.backend(), rng));
        const TauPullbackReport r = verify_tau_pullback(c.backend(), z, 20, rng);
        samples += r.trials;
        cq = std::max(cq, r.closed_vs_quadrature);
        tp = std::max(tp, r.tau_pullback_closed);
        tpq = std::max(tpq, r.tau_pullback_quadrature);
        img = std::max(img, r.dexp_image);
      }
    } catch (const NotInRegularSet& e) {
      entry["tau_pullback"] = std::string("skipped: ") + e.what();
    }
    const CartanReport r = verify_cartan(c, cx.cfg.trials * 4, rng);
    theta = std::max(theta, r.theta);
    entry["triples"] = r.triples;
    if (r.triples > 0 && !r.dtau.exact) {
      dtau_tested = true;
      dtau_ratio = std::min(dtau_ratio, r.dtau.ratio);
    }
    if (!r.dbeta.exact) dbeta_ratio = std::min(dbeta_ratio, r.dbeta.ratio);
    entry["dbeta"] = {{"residual_h", r.dbeta.residual_h}, {"residual_h2", r.dbeta.residual_h2}};
    classes.push_back(entry);
  }
  ck.info("classes", classes);
  ck.info("samples", samples);
  ck.le("beta_closed_vs_quadrature", cq, tol.beta_quadrature);
  ck.le("tau_pullback_closed", tp, tol.tau_pullback);
  ck.le("tau_pullback_quadrature", tpq, tol.tau_pullback);
  ck.le("dexp_class_tangent", img, tol.tau_pullback);
  ck.le("theta_identity", theta, tol.theta_identity);
  if (dtau_tested) ck.ge("dtau_fd_ratio", dtau_ratio, tol.fd_ratio);
  else ck.info("dtau_fd_ratio", "classes have dimension <= 2: no triples, d tau = lambda holds trivially");
  if (std::isfinite(dbeta_ratio)) ck.ge("dbeta_fd_ratio", dbeta_ratio, tol.fd_ratio);
  else ck.info("dbeta_fd_ratio", "residuals at round-off level");
}

// ---- extended ------------------------------------------------------------

// Points whose Lambda is much closer to the singular set of exp than the
// class logarithms themselves have large curvature in the extended chart and
// a correspondingly large finite difference error; they are redrawn.
constexpr double kExtendedRegularity = 0.5;

double regularity_floor(const Context& cx) {
  double r = 1.0;
  for (const auto& c : cx.classes) {
    try {
      r = std::min(r, regularity(cx.backend, c.orbit_coordinates()));
    } catch (const NotInRegularSet&) {
    }
  }
  return kExtendedRegularity * r;
}

void suite_extended(const Context& cx, Checks& ck) {
  const Tolerances& tol = cx.tol;
  const int d = cx.backend.dim();
  double ratio = INFINITY, momentum = 0, worst_h = 0;
  int points = 0, chart_dim = 0;
  std::mt19937_64 rng(derived_seed(cx.cfg.seed, 4, 0));
  const double floor = regularity_floor(cx);
  ck.info("regularity_floor", floor);
  for (int attempt = 0; points < cx.cfg.trials && attempt < 20 * cx.cfg.trials; ++attempt) {
    const RepresentationPoint phi = sample_homFC(cx.backend, cx.surface, cx.classes, derived_seed(cx.cfg.seed, 4, 100 + attempt), 0.5);
    try {
      const ExtendedPoint p = extend(phi, Vec::Zero(d), tol);
      if (regularity(cx.backend, p.Lambda) < floor) continue;
      const ExtendedFormReport r = verify_extended_form(p, 4, 1e-3, rng, tol);
      if (!r.closed_exact) ratio = std::min(ratio, r.closed_ratio);
      worst_h = std::max(worst_h, r.closed_h);
      momentum = std::max(momentum, r.momentum);
      chart_dim = r.chart_dim;
      ++points;
    } catch (const NotInRegularSet&) {
    } catch (const ChartTooSmall&) {
    }
  }
  ck.eq("extended_points", points, cx.cfg.trials);
  ck.info("chart_dim", chart_dim);
  ck.info("closedness_residual_h", worst_h);
  if (std::isfinite(ratio)) ck.ge("closedness_fd_ratio", ratio, tol.fd_ratio);
  else ck.info("closedness_fd_ratio", "residuals at round-off level");
  ck.le("momentum_identity", momentum, tol.momentum);

  const RepresentationPoint phi = relator_level_point(cx.backend, cx.surface, cx.classes, derived_seed(cx.cfg.seed, 4, 1), tol);
  const RestrictionReport r = verify_restriction(phi, std::max(cx.cfg.trials, 1) * 2, rng, tol);
  ck.info("H1par", r.dim);
  ck.le("restricted_form_gram", r.gram_diff, tol.thm83);
  ck.le("restricted_form_pairs", r.pair_diff, tol.thm83);
  ck.le("restricted_form_coboundary", r.coboundary, tol.thm83);
}

// ---- duality -------------------------------------------------------------

void suite_duality(const Context& cx, Checks& ck) {
  const Tolerances& tol = cx.tol;
  bool ranks = true, comparison = true, stabilizer = true;
  json rows = json::array();
  for (int t = 0; t < cx.cfg.trials; ++t) {
    const RepresentationPoint phi = relator_level_point(cx.backend, cx.surface, cx.classes, derived_seed(cx.cfg.seed, 5, t), tol);
    const CohomologyReport rel = cohomology_dims(build_relative(phi), tol);
    const CohomologyReport abs = cohomology_dims(build_absolute(phi), tol);
    const CohomologyReport par = cohomology_dims(build_parabolic(phi, tol), tol);
    const HomologyDims hom = homology_dims(absolute_homology_chains(phi), tol);
    ranks = ranks && rel.h0 == hom.h2 && rel.h1 == hom.h1 && rel.h2 == hom.h0;
    const int image = comparison_image_rank(phi, tol);
    comparison = comparison && image == par.h1;
    stabilizer = stabilizer && abs.h0 == stabilizer_dim(phi, tol);
    rows.push_back({{"relative_cohomology", {rel.h0, rel.h1, rel.h2}},
                    {"absolute_homology", {hom.h0, hom.h1, hom.h2}},
                    {"H1par", par.h1},
                    {"comparison_rank", image}});
  }
  ck.flag("relative_cohomology_matches_absolute_homology", ranks);
  ck.flag("parabolic_equals_comparison_image", comparison);
  ck.flag("H0_equals_stabilizer", stabilizer);
  ck.info("points", rows);
  const HomologyDims triv = homology_dims(trivial_relative_chains(cx.surface), tol);
  ck.flag("fundamental_class", triv.h2 == 1);
}

const std::vector<std::pair<std::string, std::function<void(const Context&, Checks&)>>>& suite_table() {
  static const std::vector<std::pair<std::string, std::function<void(const Context&, Checks&)>>> t = {
      {"complexes", suite_complexes}, {"pairing", suite_pairing},   {"conjclass", suite_conjclass},
      {"extended", suite_extended},   {"duality", suite_duality},
  };
  return t;
}

Context make_context(const RunConfig& cfg) {
  cfg.validate();
  Context cx{cfg, cfg.tolerances(), backend_from_name(cfg.backend), SurfaceData{cfg.genus, cfg.boundary}, {}};
  cx.classes = parse_classes(cfg);
  return cx;
}

}  // namespace

// ---- RunConfig -----------------------------------------------------------

RunConfig RunConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  static const std::set<std::string> known = {"backend", "genus",     "boundary",   "classes", "seed",
                                              "trials",  "tol_scale", "tolerances", "suites"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("config: unknown key '" + k + "'");
  RunConfig c;
  try {
    if (j.contains("backend")) c.backend = j["backend"].get<std::string>();
    if (j.contains("genus")) c.genus = j["genus"].get<int>();
    if (j.contains("boundary")) c.boundary = j["boundary"].get<int>();
    if (j.contains("classes")) {
      c.classes.clear();
      for (const json& e : j["classes"]) c.classes.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    }
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("trials")) c.trials = j["trials"].get<int>();
    if (j.contains("tol_scale")) c.tol_scale = j["tol_scale"].get<double>();
    if (j.contains("tolerances")) c.tolerance_overrides = j["tolerances"];
    if (j.contains("suites")) c.suites = j["suites"].get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

json RunConfig::to_json() const {
  return {{"backend", backend}, {"genus", genus},         {"boundary", boundary},
          {"classes", classes}, {"seed", seed},           {"trials", trials},
          {"tol_scale", tol_scale}, {"tolerances", tolerance_overrides}, {"suites", suites}};
}

void RunConfig::validate() const {
  const Backend b = backend_from_name(backend);
  SurfaceData{genus, boundary}.validate();
  if (static_cast<int>(classes.size()) != boundary)
    throw ConfigError("expected " + std::to_string(boundary) + " class parameter(s), got " +
                      std::to_string(classes.size()));
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (!(tol_scale > 0) || !std::isfinite(tol_scale)) throw ConfigError("tol_scale must be positive");
  if (!tolerance_overrides.is_object()) throw ConfigError("tolerances must be an object");
  expanded_suites();
  tolerances();
  for (const std::string& t : classes) parse_class(b, t);
}

Tolerances RunConfig::tolerances() const {
  Tolerances t = default_tolerances().scaled(tol_scale);
  for (const auto& [k, v] : tolerance_overrides.items()) {
    bool found = false;
    for (const auto& [name, field] : double_fields())
      if (k == name) {
        if (!v.is_number()) throw ConfigError("tolerance '" + k + "' must be a number");
        t.*field = v.get<double>();
        found = true;
      }
    for (const auto& [name, field] : int_fields())
      if (k == name) {
        if (!v.is_number_integer()) throw ConfigError("tolerance '" + k + "' must be an integer");
        t.*field = v.get<int>();
        found = true;
      }
    if (!found) throw ConfigError("unknown tolerance '" + k + "'");
  }
  return t;
}

std::vector<std::string> RunConfig::expanded_suites() const {
  std::vector<std::string> out;
  for (const std::string& s : suites) {
    if (s == "all") {
      for (const auto& n : suite_names())
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
      continue;
    }
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw ConfigError("unknown suite '" + s + "'");
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  if (out.empty()) throw ConfigError("no suites selected");
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : suite_table()) v.push_back(n);
    return v;
  }();
  return names;
}

ConjugacyClassSpec parse_class(const Backend& b, const std::string& token) {
  switch (b.id()) {
    case BackendId::su2:
      return ConjugacyClassSpec::su2(parse_number(token, "su2 class angle"));
    case BackendId::sl2r: {
      const auto colon = token.find(':');
      const std::string kind = colon == std::string::npos ? "elliptic" : token.substr(0, colon);
      const std::string val = colon == std::string::npos ? token : token.substr(colon + 1);
      if (kind == "elliptic") return ConjugacyClassSpec::sl2r_elliptic(parse_number(val, "elliptic angle"));
      if (kind == "hyperbolic") return ConjugacyClassSpec::sl2r_hyperbolic(parse_number(val, "hyperbolic length"));
      throw ConfigError("sl2r class must be elliptic:<angle> or hyperbolic:<t>, got '" + token + "'");
    }
    case BackendId::u1k: {
      std::vector<double> angles;
      std::size_t start = 0;
      while (true) {
        const auto slash = token.find('/', start);
        angles.push_back(parse_number(token.substr(start, slash - start), "u1 class angle"));
        if (slash == std::string::npos) break;
        start = slash + 1;
      }
      if (static_cast<int>(angles.size()) != b.k())
        throw ConfigError("u1:" + std::to_string(b.k()) + " class needs " + std::to_string(b.k()) + " angles");
      return ConjugacyClassSpec::u1k(angles);
    }
  }
  throw ConfigError("unsupported backend");
}

std::vector<ConjugacyClassSpec> parse_classes(const RunConfig& cfg) {
  const Backend b = backend_from_name(cfg.backend);
  std::vector<ConjugacyClassSpec> out;
  for (const std::string& t : cfg.classes) out.push_back(parse_class(b, t));
  return out;
}

json run_suite(const std::string& name, const RunConfig& cfg) {
  const Context cx = make_context(cfg);
  for (const auto& [n, f] : suite_table()) {
    if (n != name) continue;
    Checks ck;
    try {
      f(cx, ck);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      ck.fail(e.what());
    }
    return ck.to_json(name);
  }
  throw ConfigError("unknown suite '" + name + "'");
}

json RunReport::to_json() const {
  json j = body;
  j["timing"] = {{"wall_seconds", wall_seconds}};
  return j;
}

RunReport cmd_report(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  RunReport r;
  r.pass = true;
  json suites = json::array();
  for (const std::string& s : cfg.expanded_suites()) {
    json j = run_suite(s, cfg);
    r.pass = r.pass && j["pass"].get<bool>();
    suites.push_back(std::move(j));
  }
  json tol = json::object();
  const Tolerances t = cfg.tolerances();
  for (const auto& [name, field] : double_fields()) tol[name] = t.*field;
  for (const auto& [name, field] : int_fields()) tol[name] = t.*field;
  r.body = {{"tool", kToolVersion},
            {"config", cfg.to_json()},
            {"seed_provenance", {{"base_seed", cfg.seed}, {"derivation", "seed * 1000003 + suite * 10007 + trial"}}},
            {"tolerances", tol},
            {"suites", suites},
            {"pass", r.pass}};
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

json cmd_fixtures() {
  json out = json::array();
  for (const Fixture& f : fixture_catalog()) out.push_back(fixture_to_json(f));
  return {{"tool", kToolVersion}, {"fixtures", out}};
}

}  // namespace parcoh
