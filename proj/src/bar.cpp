#include "parcoh/bar.hpp"

#include "parcoh/errors.hpp"

namespace parcoh {

void BarChain2::add(const Word& a, const Word& b, double c) {
  if (a.empty() || b.empty() || c == 0.0) return;
  auto [it, inserted] = cells_.emplace(Cell{a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) cells_.erase(it);
  }
}

void BarChain2::add(const BarChain2& o, double scale) {
  for (const auto& [cell, c] : o.cells_) add(cell.first, cell.second, scale * c);
}

BarChain2 BarChain2::map_words(const std::function<Word(const Word&)>& f) const {
  BarChain2 out;
  for (const auto& [cell, c] : cells_) out.add(f(cell.first), f(cell.second), c);
  return out;
}

GroupRingElement bar_boundary(const BarChain2& ch) {
  GroupRingElement out;
  auto put = [&](const Word& w, double c) {
    if (!w.empty()) out.add(w, c);
  };
  for (const auto& [cell, c] : ch.cells()) {
    put(cell.second, c);
    put(cell.first * cell.second, -c);
    put(cell.first, c);
  }
  return out;
}

BarChain2 telescope(const Word& w) {
  BarChain2 t;
  const auto letters = w.letters();
  Word prefix;
  for (std::size_t k = 0; k + 1 < letters.size(); ++k) {
    prefix *= Word::of(letters[k].first, letters[k].second);
    t.add(prefix, Word::of(letters[k + 1].first, letters[k + 1].second), 1.0);
  }
  return t;
}

namespace {

BarChain2 inverse_pairs(const SurfaceData& s) {
  BarChain2 ch;
  for (int j = 1; j <= s.genus; ++j) {
    ch.add(Word::of(gx(j)), Word::of(gx(j), -1), 1.0);
    ch.add(Word::of(gy(j)), Word::of(gy(j), -1), 1.0);
  }
  return ch;
}

}  // namespace

BarChain2 build_c(const SurfaceData& s) {
  BarChain2 c;
  c.add(telescope(relator(s)), -1.0);
  c.add(inverse_pairs(s));
  return c;
}

BarChain2 build_c_alternative(const SurfaceData& s) {
  BarChain2 c;
  c.add(telescope(commutator_part(s)), -1.0);
  c.add(inverse_pairs(s));
  const Word r = relator(s);
  Word left = r;  // r z_n^-1 ... z_{k+1}^-1
  for (int k = s.boundary; k >= 1; --k) {
    c.add(left, Word::of(gz(k), -1), 1.0);
    left *= Word::of(gz(k), -1);
  }
  for (int k = 1; k <= s.boundary; ++k) c.add(Word::of(gz(k)), Word::of(gz(k), -1), -1.0);
  return c;
}

BarChain2 lift_c_tilde(const BarChain2& c, const SurfaceData& s) {
  BarChain2 out = c.map_words([](const Word& w) { return z_to_groupoid(w); });
  for (int j = 1; j <= s.boundary; ++j) {
    const Word g = Word::of(ggamma(j));
    const Word gi = Word::of(ggamma(j), -1);
    const Word ga_ = g * Word::of(ga(j));
    out.add(gi, ga_, 1.0);
    out.add(ga_, gi, -1.0);
  }
  return out;
}

GroupRingElement expected_boundary_c(const SurfaceData& s) {
  GroupRingElement e = GroupRingElement::of(relator(s));
  for (int j = 1; j <= s.boundary; ++j) e.add(Word::of(gz(j)), -1.0);
  return e;
}

GroupRingElement expected_boundary_c_tilde(const SurfaceData& s) {
  GroupRingElement e = GroupRingElement::of(groupoid_relator(s));
  for (int j = 1; j <= s.boundary; ++j) e.add(Word::of(ga(j)), -1.0);
  return e;
}

// ---- cocycles -----------------------------------------------------------

WordCocycle::WordCocycle(const Assignment& as, const std::map<Gen, Vec>& gen_values)
    : backend_(as.backend()), u_(gen_values) {
  for (const auto& [g, m] : as.values()) {
    ad_[g] = backend_.Ad(m);
    ad_inv_[g] = backend_.Ad(backend_.inverse(m));
  }
}

void WordCocycle::walk(const Word& w, Vec* val, RMat* ad) const {
  const int d = backend_.dim();
  RMat p = RMat::Identity(d, d);
  Vec v = Vec::Zero(d);
  for (const auto& [g, e] : w.letters()) {
    auto it = ad_.find(g);
    if (it == ad_.end()) throw UnboundGenerator("no value bound for generator " + g.str());
    const Vec* ug = nullptr;
    if (val) {
      auto ut = u_.find(g);
      if (ut == u_.end()) throw UnboundGenerator("cocycle has no value on " + g.str());
      ug = &ut->second;
    }
    if (e > 0) {
      if (val) v += p * *ug;
      p = p * it->second;
    } else {
      p = p * ad_inv_.at(g);
      if (val) v -= p * *ug;
    }
  }
  if (val) *val = v;
  if (ad) *ad = p;
}

Vec WordCocycle::value(const Word& w) const {
  Vec v;
  walk(w, &v, nullptr);
  return v;
}

RMat WordCocycle::Ad(const Word& w) const {
  RMat a;
  walk(w, nullptr, &a);
  return a;
}

double cup_eval(const BarChain2& ch, const WordCocycle& u, const WordCocycle& v) {
  const Backend& b = u.backend();
  double s = 0.0;
  for (const auto& [cell, c] : ch.cells()) s += c * b.form(u.value(cell.first), u.Ad(cell.first) * v.value(cell.second));
  return s;
}

RMat word_value_matrix(const Word& w, const std::vector<Gen>& slots, const Assignment& as) {
  const Backend& b = as.backend();
  const int d = b.dim();
  std::map<Gen, int> pos;
  for (std::size_t i = 0; i < slots.size(); ++i) pos[slots[i]] = static_cast<int>(i);
  RMat m = RMat::Zero(d, d * slots.size());
  RMat p = RMat::Identity(d, d);
  for (const auto& [g, e] : w.letters()) {
    auto it = pos.find(g);
    const RMat adg = b.Ad(as.at(g));
    if (e > 0) {
      if (it != pos.end()) m.block(0, it->second * d, d, d) += p;
      p = p * adg;
    } else {
      p = p * adg.inverse();
      if (it != pos.end()) m.block(0, it->second * d, d, d) -= p;
    }
  }
  return m;
}

RMat cup_matrix(const BarChain2& ch, const std::vector<Gen>& slots, const Assignment& as) {
  const Backend& b = as.backend();
  const int n = b.dim() * static_cast<int>(slots.size());
  RMat k = RMat::Zero(n, n);
  for (const auto& [cell, c] : ch.cells()) {
    const RMat ma = word_value_matrix(cell.first, slots, as);
    const RMat mb = word_value_matrix(cell.second, slots, as);
    const RMat ada = word_Ad(cell.first, as);
    k += c * ma.transpose() * b.gram() * ada * mb;
  }
  return k;
}

// ---- pairings -----------------------------------------------------------

PairingContext::PairingContext(const RepresentationPoint& p) : PairingContext(p, build_c(p.surface)) {}

PairingContext::PairingContext(const RepresentationPoint& p, BarChain2 chain)
    : phi(p), c(std::move(chain)) {
  if (p.surface.boundary > 0) c_tilde = lift_c_tilde(c, p.surface);
}

double pairing_raw(const PairingContext& ctx, const Vec& u, const Vec& v) {
  const Assignment as = ctx.phi.assignment();
  const auto slots = absolute_slots(ctx.phi.surface);
  const int d = ctx.phi.backend.dim();
  WordCocycle cu(as, generator_values(u, slots, d));
  WordCocycle cv(as, generator_values(v, slots, d));
  return cup_eval(ctx.c, cu, cv);
}

namespace {

Cochain1 with_data(const Cochain1& u, const RepresentationPoint& phi, const Tolerances& tol) {
  return u.parabolic() ? u : solve_parabolic_data(u, phi, tol);
}

}  // namespace

double pairing_closed_form(const PairingContext& ctx, const Cochain1& u0, const Cochain1& v0,
                           const Tolerances& tol) {
  const Cochain1 u = with_data(u0, ctx.phi, tol);
  const Cochain1 v = with_data(v0, ctx.phi, tol);
  const Backend& b = ctx.phi.backend;
  double s = pairing_raw(ctx, u.values, v.values) - pairing_raw(ctx, v.values, u.values);
  for (int j = 0; j < ctx.phi.surface.boundary; ++j) {
    const RMat adz = b.Ad(ctx.phi.z[j]);
    s += b.form(u.X[j], adz * v.X[j]) - b.form(v.X[j], adz * u.X[j]);
  }
  return 0.5 * s;
}

GroupoidPairing pairing_groupoid_detail(const PairingContext& ctx, const Cochain1& u0, const Cochain1& v0,
                                        const Tolerances& tol) {
  if (ctx.phi.surface.boundary < 1) throw ConfigError("groupoid pairing needs boundary circles");
  const Cochain1 u = with_data(u0, ctx.phi, tol);
  const Cochain1 v = with_data(v0, ctx.phi, tol);
  const Backend& b = ctx.phi.backend;
  const int d = b.dim();
  const auto slots = absolute_slots(ctx.phi.surface);
  const Assignment as = ctx.phi.retract_assignment();
  GroupoidPairing out;

  auto normalize = [&](const Cochain1& w) {
    std::map<Gen, Vec> vals;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const Gen g = slots[i];
      const Vec val = slot_block(w.values, static_cast<int>(i), d);
      if (g.kind != GenKind::z) {
        vals[g] = val;
        continue;
      }
      const int j = g.index;
      const Vec& xj = w.X[j - 1];
      // u~ = u o ret - dX with X(p0) = 0, X(p_j) = X_j and
      // dX(w) = Ad(w) X(end) - X(start).
      const Vec aval = val - (b.Ad(ctx.phi.z[j - 1]) * xj - xj);
      out.normalization_residual = std::max(out.normalization_residual, aval.norm());
      vals[ga(j)] = aval;
      vals[ggamma(j)] = -xj;
    }
    return WordCocycle(as, vals);
  };

  const WordCocycle cu = normalize(u);
  const WordCocycle cv = normalize(v);
  if (out.normalization_residual > tol.normalization)
    throw NormalizationFailed("normalized cocycle does not vanish on a boundary loop (residual " +
                              std::to_string(out.normalization_residual) + ")");
  out.raw_uv = cup_eval(ctx.c_tilde, cu, cv);
  out.raw_vu = cup_eval(ctx.c_tilde, cv, cu);
  out.value = 0.5 * (out.raw_uv - out.raw_vu);
  return out;
}

double pairing_groupoid(const PairingContext& ctx, const Cochain1& u, const Cochain1& v, const Tolerances& tol) {
  return pairing_groupoid_detail(ctx, u, v, tol).value;
}

}  // namespace parcoh
