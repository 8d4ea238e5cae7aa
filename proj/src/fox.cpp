#include "parcoh/fox.hpp"

#include <cstdlib>
#include <sstream>

#include "parcoh/errors.hpp"

namespace parcoh {

std::string Gen::str() const {
  const char* names[] = {"x", "y", "z", "a", "gamma"};
  return names[static_cast<int>(kind)] + std::to_string(index);
}

// ---- Word ---------------------------------------------------------------

void Word::push(Gen g, int power) {
  if (power == 0) return;
  if (!syl_.empty() && syl_.back().gen == g) {
    syl_.back().power += power;
    if (syl_.back().power == 0) syl_.pop_back();
    return;
  }
  syl_.push_back({g, power});
}

Word Word::of(Gen g, int power) {
  Word w;
  w.push(g, power);
  return w;
}

Word Word::parse(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  Word w;
  while (in >> tok) {
    if (tok == "1") continue;
    int power = 1;
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    if (caret != std::string::npos) {
      const std::string ps = tok.substr(caret + 1);
      char* end = nullptr;
      long p = std::strtol(ps.c_str(), &end, 10);
      if (ps.empty() || *end != '\0') throw ConfigError("bad exponent in word token '" + tok + "'");
      power = static_cast<int>(p);
    }
    GenKind kind;
    std::size_t digits;
    if (name.rfind("gamma", 0) == 0) {
      kind = GenKind::gamma;
      digits = 5;
    } else if (!name.empty() && (name[0] == 'x' || name[0] == 'y' || name[0] == 'z' || name[0] == 'a')) {
      kind = name[0] == 'x' ? GenKind::x : name[0] == 'y' ? GenKind::y : name[0] == 'z' ? GenKind::z : GenKind::a;
      digits = 1;
    } else {
      throw ConfigError("unknown generator in word token '" + tok + "'");
    }
    const std::string idx = name.substr(digits);
    char* end = nullptr;
    long i = std::strtol(idx.c_str(), &end, 10);
    if (idx.empty() || *end != '\0' || i < 1) throw ConfigError("bad generator index in '" + tok + "'");
    w.push({kind, static_cast<int>(i)}, power);
  }
  return w;
}

int Word::length() const {
  int n = 0;
  for (const auto& s : syl_) n += std::abs(s.power);
  return n;
}

std::vector<std::pair<Gen, int>> Word::letters() const {
  std::vector<std::pair<Gen, int>> out;
  for (const auto& s : syl_) {
    const int e = s.power > 0 ? 1 : -1;
    for (int k = 0; k < std::abs(s.power); ++k) out.emplace_back(s.gen, e);
  }
  return out;
}

bool Word::contains(Gen g) const {
  for (const auto& s : syl_)
    if (s.gen == g) return true;
  return false;
}

Word& Word::operator*=(const Word& o) {
  for (const auto& s : o.syl_) push(s.gen, s.power);
  return *this;
}

Word Word::operator*(const Word& o) const {
  Word r = *this;
  r *= o;
  return r;
}

Word Word::inverse() const {
  Word r;
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) r.push(it->gen, -it->power);
  return r;
}

Word Word::prefix(int n) const {
  Word r;
  for (const auto& s : syl_) {
    if (n <= 0) break;
    const int take = std::min(n, std::abs(s.power));
    r.push(s.gen, s.power > 0 ? take : -take);
    n -= take;
  }
  return r;
}

std::string Word::str() const {
  if (syl_.empty()) return "1";
  std::string out;
  for (const auto& s : syl_) {
    if (!out.empty()) out += ' ';
    out += s.gen.str();
    if (s.power != 1) out += "^" + std::to_string(s.power);
  }
  return out;
}

// ---- GroupRingElement ---------------------------------------------------

GroupRingElement GroupRingElement::of(const Word& w, double c) {
  GroupRingElement e;
  e.add(w, c);
  return e;
}

void GroupRingElement::add(const Word& w, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  GroupRingElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add(w, c);
  return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  return *this + o.scaled(-1.0);
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  GroupRingElement r;
  for (const auto& [u, a] : terms_)
    for (const auto& [v, b] : o.terms_) r.add(u * v, a * b);
  return r;
}

GroupRingElement GroupRingElement::scaled(double c) const {
  GroupRingElement r;
  for (const auto& [w, a] : terms_) r.add(w, a * c);
  return r;
}

GroupRingElement GroupRingElement::left_mul(const Word& w) const {
  GroupRingElement r;
  for (const auto& [u, a] : terms_) r.add(w * u, a);
  return r;
}

double GroupRingElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0.0 : it->second;
}

std::string GroupRingElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const double m = std::abs(c);
    if (m != 1.0) os << m << "*";
    os << "[" << w.str() << "]";
  }
  return os.str();
}

// ---- presentations ------------------------------------------------------

void SurfaceData::validate() const {
  if (genus < 0 || boundary < 0) throw ConfigError("genus and boundary count must be non-negative");
  if (genus == 0 && boundary < 3) throw ConfigError("genus 0 needs at least 3 boundary circles");
  if (boundary == 0 && genus < 1) throw ConfigError("closed surface needs genus >= 1");
}

Word commutator_part(const SurfaceData& s) {
  Word w;
  for (int j = 1; j <= s.genus; ++j) {
    w *= Word::of(gx(j));
    w *= Word::of(gy(j));
    w *= Word::of(gx(j), -1);
    w *= Word::of(gy(j), -1);
  }
  return w;
}

Word relator(const SurfaceData& s) {
  Word w = commutator_part(s);
  for (int j = 1; j <= s.boundary; ++j) w *= Word::of(gz(j));
  return w;
}

Word groupoid_relator(const SurfaceData& s) {
  if (s.boundary < 1) throw ConfigError("groupoid relator needs at least one boundary circle");
  return z_to_groupoid(relator(s));
}

Word substitute(const Word& w, const std::map<Gen, Word>& images) {
  Word out;
  for (const auto& syl : w.syllables()) {
    auto it = images.find(syl.gen);
    const Word base = it == images.end() ? Word::of(syl.gen) : it->second;
    const Word piece = syl.power > 0 ? base : base.inverse();
    for (int k = 0; k < std::abs(syl.power); ++k) out *= piece;
  }
  return out;
}

Word z_to_groupoid(const Word& w) {
  std::map<Gen, Word> images;
  for (const auto& syl : w.syllables())
    if (syl.gen.kind == GenKind::z) {
      const int j = syl.gen.index;
      images[syl.gen] = Word::of(ggamma(j)) * Word::of(ga(j)) * Word::of(ggamma(j), -1);
    }
  return substitute(w, images);
}

std::vector<Gen> absolute_slots(const SurfaceData& s) {
  std::vector<Gen> out;
  for (int j = 1; j <= s.genus; ++j) {
    out.push_back(gx(j));
    out.push_back(gy(j));
  }
  for (int j = 1; j <= s.boundary; ++j) out.push_back(gz(j));
  return out;
}

std::vector<Gen> relative_slots(const SurfaceData& s) {
  std::vector<Gen> out = absolute_slots(s);
  for (Gen& g : out)
    if (g.kind == GenKind::z) g.kind = GenKind::gamma;
  return out;
}

std::vector<Gen> group_alphabet(const SurfaceData& s) { return absolute_slots(s); }

std::vector<Gen> groupoid_alphabet(const SurfaceData& s) {
  std::vector<Gen> out = relative_slots(s);
  for (int j = 1; j <= s.boundary; ++j) out.push_back(ga(j));
  return out;
}

// ---- Fox calculus -------------------------------------------------------

GroupRingElement fox_derivative(const Word& w, Gen g) {
  GroupRingElement out;
  Word prefix;
  for (const auto& syl : w.syllables()) {
    if (syl.gen == g) {
      if (syl.power > 0) {
        for (int i = 0; i < syl.power; ++i) out.add(prefix * Word::of(g, i), 1.0);
      } else {
        for (int i = 1; i <= -syl.power; ++i) out.add(prefix * Word::of(g, -i), -1.0);
      }
    }
    prefix *= Word::of(syl.gen, syl.power);
  }
  return out;
}

bool fox_identity_holds(const Word& w, const std::vector<Gen>& alphabet) {
  GroupRingElement lhs = GroupRingElement::of(w) - GroupRingElement::one();
  GroupRingElement rhs;
  for (Gen g : alphabet) {
    GroupRingElement gm1 = GroupRingElement::of(Word::of(g)) - GroupRingElement::one();
    rhs = rhs + fox_derivative(w, g) * gm1;
  }
  return lhs == rhs;
}

Word random_word(const std::vector<Gen>& alphabet, int max_length, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len_d(0, max_length);
  std::uniform_int_distribution<std::size_t> gen_d(0, alphabet.size() - 1);
  std::bernoulli_distribution sign_d(0.5);
  const int target = len_d(rng);
  Word w;
  // Sample letter by letter, rejecting immediate cancellations so the
  // length is exactly `target`.
  while (w.length() < target) {
    Word next = w * Word::of(alphabet[gen_d(rng)], sign_d(rng) ? 1 : -1);
    if (next.length() > w.length()) w = next;
  }
  return w;
}

Word random_groupoid_path(const SurfaceData& s, int max_length, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len_d(0, max_length);
  const int target = len_d(rng);
  int at = 0;  // current object: 0 = p0, j = p_j
  Word w;
  int guard = 0;
  while (w.length() < target && guard++ < 100 * (max_length + 1)) {
    std::vector<std::pair<Gen, int>> moves;
    if (at == 0) {
      for (int j = 1; j <= s.genus; ++j)
        for (int e : {1, -1}) {
          moves.push_back({gx(j), e});
          moves.push_back({gy(j), e});
        }
      for (int j = 1; j <= s.boundary; ++j) moves.push_back({ggamma(j), 1});
    } else {
      moves.push_back({ga(at), 1});
      moves.push_back({ga(at), -1});
      moves.push_back({ggamma(at), -1});
    }
    std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
    auto [g, e] = moves[pick(rng)];
    Word next = w * Word::of(g, e);
    if (next.length() <= w.length()) continue;
    w = next;
    if (g.kind == GenKind::gamma) at = e > 0 ? g.index : 0;
  }
  return w;
}

// ---- evaluation ---------------------------------------------------------

const Mat& Assignment::at(Gen g) const {
  auto it = values_.find(g);
  if (it == values_.end()) throw UnboundGenerator("no value bound for generator " + g.str());
  return it->second;
}

Mat word_eval(const Word& w, const Assignment& phi) {
  const Backend& b = phi.backend();
  Mat out = b.identity();
  for (const auto& syl : w.syllables()) {
    const Mat& g = phi.at(syl.gen);
    const Mat step = syl.power > 0 ? g : b.inverse(g);
    for (int k = 0; k < std::abs(syl.power); ++k) out = out * step;
  }
  return out;
}

RMat word_Ad(const Word& w, const Assignment& phi) { return phi.backend().Ad(word_eval(w, phi)); }

RMat eval_ring(const GroupRingElement& e, const Assignment& phi) {
  const int d = phi.backend().dim();
  RMat out = RMat::Zero(d, d);
  for (const auto& [w, c] : e.terms()) out += c * word_Ad(w, phi);
  return out;
}

}  // namespace parcoh
