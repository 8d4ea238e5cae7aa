#pragma once

#include <compare>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "parcoh/lie.hpp"

namespace parcoh {

enum class GenKind { x, y, z, a, gamma };

struct Gen {
  GenKind kind;
  int index;  // 1-based
  auto operator<=>(const Gen&) const = default;
  std::string str() const;
};

inline Gen gx(int i) { return {GenKind::x, i}; }
inline Gen gy(int i) { return {GenKind::y, i}; }
inline Gen gz(int j) { return {GenKind::z, j}; }
inline Gen ga(int j) { return {GenKind::a, j}; }
inline Gen ggamma(int j) { return {GenKind::gamma, j}; }

// Freely reduced word stored as exponent runs.  Every constructor and
// product reduces eagerly.
class Word {
 public:
  struct Syllable {
    Gen gen;
    int power;
    auto operator<=>(const Syllable&) const = default;
  };

  Word() = default;
  static Word of(Gen g, int power = 1);
  static Word parse(const std::string& text);

  bool empty() const { return syl_.empty(); }
  int length() const;  // number of letters
  const std::vector<Syllable>& syllables() const { return syl_; }
  // Letters with exponent +-1, left to right.
  std::vector<std::pair<Gen, int>> letters() const;
  bool contains(Gen g) const;

  Word operator*(const Word& o) const;
  Word& operator*=(const Word& o);
  Word inverse() const;
  Word prefix(int letters) const;

  std::string str() const;
  auto operator<=>(const Word&) const = default;

 private:
  void push(Gen g, int power);
  std::vector<Syllable> syl_;
};

// Formal real combination of reduced words; zero coefficients are pruned.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  static GroupRingElement one() { return of(Word()); }
  static GroupRingElement of(const Word& w, double c = 1.0);

  void add(const Word& w, double c);
  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement scaled(double c) const;
  GroupRingElement left_mul(const Word& w) const;

  bool is_zero() const { return terms_.empty(); }
  const std::map<Word, double>& terms() const { return terms_; }
  double coefficient(const Word& w) const;
  bool operator==(const GroupRingElement& o) const { return terms_ == o.terms_; }
  std::string str() const;

 private:
  std::map<Word, double> terms_;
};

struct SurfaceData {
  int genus = 0;
  int boundary = 0;
  void validate() const;  // throws ConfigError
  int rank() const { return 2 * genus + boundary; }
  bool operator==(const SurfaceData&) const = default;
};

Word relator(const SurfaceData& s);
Word commutator_part(const SurfaceData& s);  // prod [x_j, y_j]
Word groupoid_relator(const SurfaceData& s);
Word substitute(const Word& w, const std::map<Gen, Word>& images);
Word z_to_groupoid(const Word& w);  // z_j -> gamma_j a_j gamma_j^-1

// Cochain slot orders: x1, y1, ..., x_l, y_l, then z_1..z_n (absolute) or
// gamma_1..gamma_n (relative).
std::vector<Gen> absolute_slots(const SurfaceData& s);
std::vector<Gen> relative_slots(const SurfaceData& s);
std::vector<Gen> group_alphabet(const SurfaceData& s);
std::vector<Gen> groupoid_alphabet(const SurfaceData& s);

GroupRingElement fox_derivative(const Word& w, Gen g);

// Checks w - 1 = sum_g (dw/dg)(g - 1) over the given alphabet.
bool fox_identity_holds(const Word& w, const std::vector<Gen>& alphabet);

Word random_word(const std::vector<Gen>& alphabet, int max_length, std::mt19937_64& rng);
// Random composable path in the free groupoid: x, y loops at p0, a_j loops
// at p_j, gamma_j from p0 to p_j; reads left to right in traversal order.
Word random_groupoid_path(const SurfaceData& s, int max_length, std::mt19937_64& rng);

// Values of a (group or groupoid) homomorphism on generators.
class Assignment {
 public:
  explicit Assignment(Backend b) : backend_(std::move(b)) {}
  void bind(Gen g, const Mat& m) { values_[g] = m; }
  bool bound(Gen g) const { return values_.count(g) != 0; }
  const Mat& at(Gen g) const;
  const Backend& backend() const { return backend_; }
  const std::map<Gen, Mat>& values() const { return values_; }

 private:
  Backend backend_;
  std::map<Gen, Mat> values_;
};

Mat word_eval(const Word& w, const Assignment& phi);
RMat word_Ad(const Word& w, const Assignment& phi);
RMat eval_ring(const GroupRingElement& e, const Assignment& phi);

}  // namespace parcoh
