#pragma once

#include <map>
#include <utility>
#include <vector>

#include "jetmorse/intersection_form.hpp"
#include "jetmorse/rational.hpp"

namespace jetmorse {

/// Degree-2 class alpha * c_1^2 + beta * c_2 on the base surface.
struct BaseClass {
  Rational c1sq;
  Rational c2;
  friend bool operator==(const BaseClass&, const BaseClass&) = default;
};

/// Element of the Chow ring of X_j (tensored with Q), j = level().
///
/// Monomials are u_1^{e_1} ... u_j^{e_j} c_1^{f} c_2^{g}, stored as exponent
/// vectors (e_1, ..., e_j, f, g). Monomials of complex degree > j + 2, or with
/// base degree f + 2g > 2, vanish and are never stored.
class TowerRingElement {
 public:
  using TermMap = std::map<Exponent, Rational>;

  explicit TowerRingElement(int level);

  static TowerRingElement constant(int level, const Rational& c);
  static TowerRingElement u(int level, int j);
  static TowerRingElement c1(int level);
  static TowerRingElement c2(int level);

  [[nodiscard]] int level() const { return level_; }
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] Rational coefficient(const Exponent& e) const;

  void add_term(const Exponent& e, const Rational& c);

  TowerRingElement& operator+=(const TowerRingElement& o);
  TowerRingElement& operator-=(const TowerRingElement& o);
  TowerRingElement& operator*=(const Rational& c);
  friend TowerRingElement operator+(TowerRingElement a, const TowerRingElement& b) { return a += b; }
  friend TowerRingElement operator-(TowerRingElement a, const TowerRingElement& b) { return a -= b; }
  friend TowerRingElement operator-(TowerRingElement a) { return a *= Rational(-1); }
  friend TowerRingElement operator*(const TowerRingElement& a, const TowerRingElement& b);
  friend TowerRingElement operator*(TowerRingElement a, const Rational& c) { return a *= c; }
  friend TowerRingElement operator*(const Rational& c, TowerRingElement a) { return a *= c; }
  friend bool operator==(const TowerRingElement&, const TowerRingElement&) = default;

  [[nodiscard]] TowerRingElement pow(unsigned e) const;

  /// Same class viewed on a higher level of the tower (pullback).
  [[nodiscard]] TowerRingElement lift(int to_level) const;

  [[nodiscard]] std::string to_string() const;

 private:
  int level_;
  TermMap terms_;
};

/// Relations of the tower X_k -> ... -> X_0 = X of projectivized rank-2 bundles.
///
/// V_0 = T_X; V_j is an extension of O_{X_j}(-1) by the relative tangent bundle,
/// and u_j = c_1(O_{X_j}(1)) satisfies u_j^2 + c_1(V_{j-1}) u_j + c_2(V_{j-1}) = 0.
/// The relation tables are built in the constructor and read-only afterwards.
class TowerRing {
 public:
  explicit TowerRing(int max_level);

  [[nodiscard]] int max_level() const { return max_level_; }

  /// (c_1(V_j), c_2(V_j)) as level-j elements, built from the Whitney formula
  /// and not reduced.
  [[nodiscard]] std::pair<TowerRingElement, TowerRingElement> chern_of_level(int j) const;

  /// Normal form: every u_j exponent at most 1.
  [[nodiscard]] TowerRingElement reduce(const TowerRingElement& e) const;

  /// Fiber integration along X_j -> X_{j-1}: writes each u_j^m as
  /// A_m u_j + B_m and keeps A_m (pi_* u_j = 1, pi_* 1 = 0).
  [[nodiscard]] TowerRingElement pushforward(const TowerRingElement& e) const;

  /// Degree of a top-dimensional class, pushed down to the surface.
  [[nodiscard]] BaseClass integrate(const TowerRingElement& e) const;

  /// u_j^m = A u_j + B with A, B of level j-1.
  [[nodiscard]] const std::pair<TowerRingElement, TowerRingElement>& power_relation(int j, unsigned m) const;

 private:
  int max_level_;
  std::vector<TowerRingElement> c1_;  // c1_[j] = c_1(V_j), level j
  std::vector<TowerRingElement> c2_;
  // powers_[j][m] = (A_m, B_m) for u_j^m, m = 0..max_level+2.
  std::vector<std::vector<std::pair<TowerRingElement, TowerRingElement>>> powers_;
};

/// Expands (a_1 u_1 + ... + a_k u_k)^{k+2} symbolically in a and pushes every
/// monomial down the tower.
[[nodiscard]] IntersectionForm intersection_polynomials(int k);

}  // namespace jetmorse
