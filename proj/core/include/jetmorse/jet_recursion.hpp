#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "jetmorse/multipoly.hpp"
#include "jetmorse/rational.hpp"

namespace jetmorse {

/// Value assigned to the level-0 horizontal coefficients (alpha_{0,1}, beta_{0,1}).
///
/// kCorrected uses (1, 0), which is what the k = 1 curvature and the Chern
/// ring intersection numbers require. kLiteral uses (1, 1); it is kept only
/// so the mismatch can be reproduced and detected.
enum class BoundaryConvention { kCorrected, kLiteral };

[[nodiscard]] std::string_view to_string(BoundaryConvention c);
[[nodiscard]] BoundaryConvention parse_convention(std::string_view s);

/// Weight (a_1, ..., a_k) of the line bundle O_{X_k}(a). Indexing is 1-based
/// through at(); entries() exposes the underlying 0-based storage.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<Rational> a);
  WeightVector(std::initializer_list<Rational> a) : WeightVector(std::vector<Rational>(a)) {}

  /// "2,1" or "18, 6, 2, 1"; entries may be fractions.
  static WeightVector parse(std::string_view text);

  [[nodiscard]] int order() const { return static_cast<int>(a_.size()); }
  [[nodiscard]] const Rational& at(int j) const { return a_.at(static_cast<std::size_t>(j - 1)); }
  [[nodiscard]] const std::vector<Rational>& entries() const { return a_; }
  [[nodiscard]] std::string str() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;
  friend auto operator<=>(const WeightVector& l, const WeightVector& r) { return l.a_ <=> r.a_; }

 private:
  std::vector<Rational> a_;
};

/// R_p T ... R_q T = [[delta, gamma], [beta, alpha]], with
/// R_s = [[1 - x_s, x_s], [x_s, 1 - x_s]] and T = [[1, -1], [0, 1]].
struct TransferMatrix {
  int p = 0;
  int q = 0;
  MultiPoly alpha;
  MultiPoly beta;
  MultiPoly gamma;
  MultiPoly delta;

  [[nodiscard]] MultiPoly determinant() const { return delta * alpha - gamma * beta; }
};

/// Eigenvalue data of the curvature of O_{X_k}(a).
struct CurvatureProfile {
  int k = 0;
  /// vertical[s-1] multiplies dxi^(s) ^ dxibar^(s): theta_s for s < k, a_k for s = k.
  std::vector<MultiPoly> vertical;
  /// The two weighted sums whose combination gives the horizontal block.
  MultiPoly horiz_alpha;
  MultiPoly horiz_beta;
  /// Al + B.
  MultiPoly horiz_trace;
  /// Al*B + D*(Al - B)^2 with D a formal variable of the context.
  MultiPoly horiz_det;
};

/// Rank-2 curvature recursion for the tower X_k -> ... -> X over a surface.
///
/// The polynomial context is (x1..x_{k-1}, a1..a_k, D). Transfer matrices for
/// every length 1..k-1 are built once in the constructor; transfer_matrix(p, q)
/// is the length p-q+1 product shifted onto x_q..x_p. Instances are immutable
/// and can be shared between threads.
class JetRecursion {
 public:
  explicit JetRecursion(int order, BoundaryConvention convention = BoundaryConvention::kCorrected);

  [[nodiscard]] int order() const { return k_; }
  [[nodiscard]] BoundaryConvention convention() const { return convention_; }
  [[nodiscard]] const ContextPtr& context() const { return ctx_; }

  [[nodiscard]] std::size_t x_index(int s) const;
  [[nodiscard]] std::size_t a_index(int j) const;
  [[nodiscard]] std::size_t d_index() const { return ctx_->size() - 1; }
  [[nodiscard]] MultiPoly x(int s) const { return MultiPoly::variable(ctx_, x_index(s)); }
  [[nodiscard]] MultiPoly a(int j) const { return MultiPoly::variable(ctx_, a_index(j)); }
  [[nodiscard]] MultiPoly D() const { return MultiPoly::variable(ctx_, d_index()); }
  [[nodiscard]] MultiPoly constant(const Rational& c) const { return MultiPoly::constant(ctx_, c); }

  /// Requires k-1 >= p >= q >= 1.
  [[nodiscard]] TransferMatrix transfer_matrix(int p, int q) const;

  /// alpha_{p,q} - beta_{p,q}; (p, q) = (0, 1) follows the boundary convention.
  [[nodiscard]] MultiPoly y(int p, int q) const;
  /// alpha_{p,q} + beta_{p,q}; (p, q) = (0, 1) follows the boundary convention.
  [[nodiscard]] MultiPoly w(int p, int q) const;

  /// Constant polynomials for a numeric weight of this order.
  [[nodiscard]] std::vector<MultiPoly> weights(const WeightVector& a) const;
  /// The variables a1..a_k.
  [[nodiscard]] std::vector<MultiPoly> symbolic_weights() const;

  /// a_s + sum_{j=s}^{k-1} a_{j+1} y_{j,s}, for 1 <= s <= k-1.
  [[nodiscard]] MultiPoly theta(int s, std::span<const MultiPoly> a) const;
  [[nodiscard]] MultiPoly theta(int s, const WeightVector& a) const { return theta(s, weights(a)); }

  /// (Al, B) = (sum a_{l+1} alpha_{l,1}, sum a_{l+1} beta_{l,1}), l = 0..k-1.
  [[nodiscard]] std::pair<MultiPoly, MultiPoly> horizontal_pair(std::span<const MultiPoly> a) const;
  [[nodiscard]] std::pair<MultiPoly, MultiPoly> horizontal_pair(const WeightVector& a) const {
    return horizontal_pair(weights(a));
  }

  [[nodiscard]] CurvatureProfile curvature_profile(std::span<const MultiPoly> a) const;
  [[nodiscard]] CurvatureProfile curvature_profile(const WeightVector& a) const {
    return curvature_profile(weights(a));
  }

 private:
  [[nodiscard]] std::pair<Rational, Rational> boundary_alpha_beta() const;
  void check_weights(std::span<const MultiPoly> a) const;

  int k_;
  BoundaryConvention convention_;
  ContextPtr ctx_;
  std::vector<TransferMatrix> base_;  // base_[n-1] = transfer matrix (n, 1)
};

/// Sign of the free unitary-completion phase, for the exact variant.
enum class PhaseSign { kPlus, kMinus };

/// One level of the diagonal curvature recursion:
/// c_prev = (c_11, c_22) at level s-1 goes through gamma = T c_prev and then the
/// unitary change of frame whose second row is (conj v^1, conj v^2),
/// |v^1|^2 = x, first row e^{i phase} (-v^2, v^1). Throws std::domain_error for
/// x outside [0, 1].
[[nodiscard]] std::array<double, 2> conjugation_step(std::array<double, 2> c_prev, double x, double phase);

/// Exact variant for phase in {0, pi}.
[[nodiscard]] std::array<Rational, 2> conjugation_step(const std::array<Rational, 2>& c_prev, const Rational& x,
                                                       PhaseSign phase);

}  // namespace jetmorse
