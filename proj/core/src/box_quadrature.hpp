#pragma once

// Sign-aware adaptive quadrature of polynomial integrands over sub-regions of
// the unit cube cut out by eigenvalue sign conditions. Internal to the morse
// engine.

#include <cstdint>
#include <span>
#include <vector>

#include "jetmorse/multipoly.hpp"
#include "jetmorse/rational.hpp"

namespace jetmorse::detail {

/// Dense tensor-product polynomial in m variables. coeff index is
/// sum_i e_i * stride_i with stride_0 = 1.
class DensePoly {
 public:
  DensePoly() = default;
  /// From a polynomial whose only live variables are the first m of its context.
  DensePoly(const MultiPoly& p, std::size_t m);

  [[nodiscard]] std::size_t dims() const { return degree_.size(); }
  [[nodiscard]] bool is_zero() const { return zero_; }

  struct Bounds {
    Rational lo;
    Rational hi;
  };

  /// Expresses the polynomial in centered coordinates x = c + r t, t in [-1, 1]^m.
  [[nodiscard]] std::vector<Rational> centered(std::span<const Rational> lo, std::span<const Rational> hi) const;
  /// Enclosure of the values on the box, from the centered expansion.
  [[nodiscard]] Bounds bound(std::span<const Rational> lo, std::span<const Rational> hi) const;
  /// Exact integral over the box.
  [[nodiscard]] Rational integral(std::span<const Rational> lo, std::span<const Rational> hi) const;

 private:
  [[nodiscard]] Bounds bound_centered(const std::vector<Rational>& c) const;

  std::vector<std::uint32_t> degree_;
  std::vector<std::size_t> stride_;
  std::vector<Rational> coeff_;
  bool zero_ = true;
};

/// Integrand and sign functions of a restricted Morse integral.
struct RegionProblem {
  std::size_t dims = 0;
  DensePoly integrand;
  /// Vertical eigenvalues that vary over the cube (theta_1..theta_{k-1}).
  std::vector<DensePoly> vertical;
  /// Negative constant vertical eigenvalues (a_k < 0 contributes 1).
  int fixed_negatives = 0;
  DensePoly det;
  DensePoly trace;
  int qmax = 1;
};

struct RegionIntegral {
  Rational lo;
  Rational hi;
  Rational volume_lo;
  Rational volume_hi;
  std::size_t boxes = 0;
  bool converged = true;
};

/// Deterministic best-first box subdivision until (hi - lo) / 2 <= tol or the
/// box budget is exhausted (converged == false).
[[nodiscard]] RegionIntegral integrate_region(const RegionProblem& problem, const Rational& tol,
                                              std::size_t max_boxes);

}  // namespace jetmorse::detail
