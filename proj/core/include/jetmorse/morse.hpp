#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetmorse/intersection_form.hpp"
#include "jetmorse/jet_recursion.hpp"
#include "jetmorse/rational.hpp"

namespace jetmorse {

/// Chern numbers of the base surface plus, for constant-curvature models, the
/// pointwise value of D = lambda * mu.
struct SurfaceModel {
  std::string name;
  Rational c1sq;
  Rational c2;
  std::optional<Rational> D;

  /// Compact ball quotient normalized to c_2 = 1: c_1^2 = 3 c_2, D = 2/9.
  static SurfaceModel ball_quotient();
  /// Resolves a model by name; only "ball" is known.
  static SurfaceModel by_name(const std::string& name);
};

/// Fiber-volume integrals over X_1 in units of the Chern numbers:
/// J0 = c1^2 / 2 (unweighted), JD = (c1^2 - c2) / 6 (weighted by D).
struct MorseNormalization {
  Rational J0;
  Rational JD;
  static MorseNormalization of(const SurfaceModel& m);
};

/// Average of D for given Chern numbers: JD / J0 = (c1^2 - c2) / (3 c1^2).
[[nodiscard]] Rational mean_D(const Rational& c1sq, const Rational& c2);

/// D for a ball quotient, from mean_D under c1^2 = 3 c2.
[[nodiscard]] Rational ball_quotient_D();

/// F_k, G_k from the curvature integrals
///   (a.u)^{k+2} = (k+2)! a_k [J0 P + JD Q],
///   P = int_{[0,1]^{k-1}} Al B prod(theta),  Q = int (Al - B)^2 prod(theta),
/// with a symbolic weight.
[[nodiscard]] IntersectionForm fg_via_integrals(int k, BoundaryConvention convention = BoundaryConvention::kCorrected);

/// Numeric (F(a), G(a)) from the same integrals.
struct FGValue {
  Rational F;
  Rational G;
};
[[nodiscard]] FGValue fg_via_integrals(const WeightVector& a,
                                       BoundaryConvention convention = BoundaryConvention::kCorrected);

/// Outcome of counting negative curvature eigenvalues at a point.
struct IndexCount {
  bool degenerate = false;
  int negatives = 0;

  static IndexCount degenerate_point() { return {true, 0}; }
  friend bool operator==(const IndexCount&, const IndexCount&) = default;
};

/// Counts negative eigenvalues of the curvature of O_{X_k}(a) at fiber point x
/// (length k-1). The horizontal 2x2 block is classified from its trace and
/// determinant. Requires model.D.
[[nodiscard]] IndexCount negativity_count(const JetRecursion& rec, const WeightVector& a, const SurfaceModel& model,
                                          std::span<const Rational> x);
[[nodiscard]] IndexCount negativity_count(const WeightVector& a, const SurfaceModel& model,
                                          std::span<const Rational> x);

struct MorseOptions {
  int qmax = 1;
  /// Half-width of the reported enclosure the subdivision must reach.
  Rational tol = Rational(1, 1000);
  std::size_t max_boxes = 2'000'000;
  /// Force box subdivision even when an exact 1-D answer is available.
  bool force_subdivision = false;
};

/// Thrown when the subdivision budget runs out before reaching tol.
class QuadratureBudgetError : public std::runtime_error {
 public:
  QuadratureBudgetError(const std::string& what, Rational achieved)
      : std::runtime_error(what), achieved_bound(std::move(achieved)) {}
  Rational achieved_bound;
};

/// An interval on a segment of [0, 1] (1-D exact mode).
struct Segment {
  Rational lo;
  Rational hi;
};

/// Restricted Morse integral over X(<= qmax), as the coefficient of c_1^2.
struct MorseResult {
  int k = 0;
  WeightVector weight;
  std::string model;
  int qmax = 1;

  bool exact = false;
  /// Exact value (exact == true) or the enclosure [lo, hi] (exact == false;
  /// lo == hi == value when exact).
  Rational value;
  Rational lo;
  Rational hi;
  /// Region volume (fraction of the fiber cube), same convention.
  Rational volume_lo;
  Rational volume_hi;

  /// 1-D exact mode: sign-change points found in (0, 1) and the included segments.
  std::vector<Rational> breakpoints;
  std::vector<Segment> region;

  std::size_t boxes = 0;

  [[nodiscard]] double estimate() const;
  [[nodiscard]] double error_bound() const;
  [[nodiscard]] Rational exact_error_bound() const { return (hi - lo) / Rational(2); }
};

[[nodiscard]] MorseResult restricted_morse_integral(const WeightVector& a, const SurfaceModel& model,
                                                    const MorseOptions& options = {});

}  // namespace jetmorse
