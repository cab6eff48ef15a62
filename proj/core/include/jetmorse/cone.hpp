#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "jetmorse/intersection_form.hpp"
#include "jetmorse/jet_recursion.hpp"
#include "jetmorse/rational.hpp"

namespace jetmorse {

/// Position of a weight relative to the closed cone
///   N = { a : a_j >= 2 (a_{j+1} + ... + a_k) for j < k, a_k >= 0 }.
enum class ConeMembership { kInterior, kBoundary, kOutside };

[[nodiscard]] std::string_view to_string(ConeMembership m);
[[nodiscard]] ConeMembership cone_contains(const WeightVector& a);

/// Minimum of the vertical eigenvalues over the fiber cube. Each theta_s is
/// multilinear in x_s..x_{k-1}, so its minimum is attained at a vertex.
struct ThetaCertificate {
  bool positive = false;
  /// Level of the minimizing eigenvalue; s == k refers to the constant a_k.
  int s = 0;
  /// Vertex coordinates (x_s, ..., x_{k-1}) of the minimum; empty for s == k.
  std::vector<Rational> vertex;
  Rational value;
};

[[nodiscard]] ThetaCertificate theta_positivity_certificate(const WeightVector& a);

struct OptimizerConfig {
  int restarts = 8;
  std::uint64_t seed = 1;
  int max_iters = 400;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct MkRecord {
  int k = 0;
  /// F/G at argmax, with G(argmax) > 0.
  Rational best_ratio;
  WeightVector argmax;
  /// max(best_ratio, certified bound of order k-1) once lifted by mk_table;
  /// equal to best_ratio otherwise.
  Rational certified_lower_bound;
  /// Start points searched: the canonical seed plus the random restarts.
  int seeds_used = 0;
  /// True when the certified bound comes from order k-1.
  bool lifted = false;
};

/// Canonical boundary weight (2 * 3^{k-2}, ..., 6, 2, 1).
[[nodiscard]] WeightVector canonical_seed(int k);

/// Seeded multi-start coordinate ascent of F/G over the slice a_k = 1 of N,
/// in exact arithmetic with dyadic step halving. Returns nullopt when no
/// probe has G > 0. The result is a lower bound for the supremum only.
[[nodiscard]] std::optional<MkRecord> maximize_ratio(const IntersectionForm& fg, const OptimizerConfig& config = {});
[[nodiscard]] std::optional<MkRecord> maximize_ratio(int k, const OptimizerConfig& config = {});

/// Records for k = 1..kmax with certified bounds made non-decreasing through
/// the lift (a, 0): near a_k = 0, F_k / G_k tends to F_{k-1} / G_{k-1}
/// because F_k(a', 0) = 0 and dF_k/da_k(a', 0) = (k+2) F_{k-1}(a') (same for G).
[[nodiscard]] std::vector<MkRecord> mk_table(int kmax, const OptimizerConfig& config = {});

/// Chern numbers of a minimal surface of general type.
struct SurfaceInvariants {
  Rational c1sq;
  Rational c2;

  /// Smooth degree-d surface in P^3: c1^2 = d (d-4)^2, c2 = d (d^2 - 4d + 6).
  static SurfaceInvariants from_hypersurface_degree(int d);
};

struct JetOrderReport {
  Rational ratio;  // c2 / c1^2
  std::optional<int> order;
  std::optional<WeightVector> witness;
  std::optional<Rational> bound;  // certified bound at order
  std::vector<MkRecord> table;
};

/// Smallest k <= kmax whose certified bound exceeds c2 / c1^2. Throws
/// std::domain_error for c1^2 <= 0.
[[nodiscard]] JetOrderReport jet_order_for_surface(const SurfaceInvariants& s, int kmax,
                                                   const OptimizerConfig& config = {});
[[nodiscard]] JetOrderReport jet_order_for_surface(const SurfaceInvariants& s, const std::vector<MkRecord>& table);

}  // namespace jetmorse
