#include "jetmorse/morse.hpp"

#include <algorithm>
#include <map>

#include "box_quadrature.hpp"

namespace jetmorse {

namespace {

Rational factorial(int n) {
  Rational f(1);
  for (int i = 2; i <= n; ++i) f *= Rational(i);
  return f;
}

MultiPoly product(const std::vector<MultiPoly>& fs, const MultiPoly& one) {
  MultiPoly p = one;
  for (const auto& f : fs) p *= f;
  return p;
}

MultiPoly integrate_fiber(MultiPoly p, const JetRecursion& rec) {
  for (int s = 1; s <= rec.order() - 1; ++s) p = p.integrate(rec.x_index(s), Rational(0), Rational(1));
  return p;
}

// (P, Q) with the theta product of the profile.
std::pair<MultiPoly, MultiPoly> fiber_integrals(const JetRecursion& rec, const CurvatureProfile& prof) {
  const std::vector<MultiPoly> thetas(prof.vertical.begin(), prof.vertical.end() - 1);
  const MultiPoly pt = product(thetas, rec.constant(Rational(1)));
  const MultiPoly diff = prof.horiz_alpha - prof.horiz_beta;
  MultiPoly P = integrate_fiber(pt * (prof.horiz_alpha * prof.horiz_beta), rec);
  MultiPoly Q = integrate_fiber(pt * (diff * diff), rec);
  return {std::move(P), std::move(Q)};
}

void require_D(const SurfaceModel& model) {
  if (!model.D) throw std::invalid_argument("surface model '" + model.name + "' has no constant D");
}

}  // namespace

MorseNormalization MorseNormalization::of(const SurfaceModel& m) {
  return {m.c1sq / Rational(2), (m.c1sq - m.c2) / Rational(6)};
}

Rational mean_D(const Rational& c1sq, const Rational& c2) {
  if (c1sq.is_zero()) throw std::domain_error("mean_D: c1^2 must be nonzero");
  SurfaceModel s{"", c1sq, c2, std::nullopt};
  const auto n = MorseNormalization::of(s);
  return n.JD / n.J0;
}

Rational ball_quotient_D() {
  // c_1^2 = 3 c_2, with c_2 = 1.
  return mean_D(Rational(3), Rational(1));
}

SurfaceModel SurfaceModel::ball_quotient() { return {"ball", Rational(3), Rational(1), ball_quotient_D()}; }

SurfaceModel SurfaceModel::by_name(const std::string& name) {
  if (name == "ball" || name == "ball-quotient") return ball_quotient();
  throw std::invalid_argument("unknown surface model '" + name + "' (known: ball)");
}

IntersectionForm fg_via_integrals(int k, BoundaryConvention convention) {
  const JetRecursion rec(k, convention);
  const auto a = rec.symbolic_weights();
  const CurvatureProfile prof = rec.curvature_profile(a);
  const auto [P, Q] = fiber_integrals(rec, prof);
  const MultiPoly lead = rec.a(k) * factorial(k + 2);
  const ContextPtr target = weight_context(k);
  IntersectionForm out;
  out.k = k;
  out.F = (lead * (P * Rational(1, 2) + Q * Rational(1, 6))).embed(target);
  out.G = (lead * (Q * Rational(1, 6))).embed(target);
  return out;
}

FGValue fg_via_integrals(const WeightVector& a, BoundaryConvention convention) {
  const JetRecursion rec(a.order(), convention);
  const CurvatureProfile prof = rec.curvature_profile(a);
  const auto [P, Q] = fiber_integrals(rec, prof);
  const Rational lead = a.at(a.order()) * factorial(a.order() + 2);
  const Rational p = P.constant_term();
  const Rational q = Q.constant_term();
  return {lead * (p / Rational(2) + q / Rational(6)), lead * q / Rational(6)};
}

IndexCount negativity_count(const JetRecursion& rec, const WeightVector& a, const SurfaceModel& model,
                            std::span<const Rational> x) {
  require_D(model);
  const int k = rec.order();
  if (a.order() != k) throw std::invalid_argument("negativity_count: weight order does not match");
  if (static_cast<int>(x.size()) != k - 1) throw std::invalid_argument("negativity_count: point must have k-1 coordinates");
  std::vector<Rational> values;
  values.reserve(rec.context()->size());
  values.insert(values.end(), x.begin(), x.end());
  values.insert(values.end(), a.entries().begin(), a.entries().end());
  values.push_back(*model.D);
  const CurvatureProfile prof = rec.curvature_profile(a);
  int neg = 0;
  for (const auto& v : prof.vertical) {
    const int s = v.evaluate(values).sign();
    if (s == 0) return IndexCount::degenerate_point();
    if (s < 0) ++neg;
  }
  const int det = prof.horiz_det.evaluate(values).sign();
  if (det == 0) return IndexCount::degenerate_point();
  if (det < 0) {
    ++neg;
  } else if (prof.horiz_trace.evaluate(values).sign() < 0) {
    neg += 2;
  }
  return {false, neg};
}

IndexCount negativity_count(const WeightVector& a, const SurfaceModel& model, std::span<const Rational> x) {
  return negativity_count(JetRecursion(a.order()), a, model, x);
}

double MorseResult::estimate() const { return value.to_double(); }
double MorseResult::error_bound() const { return exact_error_bound().to_double(); }

namespace {

struct Specialized {
  std::vector<MultiPoly> vertical;  // theta_1..theta_{k-1}
  MultiPoly det;
  MultiPoly trace;
  MultiPoly integrand;
};

Specialized specialize(const JetRecursion& rec, const WeightVector& a, const SurfaceModel& model) {
  const int k = rec.order();
  const CurvatureProfile prof = rec.curvature_profile(a);
  const std::map<std::string, Rational> dval{{"D", *model.D}};
  Specialized s;
  s.vertical.assign(prof.vertical.begin(), prof.vertical.end() - 1);
  s.det = prof.horiz_det.substitute(dval);
  s.trace = prof.horiz_trace;
  const auto n = MorseNormalization::of(model);
  const Rational lead = factorial(k + 2) * a.at(k) * n.J0 / model.c1sq;
  s.integrand = product(s.vertical, rec.constant(Rational(1))) * s.det * lead;
  return s;
}

// Rational roots in (0, 1) of a univariate polynomial in variable 0, or
// nullopt when some root there is irrational or the degree exceeds 2.
std::optional<std::vector<Rational>> unit_roots(const MultiPoly& p, std::size_t nvars) {
  if (p.is_zero()) return std::vector<Rational>{};
  const std::uint32_t deg = p.degree_in(std::size_t{0});
  auto coef = [&](std::uint32_t e) {
    Exponent ex(nvars, 0);
    ex[0] = e;
    return p.coefficient(ex);
  };
  std::vector<Rational> roots;
  if (deg == 1) {
    roots.push_back(-coef(0) / coef(1));
  } else if (deg == 2) {
    const Rational A = coef(2), B = coef(1), C = coef(0);
    const Rational disc = B * B - Rational(4) * A * C;
    if (disc.sign() >= 0) {
      Rational r;
      if (!exact_sqrt(disc, r)) {
        // Irrational pair (neither 0 nor 1 is a root). Some root lies in (0, 1)
        // iff p changes sign on [0, 1] or both roots sit inside it.
        const Rational p0 = C, p1 = A + B + C;
        const Rational v = -B / (Rational(2) * A);
        const bool inside = (p0 * p1).sign() < 0 ||
                            ((p0 * A).sign() > 0 && (p1 * A).sign() > 0 && v.sign() > 0 && v < Rational(1));
        if (inside) return std::nullopt;
        return roots;
      }
      roots.push_back((-B - r) / (Rational(2) * A));
      roots.push_back((-B + r) / (Rational(2) * A));
    }
  } else if (deg > 2) {
    return std::nullopt;
  }
  std::vector<Rational> inside;
  for (auto& r : roots)
    if (r.sign() > 0 && r < Rational(1)) inside.push_back(r);
  return inside;
}

bool exact_line(const JetRecursion& rec, const WeightVector& a, const SurfaceModel& model, int qmax,
                MorseResult& res) {
  const Specialized s = specialize(rec, a, model);
  const std::size_t nvars = rec.context()->size();
  std::vector<Rational> cuts;
  for (const MultiPoly* p : {&s.vertical[0], &s.det, &s.trace}) {
    auto r = unit_roots(*p, nvars);
    if (!r) return false;
    cuts.insert(cuts.end(), r->begin(), r->end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  res.breakpoints = cuts;

  std::vector<Rational> nodes{Rational(0)};
  nodes.insert(nodes.end(), cuts.begin(), cuts.end());
  nodes.emplace_back(1);
  Rational value(0), volume(0);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const Rational mid = (nodes[i] + nodes[i + 1]) / Rational(2);
    const std::vector<Rational> pt{mid};
    const IndexCount c = negativity_count(rec, a, model, pt);
    // Sign functions do not change inside a segment, so a degenerate midpoint
    // means an identically vanishing factor of the integrand.
    if (c.degenerate || c.negatives > qmax) continue;
    value += s.integrand.integrate(std::size_t{0}, nodes[i], nodes[i + 1]).constant_term();
    volume += nodes[i + 1] - nodes[i];
    if (!res.region.empty() && res.region.back().hi == nodes[i])
      res.region.back().hi = nodes[i + 1];
    else
      res.region.push_back({nodes[i], nodes[i + 1]});
  }
  res.exact = true;
  res.value = res.lo = res.hi = value;
  res.volume_lo = res.volume_hi = volume;
  return true;
}

}  // namespace

MorseResult restricted_morse_integral(const WeightVector& a, const SurfaceModel& model, const MorseOptions& options) {
  require_D(model);
  const int k = a.order();
  if (k < 1) throw std::invalid_argument("restricted_morse_integral: empty weight");
  if (options.qmax < 0) throw std::invalid_argument("restricted_morse_integral: qmax must be >= 0");
  if (options.tol.sign() <= 0) throw std::invalid_argument("restricted_morse_integral: tol must be positive");

  const JetRecursion rec(k);
  MorseResult res;
  res.k = k;
  res.weight = a;
  res.model = model.name;
  res.qmax = options.qmax;

  if (k == 1) {
    const Specialized s = specialize(rec, a, model);
    const IndexCount c = negativity_count(rec, a, model, {});
    const bool in = !c.degenerate && c.negatives <= options.qmax;
    res.exact = true;
    res.value = res.lo = res.hi = in ? s.integrand.constant_term() : Rational(0);
    res.volume_lo = res.volume_hi = in ? Rational(1) : Rational(0);
    return res;
  }
  if (k == 2 && !options.force_subdivision && exact_line(rec, a, model, options.qmax, res)) return res;

  const Specialized s = specialize(rec, a, model);
  const auto m = static_cast<std::size_t>(k - 1);
  detail::RegionProblem pb;
  pb.dims = m;
  pb.integrand = detail::DensePoly(s.integrand, m);
  for (const auto& v : s.vertical) pb.vertical.emplace_back(v, m);
  pb.fixed_negatives = a.at(k).sign() < 0 ? 1 : 0;
  pb.det = detail::DensePoly(s.det, m);
  pb.trace = detail::DensePoly(s.trace, m);
  pb.qmax = options.qmax;
  if (a.at(k).is_zero()) {
    // Integrand vanishes identically.
    res.exact = true;
    res.value = res.lo = res.hi = Rational(0);
    res.volume_lo = Rational(0);
    res.volume_hi = Rational(1);
    return res;
  }
  const detail::RegionIntegral r = detail::integrate_region(pb, options.tol, options.max_boxes);
  res.boxes = r.boxes;
  res.lo = r.lo;
  res.hi = r.hi;
  res.value = (r.lo + r.hi) / Rational(2);
  res.volume_lo = r.volume_lo;
  res.volume_hi = r.volume_hi;
  res.exact = r.lo == r.hi;
  if (!r.converged)
    throw QuadratureBudgetError("restricted_morse_integral: box budget " + std::to_string(options.max_boxes) +
                                    " exhausted before reaching tol " + options.tol.str(),
                                res.exact_error_bound());
  return res;
}

}  // namespace jetmorse
