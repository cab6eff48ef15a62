#include "jetmorse/jet_recursion.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace jetmorse {

std::string_view to_string(BoundaryConvention c) {
  return c == BoundaryConvention::kCorrected ? "corrected" : "literal";
}

BoundaryConvention parse_convention(std::string_view s) {
  if (s == "corrected") return BoundaryConvention::kCorrected;
  if (s == "literal") return BoundaryConvention::kLiteral;
  throw std::invalid_argument("unknown boundary convention '" + std::string(s) + "'");
}

WeightVector::WeightVector(std::vector<Rational> a) : a_(std::move(a)) {}

WeightVector WeightVector::parse(std::string_view text) {
  std::vector<Rational> a;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    a.push_back(Rational::parse(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return WeightVector(std::move(a));
}

std::string WeightVector::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a_.size(); ++i) os << (i ? "," : "") << a_[i];
  os << ")";
  return os.str();
}

namespace {

ContextPtr jet_context(int k) {
  std::vector<std::string> names;
  for (int s = 1; s <= k - 1; ++s) names.push_back("x" + std::to_string(s));
  for (int j = 1; j <= k; ++j) names.push_back("a" + std::to_string(j));
  names.emplace_back("D");
  return make_context(std::move(names));
}

}  // namespace

JetRecursion::JetRecursion(int order, BoundaryConvention convention)
    : k_(order), convention_(convention), ctx_(jet_context(order)) {
  if (order < 1) throw std::invalid_argument("JetRecursion: order must be >= 1");
  const MultiPoly one = constant(Rational(1));
  const MultiPoly zero(ctx_);
  // Running product starts at the identity; each level multiplies R_n T on the left.
  MultiPoly d = one, g = zero, b = zero, al = one;
  for (int n = 1; n <= k_ - 1; ++n) {
    const MultiPoly xn = x(n);
    // R_n T = [[1 - x, 2x - 1], [x, 1 - 2x]]
    const MultiPoly r11 = one - xn;
    const MultiPoly r12 = Rational(2) * xn - Rational(1);
    const MultiPoly r21 = xn;
    const MultiPoly r22 = one - Rational(2) * xn;
    MultiPoly nd = r11 * d + r12 * b;
    MultiPoly ng = r11 * g + r12 * al;
    MultiPoly nb = r21 * d + r22 * b;
    MultiPoly nal = r21 * g + r22 * al;
    d = std::move(nd);
    g = std::move(ng);
    b = std::move(nb);
    al = std::move(nal);
    base_.push_back(TransferMatrix{n, 1, al, b, g, d});
  }
}

std::size_t JetRecursion::x_index(int s) const {
  if (s < 1 || s > k_ - 1) throw std::out_of_range("JetRecursion: x index out of range");
  return static_cast<std::size_t>(s - 1);
}

std::size_t JetRecursion::a_index(int j) const {
  if (j < 1 || j > k_) throw std::out_of_range("JetRecursion: a index out of range");
  return static_cast<std::size_t>(k_ - 1 + j - 1);
}

TransferMatrix JetRecursion::transfer_matrix(int p, int q) const {
  if (q < 1 || p < q) throw std::invalid_argument("transfer_matrix: requires p >= q >= 1");
  if (p > k_ - 1) throw std::invalid_argument("transfer_matrix: level exceeds order - 1");
  const TransferMatrix& m = base_.at(static_cast<std::size_t>(p - q));
  if (q == 1) return m;
  // Shift x_{1+i} -> x_{q+i}; the base product only involves x_1..x_{p-q+1},
  // so the images of the other (unused) variables are irrelevant.
  std::vector<std::size_t> mapping(ctx_->size());
  for (std::size_t i = 0; i < mapping.size(); ++i) mapping[i] = i;
  const int len = p - q + 1;
  for (int i = 0; i < len; ++i) mapping[x_index(1 + i)] = x_index(q + i);
  return TransferMatrix{p, q, m.alpha.relabel(mapping), m.beta.relabel(mapping), m.gamma.relabel(mapping),
                        m.delta.relabel(mapping)};
}

std::pair<Rational, Rational> JetRecursion::boundary_alpha_beta() const {
  return convention_ == BoundaryConvention::kCorrected ? std::pair{Rational(1), Rational(0)}
                                                       : std::pair{Rational(1), Rational(1)};
}

MultiPoly JetRecursion::y(int p, int q) const {
  if (p == 0 && q == 1) {
    const auto [al, be] = boundary_alpha_beta();
    return constant(al - be);
  }
  const TransferMatrix m = transfer_matrix(p, q);
  return m.alpha - m.beta;
}

MultiPoly JetRecursion::w(int p, int q) const {
  if (p == 0 && q == 1) {
    const auto [al, be] = boundary_alpha_beta();
    return constant(al + be);
  }
  const TransferMatrix m = transfer_matrix(p, q);
  return m.alpha + m.beta;
}

std::vector<MultiPoly> JetRecursion::weights(const WeightVector& a) const {
  if (a.order() != k_) throw std::invalid_argument("weight order " + std::to_string(a.order()) +
                                                   " does not match recursion order " + std::to_string(k_));
  std::vector<MultiPoly> out;
  out.reserve(a.entries().size());
  for (const auto& v : a.entries()) out.push_back(constant(v));
  return out;
}

std::vector<MultiPoly> JetRecursion::symbolic_weights() const {
  std::vector<MultiPoly> out;
  for (int j = 1; j <= k_; ++j) out.push_back(a(j));
  return out;
}

void JetRecursion::check_weights(std::span<const MultiPoly> a) const {
  if (static_cast<int>(a.size()) != k_) throw std::invalid_argument("weight length does not match recursion order");
}

MultiPoly JetRecursion::theta(int s, std::span<const MultiPoly> a) const {
  check_weights(a);
  if (s < 1 || s > k_ - 1) throw std::out_of_range("theta: s must satisfy 1 <= s <= k-1");
  MultiPoly t = a[static_cast<std::size_t>(s - 1)];
  for (int j = s; j <= k_ - 1; ++j) t += a[static_cast<std::size_t>(j)] * y(j, s);
  return t;
}

std::pair<MultiPoly, MultiPoly> JetRecursion::horizontal_pair(std::span<const MultiPoly> a) const {
  check_weights(a);
  const auto [al0, be0] = boundary_alpha_beta();
  MultiPoly al = a[0] * al0;
  MultiPoly be = a[0] * be0;
  for (int l = 1; l <= k_ - 1; ++l) {
    const TransferMatrix& m = base_.at(static_cast<std::size_t>(l - 1));
    al += a[static_cast<std::size_t>(l)] * m.alpha;
    be += a[static_cast<std::size_t>(l)] * m.beta;
  }
  return {std::move(al), std::move(be)};
}

CurvatureProfile JetRecursion::curvature_profile(std::span<const MultiPoly> a) const {
  check_weights(a);
  CurvatureProfile prof;
  prof.k = k_;
  for (int s = 1; s <= k_ - 1; ++s) prof.vertical.push_back(theta(s, a));
  prof.vertical.push_back(a[static_cast<std::size_t>(k_ - 1)]);
  auto [al, be] = horizontal_pair(a);
  prof.horiz_trace = al + be;
  const MultiPoly diff = al - be;
  prof.horiz_det = al * be + D() * diff * diff;
  prof.horiz_alpha = std::move(al);
  prof.horiz_beta = std::move(be);
  return prof;
}

std::array<double, 2> conjugation_step(std::array<double, 2> c_prev, double x, double phase) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("conjugation_step: x must lie in [0, 1]");
  // gamma^(s) = T c^(s-1) on the diagonal components.
  const double g11 = c_prev[0] - c_prev[1];
  const double g22 = c_prev[1];
  using C = std::complex<double>;
  const C v1(std::sqrt(x), 0.0);
  const C v2(std::sqrt(1.0 - x), 0.0);
  const C e = std::polar(1.0, phase);
  const C u[2][2] = {{-e * v2, e * v1}, {std::conj(v1), std::conj(v2)}};
  const double g[2] = {g11, g22};
  std::array<double, 2> out{};
  for (int l = 0; l < 2; ++l) {
    C acc(0.0, 0.0);
    for (int al = 0; al < 2; ++al) acc += g[al] * std::conj(u[l][al]) * u[l][al];
    out[static_cast<std::size_t>(l)] = acc.real();
  }
  return out;
}

std::array<Rational, 2> conjugation_step(const std::array<Rational, 2>& c_prev, const Rational& x, PhaseSign phase) {
  if (x.sign() < 0 || x > Rational(1)) throw std::domain_error("conjugation_step: x must lie in [0, 1]");
  const Rational g11 = c_prev[0] - c_prev[1];
  const Rational g22 = c_prev[1];
  // Entries are real: sigma * sqrt(m). Store (sigma, m); conj(a) a = sigma^2 m = m.
  struct Entry {
    int sign;
    Rational square;
  };
  const int s = phase == PhaseSign::kPlus ? 1 : -1;
  const Rational one_minus_x = Rational(1) - x;
  const Entry u[2][2] = {{{-s, one_minus_x}, {s, x}}, {{1, x}, {1, one_minus_x}}};
  const Rational g[2] = {g11, g22};
  std::array<Rational, 2> out{};
  for (int l = 0; l < 2; ++l) {
    Rational acc(0);
    for (int al = 0; al < 2; ++al) {
      const Entry& a = u[l][al];
      acc += g[al] * Rational(a.sign * a.sign) * a.square;
    }
    out[static_cast<std::size_t>(l)] = acc;
  }
  return out;
}

}  // namespace jetmorse
