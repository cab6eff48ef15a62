#include "jetmorse/chern_ring.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace jetmorse {

ContextPtr weight_context(int k) { return make_indexed_context("a", k); }

std::optional<std::string> first_difference(const IntersectionForm& l, const IntersectionForm& r) {
  if (l.k != r.k) return "orders differ: " + std::to_string(l.k) + " vs " + std::to_string(r.k);
  for (const auto* name : {"F", "G"}) {
    const MultiPoly& pl = name[0] == 'F' ? l.F : l.G;
    const MultiPoly& pr = name[0] == 'F' ? r.F : r.G;
    const MultiPoly diff = pl - pr.embed(pl.context());
    if (diff.is_zero()) continue;
    const auto& [exp, coef] = *diff.terms().begin();
    const MultiPoly mono = MultiPoly::monomial(pl.context(), exp, Rational(1));
    std::ostringstream os;
    os << name << ": coefficient of " << mono.to_string() << " is " << pl.coefficient(exp) << " vs "
       << pr.embed(pl.context()).coefficient(exp);
    return os.str();
  }
  return std::nullopt;
}

namespace {

// Exponent layout: u_1..u_level, c1, c2.
std::uint32_t base_degree(const Exponent& e, int level) {
  return e[static_cast<std::size_t>(level)] + 2 * e[static_cast<std::size_t>(level) + 1];
}

std::uint32_t complex_degree(const Exponent& e, int level) {
  std::uint32_t d = 0;
  for (int j = 0; j < level; ++j) d += e[static_cast<std::size_t>(j)];
  return d + base_degree(e, level);
}

bool vanishes(const Exponent& e, int level) {
  return base_degree(e, level) > 2 || complex_degree(e, level) > static_cast<std::uint32_t>(level + 2);
}

}  // namespace

TowerRingElement::TowerRingElement(int level) : level_(level) {
  if (level < 0) throw std::invalid_argument("TowerRingElement: negative level");
}

TowerRingElement TowerRingElement::constant(int level, const Rational& c) {
  TowerRingElement e(level);
  e.add_term(Exponent(static_cast<std::size_t>(level) + 2, 0), c);
  return e;
}

TowerRingElement TowerRingElement::u(int level, int j) {
  if (j < 1 || j > level) throw std::out_of_range("TowerRingElement::u: index out of range");
  Exponent ex(static_cast<std::size_t>(level) + 2, 0);
  ex[static_cast<std::size_t>(j - 1)] = 1;
  TowerRingElement e(level);
  e.add_term(ex, Rational(1));
  return e;
}

TowerRingElement TowerRingElement::c1(int level) {
  Exponent ex(static_cast<std::size_t>(level) + 2, 0);
  ex[static_cast<std::size_t>(level)] = 1;
  TowerRingElement e(level);
  e.add_term(ex, Rational(1));
  return e;
}

TowerRingElement TowerRingElement::c2(int level) {
  Exponent ex(static_cast<std::size_t>(level) + 2, 0);
  ex[static_cast<std::size_t>(level) + 1] = 1;
  TowerRingElement e(level);
  e.add_term(ex, Rational(1));
  return e;
}

Rational TowerRingElement::coefficient(const Exponent& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TowerRingElement::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != static_cast<std::size_t>(level_) + 2)
    throw std::invalid_argument("TowerRingElement: exponent arity mismatch");
  if (c.is_zero() || vanishes(e, level_)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TowerRingElement& TowerRingElement::operator+=(const TowerRingElement& o) {
  if (o.level_ != level_) throw std::invalid_argument("TowerRingElement: level mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

TowerRingElement& TowerRingElement::operator-=(const TowerRingElement& o) {
  if (o.level_ != level_) throw std::invalid_argument("TowerRingElement: level mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

TowerRingElement& TowerRingElement::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

TowerRingElement operator*(const TowerRingElement& a, const TowerRingElement& b) {
  if (a.level_ != b.level_) throw std::invalid_argument("TowerRingElement: level mismatch");
  TowerRingElement r(a.level_);
  Exponent e(static_cast<std::size_t>(a.level_) + 2);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);  // truncates
    }
  }
  return r;
}

TowerRingElement TowerRingElement::pow(unsigned e) const {
  TowerRingElement r = constant(level_, Rational(1));
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

TowerRingElement TowerRingElement::lift(int to_level) const {
  if (to_level < level_) throw std::invalid_argument("TowerRingElement::lift: target below current level");
  TowerRingElement r(to_level);
  Exponent ne(static_cast<std::size_t>(to_level) + 2, 0);
  for (const auto& [e, c] : terms_) {
    std::fill(ne.begin(), ne.end(), 0);
    for (int j = 0; j < level_; ++j) ne[static_cast<std::size_t>(j)] = e[static_cast<std::size_t>(j)];
    ne[static_cast<std::size_t>(to_level)] = e[static_cast<std::size_t>(level_)];
    ne[static_cast<std::size_t>(to_level) + 1] = e[static_cast<std::size_t>(level_) + 1];
    r.add_term(ne, c);
  }
  return r;
}

std::string TowerRingElement::to_string() const {
  std::vector<std::string> names;
  for (int j = 1; j <= level_; ++j) names.push_back("u" + std::to_string(j));
  names.emplace_back("c1");
  names.emplace_back("c2");
  const auto ctx = make_context(std::move(names));
  MultiPoly p(ctx);
  for (const auto& [e, c] : terms_) p += MultiPoly::monomial(ctx, e, c);
  return p.to_string();
}

TowerRing::TowerRing(int max_level) : max_level_(max_level) {
  if (max_level < 0) throw std::invalid_argument("TowerRing: negative level");
  c1_.push_back(TowerRingElement::c1(0));
  c2_.push_back(TowerRingElement::c2(0));
  powers_.emplace_back();  // level 0 has no u
  const unsigned max_power = static_cast<unsigned>(max_level) + 2;
  for (int j = 1; j <= max_level; ++j) {
    // u_j^2 = -c1(V_{j-1}) u_j - c2(V_{j-1}), iterated as u^{m+1} = (B_m - c1' A_m) u - c2' A_m.
    const TowerRingElement& c1p = c1_[static_cast<std::size_t>(j - 1)];
    const TowerRingElement& c2p = c2_[static_cast<std::size_t>(j - 1)];
    std::vector<std::pair<TowerRingElement, TowerRingElement>> table;
    table.emplace_back(TowerRingElement(j - 1), TowerRingElement::constant(j - 1, Rational(1)));
    for (unsigned m = 0; m < max_power; ++m) {
      const auto& [am, bm] = table.back();
      TowerRingElement next_a = bm - c1p * am;
      TowerRingElement next_b = -(c2p * am);
      table.emplace_back(std::move(next_a), std::move(next_b));
    }
    powers_.push_back(std::move(table));

    const TowerRingElement uj = TowerRingElement::u(j, j);
    const TowerRingElement c1_prev = c1p.lift(j);
    c1_.push_back(c1_prev + uj);
    c2_.push_back(-(c1_prev * uj) - Rational(2) * (uj * uj));
  }
}

std::pair<TowerRingElement, TowerRingElement> TowerRing::chern_of_level(int j) const {
  if (j < 0 || j > max_level_) throw std::out_of_range("chern_of_level: level out of range");
  return {c1_[static_cast<std::size_t>(j)], c2_[static_cast<std::size_t>(j)]};
}

const std::pair<TowerRingElement, TowerRingElement>& TowerRing::power_relation(int j, unsigned m) const {
  if (j < 1 || j > max_level_) throw std::out_of_range("power_relation: level out of range");
  const auto& table = powers_[static_cast<std::size_t>(j)];
  if (m >= table.size()) throw std::out_of_range("power_relation: exponent exceeds tower dimension");
  return table[m];
}

TowerRingElement TowerRing::reduce(const TowerRingElement& e) const {
  const int level = e.level();
  if (level > max_level_) throw std::out_of_range("reduce: element level exceeds ring");
  TowerRingElement cur = e;
  for (int j = level; j >= 1; --j) {
    const auto uj_idx = static_cast<std::size_t>(j - 1);
    TowerRingElement next(level);
    const TowerRingElement uj = TowerRingElement::u(level, j);
    for (const auto& [ex, c] : cur.terms()) {
      const std::uint32_t m = ex[uj_idx];
      if (m < 2) {
        next.add_term(ex, c);
        continue;
      }
      Exponent rest = ex;
      rest[uj_idx] = 0;
      TowerRingElement mono(level);
      mono.add_term(rest, c);
      const auto& [a, b] = power_relation(j, m);
      next += mono * (a.lift(level) * uj + b.lift(level));
    }
    cur = std::move(next);
  }
  return cur;
}

TowerRingElement TowerRing::pushforward(const TowerRingElement& e) const {
  const int level = e.level();
  if (level < 1) throw std::invalid_argument("pushforward: level-0 element has no fiber");
  if (level > max_level_) throw std::out_of_range("pushforward: element level exceeds ring");
  const auto uj_idx = static_cast<std::size_t>(level - 1);
  TowerRingElement out(level - 1);
  for (const auto& [ex, c] : e.terms()) {
    const std::uint32_t m = ex[uj_idx];
    if (m == 0) continue;
    Exponent rest(ex.size() - 1);
    for (std::size_t i = 0, o = 0; i < ex.size(); ++i)
      if (i != uj_idx) rest[o++] = ex[i];
    TowerRingElement mono(level - 1);
    mono.add_term(rest, c);
    out += mono * power_relation(level, m).first;
  }
  return out;
}

BaseClass TowerRing::integrate(const TowerRingElement& e) const {
  TowerRingElement cur = e;
  while (cur.level() > 0) cur = pushforward(cur);
  return BaseClass{cur.coefficient(Exponent{2, 0}), cur.coefficient(Exponent{0, 1})};
}

namespace {

/// Degrees of top monomials u^e, memoized per level.
class MonomialIntegrator {
 public:
  explicit MonomialIntegrator(const TowerRing& ring) : ring_(ring), memo_(static_cast<std::size_t>(ring.max_level()) + 1) {}

  BaseClass operator()(int level, const Exponent& e) {
    if (vanishes(e, level) || complex_degree(e, level) != static_cast<std::uint32_t>(level + 2)) return {};
    if (level == 0) return BaseClass{e[0] == 2 ? Rational(1) : Rational(0), e[1] == 1 ? Rational(1) : Rational(0)};
    auto& memo = memo_[static_cast<std::size_t>(level)];
    if (auto it = memo.find(e); it != memo.end()) return it->second;

    BaseClass result;
    const std::uint32_t m = e[static_cast<std::size_t>(level - 1)];
    if (m > 0) {
      const TowerRingElement& a = ring_.power_relation(level, m).first;
      Exponent rest(e.size() - 1);
      for (const auto& [ta, ca] : a.terms()) {
        for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(level); ++i) rest[i] = e[i] + ta[i];
        const auto lv = static_cast<std::size_t>(level);
        rest[lv - 1] = e[lv] + ta[lv - 1];
        rest[lv] = e[lv + 1] + ta[lv];
        const BaseClass sub = (*this)(level - 1, rest);
        result.c1sq += ca * sub.c1sq;
        result.c2 += ca * sub.c2;
      }
    }
    memo.emplace(e, result);
    return result;
  }

 private:
  const TowerRing& ring_;
  std::vector<std::map<Exponent, BaseClass>> memo_;
};

}  // namespace

IntersectionForm intersection_polynomials(int k) {
  if (k < 1) throw std::invalid_argument("intersection_polynomials: k must be >= 1");
  const TowerRing ring(k);
  MonomialIntegrator integrate_monomial(ring);
  const auto ctx = weight_context(k);
  IntersectionForm form{k, MultiPoly(ctx), MultiPoly(ctx)};

  const unsigned degree = static_cast<unsigned>(k) + 2;
  std::vector<Rational> factorial{Rational(1)};
  for (unsigned i = 1; i <= degree; ++i) factorial.push_back(factorial.back() * Rational(i));

  Exponent e(static_cast<std::size_t>(k), 0);
  // Enumerate compositions e_1 + ... + e_k = k + 2.
  std::function<void(std::size_t, unsigned)> visit = [&](std::size_t i, unsigned remaining) {
    if (i + 1 == e.size()) {
      e[i] = remaining;
      Exponent full(e.size() + 2, 0);
      std::copy(e.begin(), e.end(), full.begin());
      const BaseClass deg = integrate_monomial(k, full);
      if (deg.c1sq.is_zero() && deg.c2.is_zero()) return;
      Rational multinomial = factorial[degree];
      for (auto v : e) multinomial /= factorial[v];
      form.F += MultiPoly::monomial(ctx, e, multinomial * deg.c1sq);
      form.G += MultiPoly::monomial(ctx, e, -(multinomial * deg.c2));
      return;
    }
    for (unsigned v = 0; v <= remaining; ++v) {
      e[i] = v;
      visit(i + 1, remaining - v);
    }
  };
  visit(0, degree);
  return form;
}

}  // namespace jetmorse
