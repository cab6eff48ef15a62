#include "jetmorse/multipoly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace jetmorse {

VarContext::VarContext(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw ContextError("duplicate variable name '" + names_[i] + "'");
}

std::optional<std::size_t> VarContext::index_of(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t VarContext::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw ContextError("variable '" + std::string(name) + "' is not in the context");
}

ContextPtr make_context(std::vector<std::string> names) {
  return std::make_shared<const VarContext>(std::move(names));
}

ContextPtr make_indexed_context(std::string_view prefix, int count) {
  std::vector<std::string> names;
  for (int i = 1; i <= count; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return make_context(std::move(names));
}

MultiPoly::MultiPoly() {
  static const ContextPtr empty = make_context({});
  ctx_ = empty;
}

MultiPoly::MultiPoly(ContextPtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw ContextError("MultiPoly: null context");
}

MultiPoly MultiPoly::constant(ContextPtr ctx, const Rational& c) {
  MultiPoly p(std::move(ctx));
  p.add_term(Exponent(p.ctx_->size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(ContextPtr ctx, std::string_view name) {
  const std::size_t i = ctx->require(name);
  return variable(std::move(ctx), i);
}

MultiPoly MultiPoly::variable(ContextPtr ctx, std::size_t index) {
  if (index >= ctx->size()) throw ContextError("MultiPoly::variable: index out of range");
  Exponent e(ctx->size(), 0);
  e[index] = 1;
  return monomial(std::move(ctx), std::move(e), Rational(1));
}

MultiPoly MultiPoly::monomial(ContextPtr ctx, Exponent exp, const Rational& c) {
  MultiPoly p(std::move(ctx));
  if (exp.size() != p.ctx_->size()) throw ContextError("MultiPoly::monomial: exponent arity mismatch");
  p.add_term(exp, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                            [](std::uint32_t e) { return e == 0; }));
}

Rational MultiPoly::constant_term() const { return coefficient(Exponent(ctx_->size(), 0)); }

Rational MultiPoly::coefficient(const Exponent& exp) const {
  const auto it = terms_.find(exp);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t MultiPoly::degree_in(std::size_t var) const {
  if (var >= ctx_->size()) throw ContextError("MultiPoly::degree_in: index out of range");
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

std::uint32_t MultiPoly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::uint32_t s = 0;
    for (auto v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

void MultiPoly::require_same_context(const MultiPoly& o, const char* op) const {
  if (ctx_ == o.ctx_) return;
  if (*ctx_ == *o.ctx_) return;
  throw ContextError(std::string("MultiPoly::") + op + ": variable contexts differ");
}

void MultiPoly::add_term(const Exponent& exp, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  require_same_context(o, "add");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  require_same_context(o, "sub");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::add_scaled(const MultiPoly& o, const Rational& c) {
  require_same_context(o, "add_scaled");
  if (c.is_zero()) return *this;
  for (const auto& [e, v] : o.terms_) add_term(e, v * c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.require_same_context(b, "mul");
  MultiPoly r(a.ctx_);
  Exponent e(a.ctx_->size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator-(MultiPoly a) {
  for (auto& [e, v] : a.terms_) v = -v;
  return a;
}

MultiPoly operator+(MultiPoly a, const Rational& c) {
  a.add_term(Exponent(a.ctx_->size(), 0), c);
  return a;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.ctx_ != b.ctx_ && !(*a.ctx_ == *b.ctx_)) return false;
  return a.terms_ == b.terms_;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(ctx_, Rational(1));
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Rational MultiPoly::evaluate(std::span<const Rational> values) const {
  if (values.size() != ctx_->size()) throw ContextError("MultiPoly::evaluate: point arity mismatch");
  // Cache of powers per variable, grown on demand.
  std::vector<std::vector<Rational>> powers(values.size());
  Rational total(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Rational(1));
      while (pw.size() <= e[i]) pw.push_back(pw.back() * values[i]);
      t *= pw[e[i]];
    }
    total += t;
  }
  return total;
}

Rational MultiPoly::evaluate(const std::map<std::string, Rational>& point) const {
  const MultiPoly reduced = substitute(point);
  if (!reduced.is_constant())
    throw ContextError("MultiPoly::evaluate: point does not assign every variable in use");
  return reduced.constant_term();
}

MultiPoly MultiPoly::substitute(const std::map<std::string, Rational>& point) const {
  std::vector<std::pair<std::size_t, Rational>> assigned;
  for (const auto& [name, v] : point) assigned.emplace_back(ctx_->require(name), v);
  MultiPoly r(ctx_);
  for (const auto& [e, c] : terms_) {
    Exponent ne = e;
    Rational nc = c;
    for (const auto& [i, v] : assigned) {
      if (ne[i] == 0) continue;
      nc *= v.pow(ne[i]);
      ne[i] = 0;
    }
    r.add_term(ne, nc);
  }
  return r;
}

MultiPoly MultiPoly::derivative(std::string_view var) const { return derivative(ctx_->require(var)); }

MultiPoly MultiPoly::derivative(std::size_t var) const {
  if (var >= ctx_->size()) throw ContextError("MultiPoly::derivative: index out of range");
  MultiPoly r(ctx_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent ne = e;
    --ne[var];
    r.add_term(ne, c * Rational(e[var]));
  }
  return r;
}

MultiPoly MultiPoly::integrate(std::string_view var, const Rational& lo, const Rational& hi) const {
  return integrate(ctx_->require(var), lo, hi);
}

MultiPoly MultiPoly::integrate(std::size_t var, const Rational& lo, const Rational& hi) const {
  if (var >= ctx_->size()) throw ContextError("MultiPoly::integrate: index out of range");
  std::vector<Rational> lo_pw{Rational(1)}, hi_pw{Rational(1)};
  MultiPoly r(ctx_);
  for (const auto& [e, c] : terms_) {
    const std::uint32_t n = e[var];
    while (lo_pw.size() <= n + 1) {
      lo_pw.push_back(lo_pw.back() * lo);
      hi_pw.push_back(hi_pw.back() * hi);
    }
    Exponent ne = e;
    ne[var] = 0;
    r.add_term(ne, c * (hi_pw[n + 1] - lo_pw[n + 1]) / Rational(n + 1));
  }
  return r;
}

MultiPoly MultiPoly::integrate_box(std::span<const BoxBound> bounds) const {
  MultiPoly r = *this;
  for (const auto& b : bounds) r = r.integrate(b.var, b.lo, b.hi);
  return r;
}

MultiPoly MultiPoly::embed(ContextPtr target) const {
  std::vector<std::optional<std::size_t>> map(ctx_->size());
  for (std::size_t i = 0; i < ctx_->size(); ++i) map[i] = target->index_of(ctx_->name(i));
  MultiPoly r(target);
  Exponent ne(target->size());
  for (const auto& [e, c] : terms_) {
    std::fill(ne.begin(), ne.end(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!map[i]) throw ContextError("MultiPoly::embed: variable '" + ctx_->name(i) + "' missing from target");
      ne[*map[i]] = e[i];
    }
    r.add_term(ne, c);
  }
  return r;
}

MultiPoly MultiPoly::relabel(std::span<const std::size_t> mapping) const {
  if (mapping.size() != ctx_->size()) throw ContextError("MultiPoly::relabel: mapping arity mismatch");
  MultiPoly r(ctx_);
  Exponent ne(ctx_->size());
  for (const auto& [e, c] : terms_) {
    std::fill(ne.begin(), ne.end(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (mapping[i] >= ne.size()) throw ContextError("MultiPoly::relabel: target index out of range");
      if (ne[mapping[i]] != 0) throw ContextError("MultiPoly::relabel: mapping not injective");
      ne[mapping[i]] = e[i];
    }
    r.add_term(ne, c);
  }
  return r;
}

MultiPoly MultiPoly::compose(std::span<const MultiPoly> images) const {
  if (images.size() != ctx_->size()) throw ContextError("MultiPoly::compose: image count mismatch");
  if (images.empty()) return *this;
  const ContextPtr& target = images.front().context();
  std::vector<std::vector<MultiPoly>> powers(images.size());
  MultiPoly r(target);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(target, Rational(1)));
      while (pw.size() <= e[i]) pw.push_back(pw.back() * images[i]);
      t *= pw[e[i]];
    }
    r += t;
  }
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first reads more naturally.
  std::vector<std::pair<const Exponent*, const Rational*>> order;
  for (const auto& [e, c] : terms_) order.emplace_back(&e, &c);
  std::stable_sort(order.begin(), order.end(), [](const auto& l, const auto& r) {
    std::uint32_t dl = 0, dr = 0;
    for (auto v : *l.first) dl += v;
    for (auto v : *r.first) dr += v;
    if (dl != dr) return dl > dr;
    return *l.first > *r.first;
  });
  for (const auto& [ep, cp] : order) {
    const Exponent& e = *ep;
    const Rational& c = *cp;
    const bool unit_monomial = std::all_of(e.begin(), e.end(), [](auto v) { return v == 0; });
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (unit_monomial || mag != Rational(1)) {
      os << mag.short_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << ctx_->name(i);
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

nlohmann::json MultiPoly::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : terms_) terms.push_back({{"exp", e}, {"coef", c.str()}});
  return {{"vars", ctx_->names()}, {"terms", std::move(terms)}};
}

MultiPoly MultiPoly::from_json(const nlohmann::json& j) {
  auto ctx = make_context(j.at("vars").get<std::vector<std::string>>());
  MultiPoly p(ctx);
  for (const auto& t : j.at("terms")) {
    auto e = t.at("exp").get<Exponent>();
    if (e.size() != ctx->size()) throw ContextError("MultiPoly::from_json: exponent arity mismatch");
    p.add_term(e, Rational::parse(t.at("coef").get<std::string>()));
  }
  return p;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

}  // namespace jetmorse
