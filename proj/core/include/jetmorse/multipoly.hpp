#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "jetmorse/rational.hpp"

namespace jetmorse {

/// Raised when polynomials from incompatible variable contexts are combined,
/// or a variable name is not part of a context.
class ContextError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Immutable ordered list of variable names. Shared between polynomials via
/// ContextPtr; two contexts are compatible iff their name lists are equal.
class VarContext {
 public:
  explicit VarContext(std::vector<std::string> names);

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] const std::string& name(std::size_t i) const { return names_.at(i); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;
  /// Like index_of, but throws ContextError for an unknown name.
  [[nodiscard]] std::size_t require(std::string_view name) const;

  friend bool operator==(const VarContext& a, const VarContext& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const VarContext>;

[[nodiscard]] ContextPtr make_context(std::vector<std::string> names);
/// Context {prefix1, ..., prefixN}.
[[nodiscard]] ContextPtr make_indexed_context(std::string_view prefix, int count);

using Exponent = std::vector<std::uint32_t>;

struct BoxBound {
  std::string var;
  Rational lo;
  Rational hi;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms live in an ordered map keyed by exponent vector, so two polynomials
/// over the same context are equal iff their term maps are equal. Zero
/// coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rational>;

  /// Zero polynomial over the empty context.
  MultiPoly();
  explicit MultiPoly(ContextPtr ctx);

  static MultiPoly constant(ContextPtr ctx, const Rational& c);
  static MultiPoly variable(ContextPtr ctx, std::string_view name);
  static MultiPoly variable(ContextPtr ctx, std::size_t index);
  static MultiPoly monomial(ContextPtr ctx, Exponent exp, const Rational& c);

  [[nodiscard]] const ContextPtr& context() const { return ctx_; }
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] Rational constant_term() const;
  [[nodiscard]] Rational coefficient(const Exponent& exp) const;
  [[nodiscard]] std::uint32_t degree_in(std::size_t var) const;
  [[nodiscard]] std::uint32_t degree_in(std::string_view var) const { return degree_in(ctx_->require(var)); }
  [[nodiscard]] std::uint32_t total_degree() const;
  /// True if the variable appears with a nonzero exponent in some term.
  [[nodiscard]] bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  /// this += c * o, without materializing the scaled copy.
  MultiPoly& add_scaled(const MultiPoly& o, const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator-(MultiPoly a);
  friend MultiPoly operator+(MultiPoly a, const Rational& c);
  friend MultiPoly operator+(const Rational& c, MultiPoly a) { return std::move(a) + c; }
  friend MultiPoly operator-(MultiPoly a, const Rational& c) { return std::move(a) + (-c); }
  friend MultiPoly operator-(const Rational& c, MultiPoly a) { return (-std::move(a)) + c; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  [[nodiscard]] MultiPoly pow(unsigned e) const;

  /// Full evaluation; every variable that occurs must be assigned.
  [[nodiscard]] Rational evaluate(const std::map<std::string, Rational>& point) const;
  /// Positional evaluation, values[i] is substituted for variable i.
  [[nodiscard]] Rational evaluate(std::span<const Rational> values) const;
  /// Partial evaluation: assigned variables are replaced by their values and
  /// the result keeps the same context (constant in those variables).
  [[nodiscard]] MultiPoly substitute(const std::map<std::string, Rational>& point) const;

  [[nodiscard]] MultiPoly derivative(std::string_view var) const;
  [[nodiscard]] MultiPoly derivative(std::size_t var) const;

  /// Definite integral in one variable over [lo, hi]; lo > hi gives the
  /// signed (negated) integral.
  [[nodiscard]] MultiPoly integrate(std::string_view var, const Rational& lo, const Rational& hi) const;
  [[nodiscard]] MultiPoly integrate(std::size_t var, const Rational& lo, const Rational& hi) const;
  /// Iterated integration over an axis-aligned box. Variables not listed stay
  /// symbolic.
  [[nodiscard]] MultiPoly integrate_box(std::span<const BoxBound> bounds) const;

  /// Re-expresses the polynomial in a different context, matching variables
  /// by name. Throws ContextError if a variable in use is missing from target.
  [[nodiscard]] MultiPoly embed(ContextPtr target) const;

  /// Renames variables inside the same context: exponent of variable i moves
  /// to variable mapping[i]. The mapping must be injective on used variables.
  [[nodiscard]] MultiPoly relabel(std::span<const std::size_t> mapping) const;

  /// Substitutes images[i] for variable i; all images share one context.
  [[nodiscard]] MultiPoly compose(std::span<const MultiPoly> images) const;

  [[nodiscard]] std::string to_string() const;

  /// {"vars":[...], "terms":[{"exp":[...], "coef":"num/den"}, ...]}
  [[nodiscard]] nlohmann::json to_json() const;
  static MultiPoly from_json(const nlohmann::json& j);

 private:
  void require_same_context(const MultiPoly& o, const char* op) const;
  void add_term(const Exponent& exp, const Rational& c);

  ContextPtr ctx_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

}  // namespace jetmorse
