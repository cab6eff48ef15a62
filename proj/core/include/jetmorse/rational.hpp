#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace jetmorse {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. Nothing in the algebra layer ever
/// rounds; the only lossy operation is the explicit to_double().
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I n) : value_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)

  template <std::integral I, std::integral J>
  Rational(I num, J den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    value_.canonicalize();
  }

  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  /// Parses "p/q", "p", or a decimal/scientific literal such as "5e-3" or
  /// "-0.25" (converted exactly, e.g. "0.1" -> 1/10).
  static Rational parse(std::string_view text);

  /// Exact binary value of a finite double.
  static Rational from_double(double d);

  /// Canonical "num/den" form, the denominator is always present ("3/1").
  [[nodiscard]] std::string str() const;
  /// Like str() but drops a unit denominator ("3").
  [[nodiscard]] std::string short_str() const;

  [[nodiscard]] double to_double() const { return value_.get_d(); }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
  [[nodiscard]] Rational abs() const { return Rational(mpq_class(::abs(value_))); }
  [[nodiscard]] Rational pow(unsigned e) const;
  [[nodiscard]] std::string numerator_str() const { return value_.get_num().get_str(); }
  [[nodiscard]] std::string denominator_str() const { return value_.get_den().get_str(); }

  [[nodiscard]] const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class value_{0};
};

[[nodiscard]] inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
[[nodiscard]] inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Exact rational square root when both numerator and denominator are perfect
/// squares; returns false otherwise.
bool exact_sqrt(const Rational& r, Rational& root);

}  // namespace jetmorse
