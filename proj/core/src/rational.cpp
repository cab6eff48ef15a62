#include "jetmorse/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace jetmorse {

namespace {

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("Rational::parse: malformed '" + std::string(whole) + "'");
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("Rational::parse: malformed '" + std::string(whole) + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw std::invalid_argument("Rational::parse: malformed '" + std::string(whole) + "'");
  const std::string digits(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("Rational::parse: empty string");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const mpz_class num = parse_integer(text.substr(0, slash), text);
    const mpz_class den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw std::domain_error("Rational::parse: zero denominator");
    return Rational(mpq_class(num, den));
  }

  // Decimal / scientific notation, converted exactly.
  std::string_view mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    const std::string exp_str(text.substr(e + 1));
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_str, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != exp_str.size()) throw std::invalid_argument("Rational::parse: malformed '" + std::string(text) + "'");
  }
  std::string digits;
  bool negative = false;
  std::size_t i = 0;
  if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
    negative = mantissa[0] == '-';
    i = 1;
  }
  long frac_digits = 0;
  bool seen_point = false;
  for (; i < mantissa.size(); ++i) {
    const char c = mantissa[i];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw std::invalid_argument("Rational::parse: malformed '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("Rational::parse: malformed '" + std::string(text) + "'");
  mpq_class value{mpz_class(digits, 10)};
  const long shift = exponent - frac_digits;
  if (shift > 0) value *= pow10(static_cast<unsigned long>(shift));
  if (shift < 0) value /= pow10(static_cast<unsigned long>(-shift));
  if (negative) value = -value;
  return Rational(value);
}

Rational Rational::from_double(double d) {
  if (!std::isfinite(d)) throw std::domain_error("Rational::from_double: non-finite value");
  return Rational(mpq_class(d));
}

std::string Rational::str() const { return value_.get_num().get_str() + "/" + value_.get_den().get_str(); }

std::string Rational::short_str() const { return is_integer() ? value_.get_num().get_str() : str(); }

Rational Rational::pow(unsigned e) const {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), e);
  return Rational(mpq_class(num, den));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.short_str(); }

bool exact_sqrt(const Rational& r, Rational& root) {
  if (r.sign() < 0) return false;
  const mpz_class& num = r.raw().get_num();
  const mpz_class& den = r.raw().get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  root = Rational(mpq_class(sn, sd));
  return true;
}

}  // namespace jetmorse
