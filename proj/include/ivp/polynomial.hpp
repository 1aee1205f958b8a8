#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ivp {

// Dense univariate polynomial over Z, ascending coefficients, no trailing
// zeros.
class IntegerPolynomial {
 public:
  IntegerPolynomial() = default;
  explicit IntegerPolynomial(std::vector<mpz_class> ascending);
  IntegerPolynomial(std::initializer_list<long> ascending);

  static IntegerPolynomial constant(const mpz_class& c);
  static IntegerPolynomial monomial(const mpz_class& c, std::size_t degree);
  static IntegerPolynomial x() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const mpz_class& coeff(std::size_t i) const;
  const mpz_class& leading() const;
  std::span<const mpz_class> coefficients() const { return coeffs_; }

  // Nonnegative gcd of the coefficients (0 for the zero polynomial).
  mpz_class content() const;
  // Divides out the content and makes the leading coefficient positive.
  IntegerPolynomial primitive_part() const;
  IntegerPolynomial derivative() const;
  mpz_class evaluate(const mpz_class& x) const;
  // Sum of absolute values of the coefficients.
  mpz_class l1_norm() const;

  IntegerPolynomial operator-() const;
  IntegerPolynomial& operator+=(const IntegerPolynomial& o);
  IntegerPolynomial& operator-=(const IntegerPolynomial& o);
  IntegerPolynomial& operator*=(const mpz_class& c);

  friend IntegerPolynomial operator+(IntegerPolynomial a, const IntegerPolynomial& b) {
    return a += b;
  }
  friend IntegerPolynomial operator-(IntegerPolynomial a, const IntegerPolynomial& b) {
    return a -= b;
  }
  friend IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b);
  friend IntegerPolynomial operator*(IntegerPolynomial a, const mpz_class& c) { return a *= c; }
  friend bool operator==(const IntegerPolynomial& a, const IntegerPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize();
  std::vector<mpz_class> coeffs_;
};

// Canonical ordering used for factor lists and divisor labels: by degree,
// then lexicographically on the ascending coefficient vector.
std::strong_ordering compare(const IntegerPolynomial& a, const IntegerPolynomial& b);

// Quotient a / b when b divides a in Z[X].
std::optional<IntegerPolynomial> divide_exact(const IntegerPolynomial& a,
                                              const IntegerPolynomial& b);
// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
IntegerPolynomial pseudo_remainder(const IntegerPolynomial& a, const IntegerPolynomial& b);
// Gcd in Z[X] with positive leading coefficient.
IntegerPolynomial gcd(const IntegerPolynomial& a, const IntegerPolynomial& b);

// g / m with m > 0 and gcd(content(g), m) = 1.
class RationalPolynomial {
 public:
  RationalPolynomial() : den_(1) {}
  RationalPolynomial(IntegerPolynomial numerator, mpz_class denominator = 1);
  // From rational coefficients in ascending order.
  static RationalPolynomial from_rationals(const std::vector<mpq_class>& ascending);

  const IntegerPolynomial& numerator() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int degree() const { return num_.degree(); }
  mpq_class coeff(std::size_t i) const;
  mpq_class evaluate(const mpq_class& x) const;

  friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) = default;

 private:
  IntegerPolynomial num_;
  mpz_class den_;
};

// Grammar: integer-coefficient expression in X with + - * ^ and
// parentheses; division by nonzero integer constants. Throws SyntaxError.
RationalPolynomial parse_poly(std::string_view text);

// Descending terms, zero terms omitted, e.g. "3*X^2 - X + 1".
std::string to_string(const IntegerPolynomial& p);
// "(X^2 - X)/2"; the numerator alone when the denominator is 1.
std::string to_string(const RationalPolynomial& p);

}  // namespace ivp
