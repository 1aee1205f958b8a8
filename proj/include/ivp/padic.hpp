#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ivp/integer.hpp"
#include "ivp/polynomial.hpp"

namespace ivp {

// Precisions are counted in pi-adic digits.
inline constexpr long kDefaultPrecision = 64;
inline constexpr long kDefaultMaxPrecision = 256;

// Base-p digit j of the stream identified by (seed, p).
std::int64_t stream_digit(std::uint64_t seed, Prime p, long j);

// A p-adic integer known exactly, or as scale * u where u is the unit whose
// base-p digits come from the seeded stream (first digit forced nonzero).
struct PadicCoefficient {
  mpz_class scale;
  std::optional<std::uint64_t> unit_seed;

  mpz_class residue(Prime p, long digits) const;
  friend bool operator==(const PadicCoefficient&, const PadicCoefficient&) = default;
};

// O_K for K = Q_p(pi), pi a root of the Eisenstein polynomial
// X^e + a_{e-1} X^{e-1} + ... + a_0. Cheap to copy; immutable.
class EisensteinExtension {
 public:
  // Throws NotPrimeError / NotEisensteinError.
  static EisensteinExtension make(Prime p, std::vector<PadicCoefficient> lower_coeffs);
  static EisensteinExtension make(Prime p, const std::vector<mpz_class>& lower_coeffs);
  // Q_p itself, pi = p.
  static EisensteinExtension rational(Prime p);
  // X^e - p*u for the seeded unit u.
  static EisensteinExtension binomial(Prime p, int e, std::uint64_t unit_seed);

  Prime prime() const;
  int degree() const;
  const std::vector<PadicCoefficient>& lower_coefficients() const;
  // a_0..a_{e-1} reduced modulo p^digits.
  std::vector<mpz_class> relation(long digits) const;
  mpz_class prime_power(long digits) const;
  // Same field and same presentation of pi. All e = 1 extensions are Q_p.
  bool same_field(const EisensteinExtension& other) const;
  std::string describe() const;

 private:
  struct Data;
  explicit EisensteinExtension(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

// v_p of an element, stored as a pi-order k (value k/e). BelowPrecision
// means every visible digit vanished and only the bound is known.
class Valuation {
 public:
  static Valuation exact(long pi_order, int ramification);
  static Valuation below_precision(long pi_bound, int ramification);

  bool is_exact() const { return exact_; }
  long pi_order() const { return order_; }
  int ramification() const { return e_; }
  mpq_class value() const;
  // "1/2", "3", or ">=32" for a bound.
  std::string to_string() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  Valuation(bool exact, long order, int e) : exact_(exact), order_(order), e_(e) {}
  bool exact_;
  long order_;
  int e_;
};

struct IntegerSource {
  mpz_class value;
  friend bool operator==(const IntegerSource&, const IntegerSource&) = default;
};
// numerator/denominator with p not dividing the denominator.
struct RationalSource {
  mpz_class numerator;
  mpz_class denominator;
  friend bool operator==(const RationalSource&, const RationalSource&) = default;
};
// Element of Z_p with seeded base-p digits; the first digit may be pinned.
struct StreamSource {
  std::uint64_t seed = 0;
  std::optional<mpz_class> first_digit;
  friend bool operator==(const StreamSource&, const StreamSource&) = default;
};
// Root of X^e - p*u(c_seed) plus an integer shift.
struct EisensteinRootSource {
  int e = 1;
  std::uint64_t c_seed = 0;
  mpz_class shift;
  friend bool operator==(const EisensteinRootSource&, const EisensteinRootSource&) = default;
};

using ElementSpec = std::variant<IntegerSource, RationalSource, StreamSource, EisensteinRootSource>;

std::string describe(const ElementSpec& spec);
int ramification(const ElementSpec& spec);
EisensteinExtension extension_for(const ElementSpec& spec, Prime p);

// Truncated element sum_{i<e} c_i pi^i of O_K, known modulo pi^precision.
class PadicElement {
 public:
  static PadicElement from_integer(const EisensteinExtension& ext, const mpz_class& value,
                                   long precision);
  static PadicElement from_rational(const EisensteinExtension& ext, const mpz_class& num,
                                    const mpz_class& den, long precision);
  static PadicElement uniformizer(const EisensteinExtension& ext, long precision);
  static PadicElement from_coefficients(const EisensteinExtension& ext,
                                        std::vector<mpz_class> coeffs, long precision);
  static PadicElement materialize(const ElementSpec& spec, Prime p, long precision);

  const EisensteinExtension& extension() const { return ext_; }
  Prime prime() const { return ext_.prime(); }
  int ramification() const { return ext_.degree(); }
  long precision() const { return precision_; }
  // p-adic digits carried by each coefficient: ceil(precision / e).
  long digits() const;
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  const std::optional<ElementSpec>& source() const { return source_; }
  bool regenerable() const { return source_.has_value(); }

  // Regenerates from the source, or truncates. Throws PrecisionExhaustedError
  // when asked to grow an element without a source.
  PadicElement with_precision(long precision) const;

  Valuation valuation() const;
  // Integer r in [0, p) with element = r mod pi.
  mpz_class residue() const;

  PadicElement operator-() const;
  friend PadicElement operator+(const PadicElement& a, const PadicElement& b);
  friend PadicElement operator-(const PadicElement& a, const PadicElement& b);
  friend PadicElement operator*(const PadicElement& a, const PadicElement& b);

 private:
  PadicElement(EisensteinExtension ext, std::vector<mpz_class> coeffs, long precision);
  EisensteinExtension ext_;
  std::vector<mpz_class> coeffs_;
  long precision_;
  std::optional<ElementSpec> source_;
};

struct EvalOptions {
  long max_precision = kDefaultMaxPrecision;
  // Stop once the valuation is known to be at least this pi-order.
  std::optional<long> sufficient_order;
};

struct Evaluation {
  PadicElement numerator_value;  // g(x) for f = g/m
  Valuation valuation;           // of f(x) = g(x)/m
};

// Evaluates f at x, extending the precision of regenerable x until the
// valuation is visible or reaches options.sufficient_order. Throws
// PrecisionExhaustedError otherwise.
Evaluation eval_poly(const RationalPolynomial& f, const PadicElement& x,
                     const EvalOptions& options = {});

// Horner evaluation at the precision of x; no extension.
PadicElement evaluate(const IntegerPolynomial& g, const PadicElement& x);

}  // namespace ivp
