#include "ivp/padic.hpp"

#include <algorithm>
#include <sstream>

#include "ivp/errors.hpp"

namespace ivp {

std::int64_t stream_digit(std::uint64_t seed, Prime p, long j) {
  std::uint64_t h = mix_seed({seed, static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(j)});
  return static_cast<std::int64_t>(h % static_cast<std::uint64_t>(p));
}

namespace {

// sum_{j<digits} d_j p^j for the stream digits, optionally pinning d_0.
mpz_class stream_value(std::uint64_t seed, Prime p, long digits,
                       const std::optional<mpz_class>& first, bool force_unit) {
  mpz_class pz = to_mpz(p);
  mpz_class v = 0;
  for (long j = digits - 1; j >= 0; --j) {
    mpz_class d;
    if (j == 0 && first) {
      d = mod(*first, pz);
    } else {
      std::int64_t raw = stream_digit(seed, p, j);
      if (j == 0 && force_unit && raw == 0) raw = 1;
      d = to_mpz(raw);
    }
    v = v * pz + d;
  }
  return v;
}

long ceil_div(long a, long b) { return a <= 0 ? 0 : (a + b - 1) / b; }

}  // namespace

mpz_class PadicCoefficient::residue(Prime p, long digits) const {
  mpz_class m = power(to_mpz(p), static_cast<unsigned long>(digits));
  if (!unit_seed) return mod(scale, m);
  return mod(scale * stream_value(*unit_seed, p, digits, std::nullopt, true), m);
}

struct EisensteinExtension::Data {
  Prime p;
  std::vector<PadicCoefficient> coeffs;
};

EisensteinExtension EisensteinExtension::make(Prime p, std::vector<PadicCoefficient> lower) {
  if (!is_prime(p)) throw NotPrimeError(std::to_string(p) + " is not prime");
  if (lower.empty()) throw NotEisensteinError("Eisenstein polynomial must have degree >= 1");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    // The seeded factor is a unit, so only the exact scale matters.
    const mpz_class& s = lower[i].scale;
    if (i == 0) {
      if (s == 0 || valuation(s, p) != 1) {
        throw NotEisensteinError("constant coefficient must have p-adic valuation exactly 1");
      }
    } else if (s != 0 && valuation(s, p) < 1) {
      throw NotEisensteinError("coefficient a_" + std::to_string(i) + " is not divisible by p");
    }
  }
  return EisensteinExtension(std::make_shared<const Data>(Data{p, std::move(lower)}));
}

EisensteinExtension EisensteinExtension::make(Prime p, const std::vector<mpz_class>& lower) {
  std::vector<PadicCoefficient> c;
  c.reserve(lower.size());
  for (const auto& a : lower) c.push_back(PadicCoefficient{a, std::nullopt});
  return make(p, std::move(c));
}

EisensteinExtension EisensteinExtension::rational(Prime p) {
  return make(p, std::vector<mpz_class>{-to_mpz(p)});
}

EisensteinExtension EisensteinExtension::binomial(Prime p, int e, std::uint64_t unit_seed) {
  if (e < 1) throw NotEisensteinError("degree must be >= 1");
  std::vector<PadicCoefficient> c(static_cast<std::size_t>(e), PadicCoefficient{0, std::nullopt});
  c[0] = PadicCoefficient{-to_mpz(p), unit_seed};
  return make(p, std::move(c));
}

Prime EisensteinExtension::prime() const { return d_->p; }
int EisensteinExtension::degree() const { return static_cast<int>(d_->coeffs.size()); }
const std::vector<PadicCoefficient>& EisensteinExtension::lower_coefficients() const {
  return d_->coeffs;
}

std::vector<mpz_class> EisensteinExtension::relation(long digits) const {
  std::vector<mpz_class> out;
  out.reserve(d_->coeffs.size());
  for (const auto& c : d_->coeffs) out.push_back(c.residue(d_->p, digits));
  return out;
}

mpz_class EisensteinExtension::prime_power(long digits) const {
  return power(to_mpz(d_->p), static_cast<unsigned long>(digits));
}

bool EisensteinExtension::same_field(const EisensteinExtension& o) const {
  if (d_ == o.d_) return true;
  if (prime() != o.prime() || degree() != o.degree()) return false;
  return degree() == 1 || d_->coeffs == o.d_->coeffs;
}

std::string EisensteinExtension::describe() const {
  std::ostringstream os;
  os << "Q_" << prime();
  if (degree() == 1) return os.str();
  os << "(pi), pi^" << degree();
  for (int i = degree() - 1; i >= 0; --i) {
    const auto& c = d_->coeffs[i];
    if (c.scale == 0) continue;
    os << " + (" << c.scale.get_str();
    if (c.unit_seed) os << "*u[" << *c.unit_seed << "]";
    os << ")";
    if (i > 0) os << "*pi" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  os << " = 0";
  return os.str();
}

Valuation Valuation::exact(long pi_order, int e) { return Valuation(true, pi_order, e); }
Valuation Valuation::below_precision(long pi_bound, int e) { return Valuation(false, pi_bound, e); }

mpq_class Valuation::value() const {
  mpq_class q(order_, e_);
  q.canonicalize();
  return q;
}

std::string Valuation::to_string() const {
  std::string v = value().get_str();
  return exact_ ? v : ">=" + v;
}

std::string describe(const ElementSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IntegerSource>) {
          return "int(" + s.value.get_str() + ")";
        } else if constexpr (std::is_same_v<T, RationalSource>) {
          return "rat(" + s.numerator.get_str() + "/" + s.denominator.get_str() + ")";
        } else if constexpr (std::is_same_v<T, StreamSource>) {
          std::string out = "stream(seed=" + std::to_string(s.seed);
          if (s.first_digit) out += ", first_digit=" + s.first_digit->get_str();
          return out + ")";
        } else {
          return "eis_root(e=" + std::to_string(s.e) + ", c_seed=" + std::to_string(s.c_seed) +
                 ", shift=" + s.shift.get_str() + ")";
        }
      },
      spec);
}

int ramification(const ElementSpec& spec) {
  if (const auto* r = std::get_if<EisensteinRootSource>(&spec)) return r->e;
  return 1;
}

EisensteinExtension extension_for(const ElementSpec& spec, Prime p) {
  if (const auto* r = std::get_if<EisensteinRootSource>(&spec)) {
    return EisensteinExtension::binomial(p, r->e, r->c_seed);
  }
  return EisensteinExtension::rational(p);
}

PadicElement::PadicElement(EisensteinExtension ext, std::vector<mpz_class> coeffs, long precision)
    : ext_(std::move(ext)), coeffs_(std::move(coeffs)), precision_(precision) {
  if (precision_ < 1) throw Error("precision must be >= 1");
  coeffs_.resize(static_cast<std::size_t>(ext_.degree()));
  mpz_class m = ext_.prime_power(digits());
  for (auto& c : coeffs_) c = mod(c, m);
}

long PadicElement::digits() const { return ceil_div(precision_, ext_.degree()); }

PadicElement PadicElement::from_integer(const EisensteinExtension& ext, const mpz_class& value,
                                        long precision) {
  PadicElement r(ext, {value}, precision);
  r.source_ = IntegerSource{value};
  return r;
}

PadicElement PadicElement::from_rational(const EisensteinExtension& ext, const mpz_class& num,
                                         const mpz_class& den, long precision) {
  if (den == 0 || mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(ext.prime()))) {
    throw Error("rational element needs a denominator prime to p");
  }
  long digits = ceil_div(precision, ext.degree());
  mpz_class m = ext.prime_power(digits);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  PadicElement r(ext, {num * inv}, precision);
  r.source_ = RationalSource{num, den};
  return r;
}

PadicElement PadicElement::uniformizer(const EisensteinExtension& ext, long precision) {
  if (ext.degree() == 1) {
    long digits = precision;
    return PadicElement(ext, {-ext.relation(digits)[0]}, precision);
  }
  std::vector<mpz_class> c(static_cast<std::size_t>(ext.degree()));
  c[1] = 1;
  return PadicElement(ext, std::move(c), precision);
}

PadicElement PadicElement::from_coefficients(const EisensteinExtension& ext,
                                             std::vector<mpz_class> coeffs, long precision) {
  if (coeffs.size() > static_cast<std::size_t>(ext.degree())) {
    throw Error("more coefficients than the ramification degree");
  }
  return PadicElement(ext, std::move(coeffs), precision);
}

PadicElement PadicElement::materialize(const ElementSpec& spec, Prime p, long precision) {
  PadicElement out = std::visit(
      [&](const auto& s) -> PadicElement {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IntegerSource>) {
          return from_integer(EisensteinExtension::rational(p), s.value, precision);
        } else if constexpr (std::is_same_v<T, RationalSource>) {
          return from_rational(EisensteinExtension::rational(p), s.numerator, s.denominator,
                               precision);
        } else if constexpr (std::is_same_v<T, StreamSource>) {
          auto ext = EisensteinExtension::rational(p);
          return PadicElement(ext, {stream_value(s.seed, p, precision, s.first_digit, false)},
                              precision);
        } else {
          auto ext = EisensteinExtension::binomial(p, s.e, s.c_seed);
          return uniformizer(ext, precision) + from_integer(ext, s.shift, precision);
        }
      },
      spec);
  out.source_ = spec;
  return out;
}

PadicElement PadicElement::with_precision(long precision) const {
  if (source_) return materialize(*source_, prime(), precision);
  if (precision > precision_) {
    throw PrecisionExhaustedError("element has no source to extend its precision", precision_,
                                  ramification());
  }
  return PadicElement(ext_, coeffs_, precision);
}

Valuation PadicElement::valuation() const {
  const int e = ramification();
  long best = precision_;
  for (int i = 0; i < e; ++i) {
    if (coeffs_[i] == 0) continue;
    long k = e * ivp::valuation(coeffs_[i], prime()) + i;
    best = std::min(best, k);
  }
  if (best >= precision_) return Valuation::below_precision(precision_, e);
  return Valuation::exact(best, e);
}

mpz_class PadicElement::residue() const { return mod(coeffs_[0], to_mpz(prime())); }

PadicElement PadicElement::operator-() const {
  std::vector<mpz_class> c = coeffs_;
  for (auto& x : c) x = -x;
  return PadicElement(ext_, std::move(c), precision_);
}

namespace {

void require_same_field(const PadicElement& a, const PadicElement& b) {
  if (!a.extension().same_field(b.extension())) {
    throw ExtensionMismatchError("operands live in different extensions: " +
                                 a.extension().describe() + " vs " + b.extension().describe());
  }
}

std::vector<mpz_class> combine(const PadicElement& a, const PadicElement& b, int sign) {
  std::vector<mpz_class> c = a.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sign > 0) {
      c[i] += b.coefficients()[i];
    } else {
      c[i] -= b.coefficients()[i];
    }
  }
  return c;
}

}  // namespace

PadicElement operator+(const PadicElement& a, const PadicElement& b) {
  require_same_field(a, b);
  return PadicElement(a.ext_, combine(a, b, 1), std::min(a.precision_, b.precision_));
}

PadicElement operator-(const PadicElement& a, const PadicElement& b) {
  require_same_field(a, b);
  return PadicElement(a.ext_, combine(a, b, -1), std::min(a.precision_, b.precision_));
}

PadicElement operator*(const PadicElement& a, const PadicElement& b) {
  require_same_field(a, b);
  const int e = a.ramification();
  // x = x' + O(pi^N1) with v(x') >= k1 gives xy = x'y' + O(pi^min(N1+k2, N2+k1)).
  long ka = a.valuation().pi_order();
  long kb = b.valuation().pi_order();
  long precision = std::min(a.precision_ + kb, b.precision_ + ka);
  long digits = ceil_div(precision, e);
  mpz_class m = a.ext_.prime_power(digits);

  std::vector<mpz_class> prod(static_cast<std::size_t>(2 * e - 1));
  for (int i = 0; i < e; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (int j = 0; j < e; ++j) {
      mpz_addmul(prod[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  if (e > 1) {
    // pi^e = -(a_{e-1} pi^{e-1} + ... + a_0)
    std::vector<mpz_class> rel = a.ext_.relation(digits);
    for (int k = 2 * e - 2; k >= e; --k) {
      mpz_class t = mod(prod[k], m);
      prod[k] = 0;
      if (t == 0) continue;
      for (int i = 0; i < e; ++i) {
        mpz_submul(prod[k - e + i].get_mpz_t(), t.get_mpz_t(), rel[i].get_mpz_t());
      }
    }
  }
  prod.resize(static_cast<std::size_t>(e));
  return PadicElement(a.ext_, std::move(prod), precision);
}

PadicElement evaluate(const IntegerPolynomial& g, const PadicElement& x) {
  const long n = x.precision();
  const auto& ext = x.extension();
  if (g.is_zero()) return PadicElement::from_integer(ext, 0, n);
  PadicElement acc = PadicElement::from_integer(ext, g.leading(), n);
  for (int i = g.degree() - 1; i >= 0; --i) {
    acc = acc * x + PadicElement::from_integer(ext, g.coeff(i), n);
  }
  if (acc.precision() > n) acc = acc.with_precision(n);
  return acc;
}

Evaluation eval_poly(const RationalPolynomial& f, const PadicElement& x,
                     const EvalOptions& options) {
  const int e = x.ramification();
  const long shift = e * valuation(f.denominator(), x.prime());
  PadicElement cur = x;
  while (true) {
    PadicElement gx = evaluate(f.numerator(), cur);
    Valuation v = gx.valuation();
    if (v.is_exact()) return {gx, Valuation::exact(v.pi_order() - shift, e)};
    long bound = v.pi_order() - shift;
    if (options.sufficient_order && bound >= *options.sufficient_order) {
      return {gx, Valuation::below_precision(bound, e)};
    }
    if (!cur.regenerable() || cur.precision() >= options.max_precision) {
      throw PrecisionExhaustedError("valuation of " + to_string(f) + " not visible at precision " +
                                        std::to_string(cur.precision()),
                                    bound, e);
    }
    long next = std::min(options.max_precision, std::max(2 * cur.precision(), cur.precision() + e));
    cur = cur.with_precision(next);
  }
}

}  // namespace ivp
