#include "ivp/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "ivp/errors.hpp"

namespace ivp {

namespace {
const mpz_class kZero = 0;
}

IntegerPolynomial::IntegerPolynomial(std::vector<mpz_class> ascending)
    : coeffs_(std::move(ascending)) {
  normalize();
}

IntegerPolynomial::IntegerPolynomial(std::initializer_list<long> ascending) {
  for (long c : ascending) coeffs_.emplace_back(c);
  normalize();
}

IntegerPolynomial IntegerPolynomial::constant(const mpz_class& c) {
  return IntegerPolynomial(std::vector<mpz_class>{c});
}

IntegerPolynomial IntegerPolynomial::monomial(const mpz_class& c, std::size_t degree) {
  std::vector<mpz_class> v(degree + 1);
  v[degree] = c;
  return IntegerPolynomial(std::move(v));
}

void IntegerPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const mpz_class& IntegerPolynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

const mpz_class& IntegerPolynomial::leading() const {
  return coeffs_.empty() ? kZero : coeffs_.back();
}

mpz_class IntegerPolynomial::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntegerPolynomial IntegerPolynomial::primitive_part() const {
  if (is_zero()) return {};
  mpz_class g = content();
  if (leading() < 0) g = -g;
  std::vector<mpz_class> v(coeffs_.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpz_divexact(v[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
  }
  return IntegerPolynomial(std::move(v));
}

IntegerPolynomial IntegerPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpz_class> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntegerPolynomial(std::move(v));
}

mpz_class IntegerPolynomial::evaluate(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

mpz_class IntegerPolynomial::l1_norm() const {
  mpz_class s = 0;
  for (const auto& c : coeffs_) s += abs(c);
  return s;
}

IntegerPolynomial IntegerPolynomial::operator-() const {
  IntegerPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntegerPolynomial& IntegerPolynomial::operator+=(const IntegerPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

IntegerPolynomial& IntegerPolynomial::operator-=(const IntegerPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

IntegerPolynomial& IntegerPolynomial::operator*=(const mpz_class& c) {
  for (auto& a : coeffs_) a *= c;
  normalize();
  return *this;
}

IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(v[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return IntegerPolynomial(std::move(v));
}

std::strong_ordering compare(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  for (int i = 0; i <= a.degree(); ++i) {
    int c = cmp(a.coeff(i), b.coeff(i));
    if (c != 0) return c <=> 0;
  }
  return std::strong_ordering::equal;
}

std::optional<IntegerPolynomial> divide_exact(const IntegerPolynomial& a,
                                              const IntegerPolynomial& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return IntegerPolynomial{};
  if (a.degree() < b.degree()) return std::nullopt;
  // Cheap rejection on the constant terms.
  if (b.coeff(0) != 0 && !mpz_divisible_p(a.coeff(0).get_mpz_t(), b.coeff(0).get_mpz_t())) {
    return std::nullopt;
  }
  std::vector<mpz_class> rem(a.coefficients().begin(), a.coefficients().end());
  const int db = b.degree();
  std::vector<mpz_class> q(a.degree() - db + 1);
  const mpz_class& lb = b.leading();
  for (int i = a.degree() - db; i >= 0; --i) {
    mpz_class& top = rem[i + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
    mpz_divexact(q[i].get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (int j = 0; j <= db; ++j) {
      mpz_submul(rem[i + j].get_mpz_t(), q[i].get_mpz_t(), b.coeff(j).get_mpz_t());
    }
  }
  for (const auto& r : rem) {
    if (r != 0) return std::nullopt;
  }
  return IntegerPolynomial(std::move(q));
}

IntegerPolynomial pseudo_remainder(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (b.is_zero()) throw ZeroPolynomialError("pseudo-remainder by zero");
  std::vector<mpz_class> rem(a.coefficients().begin(), a.coefficients().end());
  const int db = b.degree();
  const mpz_class& lb = b.leading();
  for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
    mpz_class top = rem[i];
    for (auto& r : rem) r *= lb;
    for (int j = 0; j <= db; ++j) {
      mpz_submul(rem[i - db + j].get_mpz_t(), top.get_mpz_t(), b.coeff(j).get_mpz_t());
    }
    rem.resize(i);
  }
  return IntegerPolynomial(std::move(rem));
}

IntegerPolynomial gcd(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (a.is_zero()) return b.primitive_part() * b.content();
  if (b.is_zero()) return a.primitive_part() * a.content();
  mpz_class c;
  mpz_class ca = a.content(), cb = b.content();
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  IntegerPolynomial u = a.primitive_part();
  IntegerPolynomial v = b.primitive_part();
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    IntegerPolynomial r = pseudo_remainder(u, v);
    u = std::move(v);
    v = r.primitive_part();
  }
  return u.primitive_part() * c;
}

RationalPolynomial::RationalPolynomial(IntegerPolynomial numerator, mpz_class denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) throw Error("zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  mpz_class c = num_.content();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    std::vector<mpz_class> v(num_.coefficients().begin(), num_.coefficients().end());
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    num_ = IntegerPolynomial(std::move(v));
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

RationalPolynomial RationalPolynomial::from_rationals(const std::vector<mpq_class>& ascending) {
  mpz_class l = 1;
  for (const auto& q : ascending) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  }
  std::vector<mpz_class> v;
  v.reserve(ascending.size());
  for (const auto& q : ascending) {
    mpq_class s = q * l;
    v.push_back(s.get_num());
  }
  return RationalPolynomial(IntegerPolynomial(std::move(v)), l);
}

mpq_class RationalPolynomial::coeff(std::size_t i) const {
  mpq_class q(num_.coeff(i), den_);
  q.canonicalize();
  return q;
}

mpq_class RationalPolynomial::evaluate(const mpq_class& at) const {
  mpq_class x = at;
  x.canonicalize();
  mpq_class acc = 0;
  for (int i = num_.degree(); i >= 0; --i) acc = acc * x + mpq_class(num_.coeff(i));
  acc /= den_;
  return acc;
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
  return RationalPolynomial(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
  return RationalPolynomial(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  return RationalPolynomial(a.num_ * b.num_, a.den_ * b.den_);
}

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qadd(const QPoly& a, const QPoly& b, int sign) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign * b[i];
  trim(r);
  return r;
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  QPoly parse() {
    QPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  mpz_class integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  QPoly expr() {
    QPoly acc = term();
    while (true) {
      if (accept('+')) {
        acc = qadd(acc, term(), 1);
      } else if (accept('-')) {
        acc = qadd(acc, term(), -1);
      } else {
        return acc;
      }
    }
  }

  QPoly term() {
    QPoly acc = unary();
    while (true) {
      if (accept('*')) {
        acc = qmul(acc, unary());
      } else if (accept('/')) {
        std::size_t at = pos_;
        QPoly d = unary();
        if (d.size() > 1) throw SyntaxError("division by a non-constant polynomial", at);
        if (d.empty()) throw SyntaxError("division by zero", at);
        for (auto& c : acc) c /= d[0];
      } else {
        return acc;
      }
    }
  }

  QPoly unary() {
    if (accept('-')) {
      QPoly p = unary();
      for (auto& c : p) c = -c;
      return p;
    }
    if (accept('+')) return unary();
    return power();
  }

  QPoly power() {
    QPoly base = primary();
    if (accept('^')) {
      mpz_class e = integer();
      if (e > 4096) fail("exponent too large");
      QPoly r{mpq_class(1)};
      for (unsigned long i = 0; i < e.get_ui(); ++i) r = qmul(r, base);
      return r;
    }
    return base;
  }

  QPoly primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      QPoly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == 'X' || c == 'x') {
      ++pos_;
      return QPoly{mpq_class(0), mpq_class(1)};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      QPoly p{mpq_class(integer())};
      trim(p);
      return p;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalPolynomial parse_poly(std::string_view text) {
  return RationalPolynomial::from_rationals(Parser(text).parse());
}

std::string to_string(const IntegerPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const mpz_class& c = p.coeff(i);
    if (c == 0) continue;
    mpz_class mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (i == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += "X";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

std::string to_string(const RationalPolynomial& p) {
  if (p.denominator() == 1) return to_string(p.numerator());
  return "(" + to_string(p.numerator()) + ")/" + p.denominator().get_str();
}

}  // namespace ivp
