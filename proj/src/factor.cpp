#include "ivp/factor.hpp"

#include <algorithm>
#include <numeric>

#include "ivp/errors.hpp"
#include "ivp/integer.hpp"
#include "zp_poly.hpp"

namespace ivp {

namespace {

using detail::Zp;
using detail::ZpPoly;

IntegerPolynomial lift(const ZpPoly& a) {
  std::vector<mpz_class> v;
  v.reserve(a.size());
  for (auto c : a) v.emplace_back(static_cast<unsigned long>(c));
  return IntegerPolynomial(std::move(v));
}

IntegerPolynomial reduce_mod(const IntegerPolynomial& a, const mpz_class& m) {
  std::vector<mpz_class> v(a.coefficients().begin(), a.coefficients().end());
  for (auto& c : v) c = mod(c, m);
  return IntegerPolynomial(std::move(v));
}

IntegerPolynomial symmetric(const IntegerPolynomial& a, const mpz_class& m) {
  std::vector<mpz_class> v(a.coefficients().begin(), a.coefficients().end());
  for (auto& c : v) c = symmetric_mod(c, m);
  return IntegerPolynomial(std::move(v));
}

// Division by a monic polynomial modulo m.
std::pair<IntegerPolynomial, IntegerPolynomial> divrem_monic(const IntegerPolynomial& a,
                                                            const IntegerPolynomial& b,
                                                            const mpz_class& m) {
  const int db = b.degree();
  if (a.degree() < db) return {IntegerPolynomial{}, reduce_mod(a, m)};
  std::vector<mpz_class> r(a.coefficients().begin(), a.coefficients().end());
  std::vector<mpz_class> q(a.degree() - db + 1);
  for (int i = a.degree() - db; i >= 0; --i) {
    mpz_class c = mod(r[i + db], m);
    q[i] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) mpz_submul(r[i + j].get_mpz_t(), c.get_mpz_t(), b.coeff(j).get_mpz_t());
  }
  r.resize(static_cast<std::size_t>(db));
  return {IntegerPolynomial(std::move(q)), reduce_mod(IntegerPolynomial(std::move(r)), m)};
}

struct HenselPair {
  IntegerPolynomial g, h, s, t;
};

// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic.
HenselPair hensel_step(const IntegerPolynomial& f, const HenselPair& in, const mpz_class& m) {
  const mpz_class mm = m * m;
  IntegerPolynomial e = reduce_mod(f - in.g * in.h, mm);
  auto [q, r] = divrem_monic(in.s * e, in.h, mm);
  IntegerPolynomial g = reduce_mod(in.g + in.t * e + q * in.g, mm);
  IntegerPolynomial h = reduce_mod(in.h + r, mm);
  IntegerPolynomial b = reduce_mod(in.s * g + in.t * h - IntegerPolynomial::constant(1), mm);
  auto [c, d] = divrem_monic(in.s * b, h, mm);
  IntegerPolynomial s = reduce_mod(in.s - d, mm);
  IntegerPolynomial t = reduce_mod(in.t - in.t * b - c * g, mm);
  return {g, h, s, t};
}

// Lifts the monic factorization f = lc * prod u_i (mod p) to modulus target.
std::vector<IntegerPolynomial> multifactor_lift(const IntegerPolynomial& f,
                                                const std::vector<ZpPoly>& factors, const Zp& zp,
                                                const mpz_class& target) {
  std::vector<IntegerPolynomial> lifted;
  IntegerPolynomial cur = reduce_mod(f, target);
  const mpz_class pz(static_cast<unsigned long>(zp.prime()));
  const std::uint64_t lc_mod_p = zp.reduce(IntegerPolynomial::constant(f.leading())).at(0);
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    ZpPoly rest{lc_mod_p};
    for (std::size_t j = i + 1; j < factors.size(); ++j) rest = zp.mul(rest, factors[j]);
    ZpPoly one, s, t;
    zp.ext_gcd(rest, factors[i], one, s, t);
    HenselPair pair{lift(rest), lift(factors[i]), lift(s), lift(t)};
    mpz_class m = pz;
    while (m < target) {
      pair = hensel_step(cur, pair, m);
      m *= m;
    }
    lifted.push_back(reduce_mod(pair.h, target));
    cur = reduce_mod(pair.g, target);
  }
  mpz_class inv;
  mpz_class lc = mod(cur.leading(), target);
  mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), target.get_mpz_t());
  lifted.push_back(reduce_mod(cur * inv, target));
  return lifted;
}

// Bound on the coefficients of lc(f) * g for any factor g of f.
mpz_class factor_coefficient_bound(const IntegerPolynomial& f) {
  mpz_class sq = 0;
  for (const auto& c : f.coefficients()) sq += c * c;
  mpz_class norm2;
  mpz_sqrt(norm2.get_mpz_t(), sq.get_mpz_t());
  norm2 += 1;
  mpz_class two_n = power(2, static_cast<unsigned long>(f.degree()));
  return abs(f.leading()) * two_n * norm2;
}

// Zassenhaus recombination of lifted monic factors modulo m.
std::vector<IntegerPolynomial> recombine(IntegerPolynomial f, std::vector<IntegerPolynomial> lifted,
                                         const mpz_class& m) {
  std::vector<IntegerPolynomial> out;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      IntegerPolynomial prod = IntegerPolynomial::constant(f.leading());
      for (auto i : idx) prod = reduce_mod(prod * lifted[i], m);
      IntegerPolynomial candidate = symmetric(prod, m).primitive_part();
      if (auto q = divide_exact(f, candidate)) {
        out.push_back(candidate);
        f = *q;
        for (std::size_t k = idx.size(); k-- > 0;) lifted.erase(lifted.begin() + idx[k]);
        found = true;
        break;
      }
      // next combination
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == lifted.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (f.degree() > 0) out.push_back(f.primitive_part());
  return out;
}

}  // namespace

std::vector<IntegerPolynomial> factor_squarefree(const IntegerPolynomial& input) {
  IntegerPolynomial f = input.primitive_part();
  if (f.degree() < 1) return {};
  std::vector<IntegerPolynomial> out;
  if (f.coeff(0) == 0) {
    out.push_back(IntegerPolynomial::x());
    f = *divide_exact(f, IntegerPolynomial::x());
    if (f.degree() < 1) return out;
  }
  if (f.degree() == 1) {
    out.push_back(f);
    return out;
  }

  // Pick, among a few primes of good reduction, the one with fewest factors.
  const IntegerPolynomial df = f.derivative();
  std::uint64_t best_p = 0;
  std::size_t best_count = 0;
  int tried = 0;
  for (Prime p = 3; tried < 6; p = next_prime(p)) {
    if (mpz_divisible_ui_p(f.leading().get_mpz_t(), static_cast<unsigned long>(p))) continue;
    Zp zp(static_cast<std::uint64_t>(p));
    ZpPoly fp = zp.reduce(f);
    if (detail::degree(zp.gcd(fp, zp.reduce(df))) != 0) continue;
    ++tried;
    std::size_t count = 0;
    for (const auto& [g, d] : zp.distinct_degree(zp.monic(fp))) count += detail::degree(g) / d;
    if (best_p == 0 || count < best_count) {
      best_p = static_cast<std::uint64_t>(p);
      best_count = count;
    }
    if (count == 1) break;
  }
  if (best_count == 1) {
    out.push_back(f);
    return out;
  }

  Zp zp(best_p);
  std::vector<ZpPoly> modular = zp.factor_squarefree(zp.reduce(f), best_p);
  const mpz_class bound = factor_coefficient_bound(f);
  mpz_class m(static_cast<unsigned long>(best_p));
  while (m <= 2 * bound) m *= m;
  auto lifted = multifactor_lift(f, modular, zp, m);
  for (auto& g : recombine(f, std::move(lifted), m)) out.push_back(std::move(g));
  return out;
}

std::vector<std::pair<IntegerPolynomial, int>> squarefree_decomposition(const IntegerPolynomial& f) {
  std::vector<std::pair<IntegerPolynomial, int>> out;
  if (f.degree() < 1) return out;
  IntegerPolynomial a = f.primitive_part();
  IntegerPolynomial da = a.derivative();
  IntegerPolynomial c = gcd(a, da).primitive_part();
  IntegerPolynomial w = *divide_exact(a, c);
  IntegerPolynomial y = *divide_exact(da, c);
  IntegerPolynomial z = y - w.derivative();
  for (int i = 1; w.degree() > 0; ++i) {
    IntegerPolynomial g = gcd(w, z).primitive_part();
    if (g.degree() > 0) out.emplace_back(g, i);
    w = *divide_exact(w, g);
    y = *divide_exact(z, g);
    z = y - w.derivative();
  }
  return out;
}

Factorization factor_over_Q(const IntegerPolynomial& f) {
  if (f.is_zero()) throw ZeroPolynomialError("cannot factor the zero polynomial");
  if (f.degree() > kMaxFactorDegree) {
    throw DegreeTooLargeError("degree " + std::to_string(f.degree()) + " exceeds " +
                              std::to_string(kMaxFactorDegree));
  }
  Factorization out;
  for (const auto& [part, mult] : squarefree_decomposition(f)) {
    for (auto& g : factor_squarefree(part)) out.factors.emplace_back(std::move(g), mult);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  IntegerPolynomial prod = IntegerPolynomial::constant(1);
  for (const auto& [g, k] : out.factors) {
    for (int i = 0; i < k; ++i) prod = prod * g;
  }
  out.unit = mpq_class(f.leading(), prod.leading());
  out.unit.canonicalize();
  return out;
}

Factorization factor_over_Q(const RationalPolynomial& f) {
  Factorization out = factor_over_Q(f.numerator());
  out.unit /= f.denominator();
  return out;
}

RationalPolynomial Factorization::expand() const {
  IntegerPolynomial prod = IntegerPolynomial::constant(unit.get_num());
  for (const auto& [g, k] : factors) {
    for (int i = 0; i < k; ++i) prod = prod * g;
  }
  return RationalPolynomial(prod, unit.get_den());
}

std::string to_string(const Factorization& f) {
  std::string out = f.unit.get_str();
  for (const auto& [g, k] : f.factors) {
    out += " * (" + to_string(g) + ")";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace ivp
