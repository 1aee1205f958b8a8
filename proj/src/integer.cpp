#include "ivp/integer.hpp"

#include <algorithm>
#include <stdexcept>

#include "ivp/errors.hpp"

namespace ivp {

mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class symmetric_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r = mod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

mpz_class power(const mpz_class& base, unsigned long exponent) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

long valuation(const mpz_class& n, Prime p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  mpz_class q = n;
  mpz_class pz = to_mpz(p);
  long k = 0;
  while (mpz_divisible_p(q.get_mpz_t(), pz.get_mpz_t())) {
    mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t());
    ++k;
  }
  return k;
}

mpz_class to_mpz(std::int64_t v) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return mpz_class(static_cast<long>(v));
}

bool fits_int64(const mpz_class& n) { return mpz_fits_slong_p(n.get_mpz_t()) != 0; }

std::int64_t to_int64(const mpz_class& n) {
  if (!fits_int64(n)) throw std::overflow_error("integer does not fit in 64 bits");
  return n.get_si();
}

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_prime(Prime n) { return is_prime(to_mpz(n)); }

std::vector<Prime> primes_up_to(Prime limit) {
  std::vector<Prime> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (Prime i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (Prime j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

std::vector<Prime> primes_in_range(Prime lo, Prime hi) {
  std::vector<Prime> out;
  lo = std::max<Prime>(lo, 2);
  if (hi < lo) return out;
  Prime root = 1;
  while ((root + 1) <= hi / (root + 1)) ++root;
  std::vector<bool> composite(static_cast<std::size_t>(hi - lo + 1), false);
  for (Prime q : primes_up_to(root)) {
    Prime start = std::max(q * q, (lo + q - 1) / q * q);
    for (Prime j = start; j <= hi; j += q) composite[static_cast<std::size_t>(j - lo)] = true;
  }
  for (Prime n = lo; n <= hi; ++n) {
    if (!composite[static_cast<std::size_t>(n - lo)]) out.push_back(n);
  }
  return out;
}

Prime next_prime(Prime n) {
  mpz_class r;
  mpz_class a = to_mpz(n);
  mpz_nextprime(r.get_mpz_t(), a.get_mpz_t());
  return to_int64(r);
}

namespace {

mpz_class pollard_brent(const mpz_class& n, unsigned long budget, unsigned long c0) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = c0; c < c0 + 8; ++c) {
    mpz_class y = 2, x, ys, q = 1, g = 1;
    unsigned long r = 1, used = 0;
    auto f = [&](const mpz_class& v) { return mod(v * v + c, n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        unsigned long step = std::min<unsigned long>(128, r - k);
        for (unsigned long i = 0; i < step; ++i) {
          y = f(y);
          q = mod(q * abs(x - y), n);
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += step;
        used += step;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1 && used < budget);
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
    if (used >= budget) break;
  }
  return 1;
}

void split(const mpz_class& n, unsigned long budget, std::vector<mpz_class>& primes,
           mpz_class& unfactored) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  mpz_class d = pollard_brent(n, budget, 1);
  if (d == 1) {
    unfactored *= n;
    return;
  }
  split(d, budget, primes, unfactored);
  split(n / d, budget, primes, unfactored);
}

}  // namespace

IntegerFactorization factor_integer(const mpz_class& n, unsigned long rho_iterations) {
  if (n == 0) throw std::invalid_argument("factor_integer of zero");
  IntegerFactorization out;
  mpz_class m = abs(n);
  std::vector<mpz_class> found;
  for (unsigned long p = 2; p < 10000; p += (p == 2 ? 1 : 2)) {
    if (mpz_cmp_ui(m.get_mpz_t(), p * p) < 0) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      found.emplace_back(static_cast<unsigned long>(p));
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    }
  }
  split(m, rho_iterations, found, out.unfactored);
  std::sort(found.begin(), found.end());
  for (const auto& p : found) {
    if (!out.factors.empty() && out.factors.back().first == p) {
      ++out.factors.back().second;
    } else {
      out.factors.emplace_back(p, 1);
    }
  }
  return out;
}

std::vector<Prime> prime_divisors(const mpz_class& n) {
  auto fac = factor_integer(n);
  if (!fac.complete()) {
    throw Error("could not factor integer " + n.get_str());
  }
  std::vector<Prime> out;
  for (const auto& [p, k] : fac.factors) out.push_back(to_int64(p));
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x243F6A8885A308D3ULL;
  for (auto v : parts) h = splitmix64(h ^ splitmix64(v));
  return h;
}

}  // namespace ivp
