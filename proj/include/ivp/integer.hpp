#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace ivp {

using Prime = std::int64_t;

// Nonnegative remainder of a modulo m (m > 0).
mpz_class mod(const mpz_class& a, const mpz_class& m);

// Representative of a modulo m in (-m/2, m/2].
mpz_class symmetric_mod(const mpz_class& a, const mpz_class& m);

mpz_class power(const mpz_class& base, unsigned long exponent);

// Exact p-adic valuation of a nonzero integer.
long valuation(const mpz_class& n, Prime p);

mpz_class to_mpz(std::int64_t v);
// Throws std::overflow_error when n does not fit.
std::int64_t to_int64(const mpz_class& n);
bool fits_int64(const mpz_class& n);

bool is_prime(const mpz_class& n);
bool is_prime(Prime n);

// Primes p <= limit, ascending.
std::vector<Prime> primes_up_to(Prime limit);
// Primes in [lo, hi] by a segmented sieve.
std::vector<Prime> primes_in_range(Prime lo, Prime hi);
Prime next_prime(Prime n);

struct IntegerFactorization {
  // Ascending distinct primes with multiplicity.
  std::vector<std::pair<mpz_class, int>> factors;
  // Product of the prime factors that could not be split within the effort
  // budget; 1 when the factorization is complete.
  mpz_class unfactored = 1;
  bool complete() const { return unfactored == 1; }
};

// Factors |n| (n != 0) by trial division followed by Pollard-Brent rho.
IntegerFactorization factor_integer(const mpz_class& n,
                                    unsigned long rho_iterations = 200000);

// Distinct primes dividing n, used for denominators and contents.
std::vector<Prime> prime_divisors(const mpz_class& n);

// splitmix64 finalizer; the basis of every seeded stream in the library.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts);

}  // namespace ivp
