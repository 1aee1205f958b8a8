#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ivp/integer.hpp"
#include "oracles.hpp"

using namespace ivp;

TEST_CASE("mod and symmetric_mod") {
  CHECK(mod(-7, 5) == 3);
  CHECK(mod(7, 5) == 2);
  CHECK(symmetric_mod(3, 5) == -2);
  CHECK(symmetric_mod(2, 5) == 2);
  CHECK(symmetric_mod(2, 4) == 2);
  CHECK(symmetric_mod(-2, 4) == 2);
}

TEST_CASE("valuation by repeated division") {
  CHECK(valuation(12, 2) == 2);
  CHECK(valuation(-81, 3) == 4);
  CHECK(valuation(7, 5) == 0);
  CHECK(valuation(power(mpz_class(10), 30), 5) == 30);
}

TEST_CASE("int64 round trip") {
  for (std::int64_t v : {std::int64_t{0}, std::int64_t{-1}, INT64_MAX, INT64_MIN}) {
    CHECK(to_int64(to_mpz(v)) == v);
  }
  CHECK_FALSE(fits_int64(mpz_class(1) << 64));
  CHECK_THROWS_AS(to_int64(mpz_class(1) << 64), std::overflow_error);
}

TEST_CASE("sieve agrees with trial division") {
  auto ps = primes_up_to(2000);
  std::vector<Prime> naive;
  for (long n = 2; n <= 2000; ++n)
    if (oracle::trial_prime(n)) naive.push_back(n);
  CHECK(ps == naive);
  CHECK(primes_up_to(10000).size() == 1229);
  CHECK(primes_in_range(1, 2000) == naive);
  for (Prime lo : {2, 3, 97, 1000, 1999}) {
    std::vector<Prime> tail;
    for (Prime p : naive) {
      if (p >= lo && p <= 1990) tail.push_back(p);
    }
    CHECK(primes_in_range(lo, 1990) == tail);
  }
  CHECK(primes_in_range(24, 28).empty());
  CHECK(primes_in_range(1000000000, 1000000100).size() == 7);
  CHECK(next_prime(7) == 11);
  CHECK(next_prime(1) == 2);
  CHECK(is_prime(Prime{1000003}));
  CHECK_FALSE(is_prime(Prime{1}));
}

TEST_CASE("factorization reproduces the input") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    mpz_class n = 1;
    int k = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) n *= mpz_class(std::to_string(rng() % 2000000000ULL + 2));
    auto f = factor_integer(n);
    REQUIRE(f.complete());
    mpz_class prod = 1;
    for (const auto& [q, m] : f.factors) {
      CHECK(is_prime(q));
      prod *= power(q, static_cast<unsigned long>(m));
    }
    CHECK(prod == n);
  }
  auto big = factor_integer(mpz_class("1000000016000000063"));  // 1000000007 * 1000000009
  REQUIRE(big.factors.size() == 2);
  CHECK(big.factors[0].first == 1000000007);
  CHECK(prime_divisors(-360) == std::vector<Prime>{2, 3, 5});
}

TEST_CASE("seed mixing is deterministic and order sensitive") {
  CHECK(mix_seed({1, 2, 3}) == mix_seed({1, 2, 3}));
  CHECK(mix_seed({1, 2, 3}) != mix_seed({3, 2, 1}));
  CHECK(splitmix64(0) != splitmix64(1));
}
