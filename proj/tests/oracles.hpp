#pragma once

// Reference computations kept independent of the library's algorithms.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "ivp/snf.hpp"

namespace oracle {

// Exponent of p in n != 0 by repeated division.
inline long trial_valuation(mpz_class n, long p) {
  long k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

inline bool trial_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline long shift(long p) {
  return std::max(1L, static_cast<long>(std::floor(std::log(static_cast<double>(p)))));
}

// pi-adic order of sum c_i pi^i in Z[pi]/(pi^e - u p), u = +-1, found by
// stripping one factor of pi at a time: with c_0 = p d, the quotient is
// u d pi^(e-1) + c_1 + c_2 pi + ... Exact integers throughout.
inline long order_by_division(std::vector<mpz_class> c, long p, int u, long limit) {
  const int e = static_cast<int>(c.size());
  long k = 0;
  while (k < limit) {
    if (std::all_of(c.begin(), c.end(), [](const mpz_class& x) { return x == 0; })) return limit;
    if (c[0] % p != 0) return k;
    mpz_class d = c[0] / p;
    std::vector<mpz_class> next(e);
    for (int i = 1; i < e; ++i) next[i - 1] = c[i];
    next[e - 1] += u * d;
    c = std::move(next);
    ++k;
  }
  return limit;
}

// Fraction-free Gaussian elimination.
inline mpz_class bareiss_det(ivp::IntegerMatrix m) {
  const std::size_t n = m.rows();
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return n == 0 ? mpz_class(1) : sign * m(n - 1, n - 1);
}

}  // namespace oracle
