#pragma once

// Dense polynomials over F_p for word-sized p < 2^31. Internal to the
// factorization code.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ivp/polynomial.hpp"

namespace ivp::detail {

using ZpPoly = std::vector<std::uint64_t>;  // ascending, no trailing zeros

class Zp {
 public:
  explicit Zp(std::uint64_t p) : p_(p) {}
  std::uint64_t prime() const { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }
  std::uint64_t inv(std::uint64_t a) const;

  ZpPoly reduce(const IntegerPolynomial& f) const;
  ZpPoly add(const ZpPoly& a, const ZpPoly& b) const;
  ZpPoly sub(const ZpPoly& a, const ZpPoly& b) const;
  ZpPoly mul(const ZpPoly& a, const ZpPoly& b) const;
  ZpPoly scale(const ZpPoly& a, std::uint64_t c) const;
  // Quotient and remainder; b nonzero.
  std::pair<ZpPoly, ZpPoly> divrem(const ZpPoly& a, const ZpPoly& b) const;
  ZpPoly rem(const ZpPoly& a, const ZpPoly& b) const { return divrem(a, b).second; }
  ZpPoly monic(const ZpPoly& a) const;
  ZpPoly gcd(ZpPoly a, ZpPoly b) const;
  // g = s*a + t*b with g monic.
  void ext_gcd(const ZpPoly& a, const ZpPoly& b, ZpPoly& g, ZpPoly& s, ZpPoly& t) const;
  ZpPoly derivative(const ZpPoly& a) const;
  ZpPoly powmod(ZpPoly base, const mpz_class& exponent, const ZpPoly& modulus) const;

  // Distinct-degree factorization of a monic squarefree polynomial:
  // (product of all irreducible factors of degree d, d).
  std::vector<std::pair<ZpPoly, int>> distinct_degree(ZpPoly f) const;
  // Monic irreducible factors of a monic squarefree polynomial (p odd).
  std::vector<ZpPoly> factor_squarefree(const ZpPoly& f, std::uint64_t seed) const;

 private:
  void equal_degree(const ZpPoly& f, int d, std::mt19937_64& rng, std::vector<ZpPoly>& out) const;
  std::uint64_t p_;
};

inline int degree(const ZpPoly& a) { return static_cast<int>(a.size()) - 1; }

}  // namespace ivp::detail
