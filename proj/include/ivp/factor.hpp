#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "ivp/polynomial.hpp"

namespace ivp {

inline constexpr int kMaxFactorDegree = 64;

// f = unit * prod factor^multiplicity, factors primitive with positive
// leading coefficient, pairwise distinct, sorted by compare().
struct Factorization {
  mpq_class unit;
  std::vector<std::pair<IntegerPolynomial, int>> factors;

  RationalPolynomial expand() const;
};

// Complete factorization over Q by squarefree decomposition, factorization
// modulo a small prime, Hensel lifting and subset recombination. Throws
// ZeroPolynomialError, DegreeTooLargeError.
Factorization factor_over_Q(const IntegerPolynomial& f);
Factorization factor_over_Q(const RationalPolynomial& f);

// Yun decomposition of a primitive polynomial with positive leading
// coefficient: pairs (a_i, i) with f = prod a_i^i, a_i squarefree and
// pairwise coprime. Constant parts are omitted.
std::vector<std::pair<IntegerPolynomial, int>> squarefree_decomposition(const IntegerPolynomial& f);

// Irreducible factors of a primitive squarefree polynomial of degree >= 1.
std::vector<IntegerPolynomial> factor_squarefree(const IntegerPolynomial& f);

std::string to_string(const Factorization& f);

}  // namespace ivp
